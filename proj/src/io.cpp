#include "magrev/io.hpp"

#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace magrev {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_chirp_csv(std::ostream& os, const PulseDesign& design, int n_samples) {
    const auto samples = sample_chirp(design, n_samples);
    os << "t_over_t0,omega_t0\n";
    for (const auto& s : samples) os << format_double(s.t) << ',' << format_double(s.omega) << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t_over_t0,sx,sy,sz,pulse_index\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& s = traj.states[i];
        os << format_double(traj.times[i]) << ',' << format_double(s.x) << ','
           << format_double(s.y) << ',' << format_double(s.z) << ',' << traj.pulse_index[i]
           << '\n';
    }
}

nlohmann::json design_to_json(const PulseDesign& design) {
    const auto& c = design.trajectory().coefficients();
    return {{"h", design.h()},
            {"tf", design.tf()},
            {"sweep_angle", design.trajectory().sweep_angle()},
            {"theta_coefficients_tau", std::vector<double>(c.begin(), c.end())},
            {"omega_start", design.omega_start()},
            {"omega_end", design.omega_end()}};
}

}  // namespace magrev
