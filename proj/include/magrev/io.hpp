#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "magrev/dynamics.hpp"
#include "magrev/pulse.hpp"

namespace magrev {

/// %.17g, the precision used for every CSV field.
std::string format_double(double v);

/// Header `t_over_t0,omega_t0`.
void write_chirp_csv(std::ostream& os, const PulseDesign& design, int n_samples);

/// Header `t_over_t0,sx,sy,sz,pulse_index`.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

nlohmann::json design_to_json(const PulseDesign& design);

}  // namespace magrev
