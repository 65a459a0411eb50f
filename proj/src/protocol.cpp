#include "magrev/protocol.hpp"

#include <nlohmann/json.hpp>

#include "magrev/composite.hpp"
#include "magrev/pulse.hpp"

namespace magrev {

void ExperimentSpec::validate() const {
    params.validate();
    integrator.validate();
    composite_phases(n_pulses);  // odd, >= 1
}

double spin_up_probability(const SpinState& s) { return 0.5 * (1.0 + s.z); }

SimulationResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const auto pulse = PulseDesign::design(spec.params.h, spec.params.tf);
    const auto seq = build_sequence(pulse, spec.n_pulses);
    auto run = integrate_sequence(SpinState::south(), seq, spec.params.d, spec.params.alpha,
                                  spec.integrator, spec.record_trajectory, spec.feedforward);
    SimulationResult out;
    out.final_state = run.final_state;
    out.probability = spin_up_probability(run.final_state);
    out.trajectory = std::move(run.trajectory);
    out.max_norm_drift = run.max_norm_drift;
    out.spec = spec;
    return out;
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
    nlohmann::json j{{"h", spec.params.h},
                     {"d", spec.params.d},
                     {"alpha", spec.params.alpha},
                     {"tf", spec.params.tf},
                     {"N", spec.n_pulses},
                     {"record_trajectory", spec.record_trajectory}};
    j["feedforward"] = spec.feedforward ? nlohmann::json(*spec.feedforward) : nlohmann::json();
    return j;
}

nlohmann::json integrator_to_json(const IntegratorConfig& cfg) {
    return {{"scheme", "rk4"},
            {"steps_per_pulse", cfg.steps},
            {"renormalize_every", cfg.renormalize_every},
            {"max_samples_per_pulse", cfg.max_samples_per_pulse}};
}

nlohmann::json result_to_json(const SimulationResult& r) {
    return {{"P", r.probability},
            {"s_final", {r.final_state.x, r.final_state.y, r.final_state.z}},
            {"spec", spec_to_json(r.spec)},
            {"integrator", integrator_to_json(r.spec.integrator)}};
}

}  // namespace magrev
