#pragma once

#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "magrev/core.hpp"
#include "magrev/dynamics.hpp"

namespace magrev {

struct ExperimentSpec {
    DimensionlessParams params;
    int n_pulses = 1;
    bool record_trajectory = false;
    IntegratorConfig integrator;
    // Feed-forward coefficient on d cos(theta_ref); disabled when empty.
    std::optional<double> feedforward;

    void validate() const;
};

struct SimulationResult {
    double probability = 0.0;
    SpinState final_state;
    std::optional<Trajectory> trajectory;
    double max_norm_drift = 0.0;
    ExperimentSpec spec;
};

/// (1 + s_z) / 2
double spin_up_probability(const SpinState& s);

/// Designs the pulse, builds the N-sequence and integrates from the south pole.
SimulationResult run_experiment(const ExperimentSpec& spec);

nlohmann::json spec_to_json(const ExperimentSpec& spec);
nlohmann::json integrator_to_json(const IntegratorConfig& cfg);
/// {"P", "s_final", "spec", "integrator"}
nlohmann::json result_to_json(const SimulationResult& result);

}  // namespace magrev
