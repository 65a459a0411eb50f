#pragma once

// Rotating-frame LLG dynamics of a single macrospin:
//   ds/dt = s x H - alpha s x (s x H),
//   H = 2 d s_z e_z + h (cos phi_k e_x - sin phi_k e_y) + omega(t) e_z.
// Damping acts on the full rotating-frame field.

#include <functional>
#include <optional>
#include <vector>

#include "magrev/composite.hpp"
#include "magrev/core.hpp"
#include "magrev/pulse.hpp"

namespace magrev {

struct FieldSample {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Constant-amplitude drive with a chirp on a local clock [0, tf].
struct Drive {
    double h = 0.0;
    double tf = 0.0;
    std::function<double(double)> omega;

    static Drive from_pulse(const PulseDesign& pulse);
    static Drive constant(double h, double tf, double omega);
};

/// Designed chirp plus coefficient * d * cos(theta_ref(t)). A coefficient of -2 cancels
/// the anisotropy term of the azimuthal equation along the reference trajectory.
Drive feedforward_chirp(const PulseDesign& pulse, double d, double coefficient = -2.0);

struct IntegratorConfig {
    int steps = 20000;  // per pulse, classical RK4
    int renormalize_every = 1;
    int max_samples_per_pulse = 2000;

    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpinState> states;
    std::vector<int> pulse_index;  // 1-based

    std::size_t size() const { return times.size(); }
};

struct IntegrationResult {
    SpinState final_state;
    std::optional<Trajectory> trajectory;
    // max |1 - |s|| observed before each renormalization
    double max_norm_drift = 0.0;
};

FieldSample effective_field(const SpinState& s, double t_local, const Drive& drive, double phase,
                            double d);
FieldSample effective_field(const SpinState& s, double t_local, const PulseDesign& pulse,
                            double phase, double d);

SpinState llg_rhs(const SpinState& s, const FieldSample& field, double alpha);

IntegrationResult integrate_pulse(const SpinState& s0, const Drive& drive, double phase, double d,
                                  double alpha, const IntegratorConfig& cfg, bool record);

/// Chains pulses k = 1..N with phase phi_k, feeding each final state into the next.
IntegrationResult integrate_sequence(const SpinState& s0, const CompositeSequence& seq, double d,
                                     double alpha, const IntegratorConfig& cfg, bool record,
                                     std::optional<double> feedforward = std::nullopt);

// Reduced spherical equations, damping from the anisotropy field only:
//   theta' = h sin(phi + phi_k) - alpha d sin(2 theta)
//   phi'   = -2 d cos(theta) - omega + h cos(phi + phi_k) cot(theta)
// Equivalent to the Cartesian system only at alpha = 0.
struct SphericalRate {
    double theta;
    double phi;
};

SphericalRate spherical_rhs(const SphericalState& p, double t_local, const Drive& drive,
                            double phase, double d, double alpha);

struct SphericalTrajectory {
    std::vector<double> times;
    std::vector<SphericalState> states;
};

/// Same stepping and sampling as integrate_pulse, on (theta, phi). Throws PoleError when
/// theta leaves (eps, pi - eps).
SphericalTrajectory integrate_pulse_spherical(const SphericalState& p0, const Drive& drive,
                                              double phase, double d, double alpha,
                                              const IntegratorConfig& cfg);

}  // namespace magrev
