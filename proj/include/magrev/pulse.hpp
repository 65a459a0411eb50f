#pragma once

// Inverse-engineered single reversal pulse.
//
// theta(t) is the quintic in tau = t/t_f fixed by
//   theta(0) = pi, theta(t_f) = 0, theta'(0) = theta'(t_f) = -h, theta''(0) = theta''(t_f) = 0,
// and the chirp is the frequency that makes the linear (d = 0) two-level
// dynamics follow it at constant drive amplitude h:
//   omega = -theta'' / (h q) + h cot(theta) q,   q = sqrt(1 - (theta'/h)^2).
// Branch: phi = asin(theta'/h) with cos(phi) >= 0.

#include <array>
#include <vector>

namespace magrev {

struct ThetaDerivatives {
    double value;
    double first;
    double second;
};

class ThetaTrajectory {
public:
    /// Coefficients of theta in tau = t/t_f, lowest order first.
    using Coefficients = std::array<double, 6>;

    ThetaTrajectory(Coefficients coeffs, double h, double tf);

    const Coefficients& coefficients() const { return coeffs_; }
    double h() const { return h_; }
    double tf() const { return tf_; }
    /// gamma h t_f; the design is feasible iff this is >= pi.
    double sweep_angle() const { return h_ * tf_; }

    /// theta and its first two time derivatives; throws std::out_of_range outside [0, t_f].
    ThetaDerivatives at(double t) const;

    /// Polar trajectory only, no range check.
    double theta(double t) const;

private:
    Coefficients coeffs_;
    double h_;
    double tf_;
};

/// gamma h t_f at which the interior minimum of theta(t) touches 0. Used for messages;
/// the check itself evaluates theta at its minimum.
inline constexpr double kMaxSweepAngle = 19.026552850258387;

/// Solves the six boundary conditions. Throws FeasibilityError when h*t_f < pi, or when the
/// quintic leaves [0, pi] (h*t_f above roughly kMaxSweepAngle).
ThetaTrajectory solve_theta(double h, double tf);

ThetaDerivatives theta_derivatives(const ThetaTrajectory& traj, double t);

/// Azimuth the linear dynamics must hold to follow theta(t).
double phi_of_t(const ThetaTrajectory& traj, double t);

/// Designed chirp, finite on the closed interval.
double chirp_frequency(const ThetaTrajectory& traj, double t);

/// Eq.-(10)-style expression evaluated as written; undefined at the endpoints.
double chirp_frequency_naive(const ThetaTrajectory& traj, double t);

class PulseDesign {
public:
    explicit PulseDesign(ThetaTrajectory trajectory);

    static PulseDesign design(double h, double tf) { return PulseDesign(solve_theta(h, tf)); }

    const ThetaTrajectory& trajectory() const { return traj_; }
    double h() const { return traj_.h(); }
    double tf() const { return traj_.tf(); }
    double omega(double t) const { return chirp_frequency(traj_, t); }
    double omega_start() const { return omega_start_; }
    double omega_end() const { return omega_end_; }

private:
    ThetaTrajectory traj_;
    double omega_start_;
    double omega_end_;
};

struct ChirpSample {
    double t;
    double omega;
};

/// n_samples uniformly spaced points including both endpoints.
std::vector<ChirpSample> sample_chirp(const PulseDesign& design, int n_samples);

}  // namespace magrev
