#include "magrev/pulse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "magrev/core.hpp"
#include "magrev/errors.hpp"

namespace magrev {

namespace {

// Fraction of t_f near each endpoint where the factored form is used.
constexpr double kEndpointWindow = 1e-3;
// Relative slack for the feasibility predicate and the grazing design.
constexpr double kGrazingTol = 1e-12;

bool is_grazing(const ThetaTrajectory& traj) {
    return traj.sweep_angle() - kPi <= kGrazingTol * traj.sweep_angle();
}

// Taylor coefficients of theta(tau) about tau = e, for e in {0, 1}.
std::array<double, 6> shifted_coefficients(const ThetaTrajectory::Coefficients& b, double e) {
    std::array<double, 6> g{};
    for (int j = 0; j < 6; ++j) {
        double binom = 1.0;  // C(i, j) built incrementally
        double pw = 1.0;     // e^(i-j)
        for (int i = j; i < 6; ++i) {
            g[j] += b[i] * binom * pw;
            binom = binom * (i + 1) / (i + 1 - j);
            pw *= e;
        }
    }
    return g;
}

// Chirp in the window next to an endpoint, with the vanishing factors
// theta' + c = w^2 R, theta'' = w S, theta - theta_e = w T divided out.
// w is the signed distance from the endpoint in tau; result in units 1/t_0.
double chirp_near_endpoint(const ThetaTrajectory& traj, double e, double w, double side) {
    const auto g = shifted_coefficients(traj.coefficients(), e);
    const double c = traj.sweep_angle();
    const double r = 3.0 * g[3] + w * (4.0 * g[4] + w * 5.0 * g[5]);
    const double s = 6.0 * g[3] + w * (12.0 * g[4] + w * 20.0 * g[5]);
    const double t = -c + w * w * (g[3] + w * (g[4] + w * g[5]));
    const double one_minus_x = 2.0 - w * w * r / c;
    const double qq = std::max(0.0, one_minus_x * r / c);
    const double q = std::sqrt(qq);
    if (q == 0.0) return 0.0;
    const double z = w * t;
    // w / tan(w T), continuous through w = 0
    const double w_cot = std::abs(z) < 1e-4 ? (1.0 - z * z / 3.0) / t : w / std::tan(z);
    const double omega_tau = side * (-s / (c * q) + c * w_cot * q);
    return omega_tau / traj.tf();
}

}  // namespace

ThetaTrajectory::ThetaTrajectory(Coefficients coeffs, double h, double tf)
    : coeffs_(coeffs), h_(h), tf_(tf) {}

double ThetaTrajectory::theta(double t) const {
    const double tau = t / tf_;
    double v = coeffs_[5];
    for (int j = 4; j >= 0; --j) v = v * tau + coeffs_[j];
    return v;
}

ThetaDerivatives ThetaTrajectory::at(double t) const {
    if (!(t >= 0.0 && t <= tf_)) {
        throw std::out_of_range("theta_derivatives: t = " + std::to_string(t) +
                                " outside [0, " + std::to_string(tf_) + "]");
    }
    const double tau = t / tf_;
    const auto& b = coeffs_;
    double v = b[5], d1 = 5.0 * b[5], d2 = 20.0 * b[5];
    for (int j = 4; j >= 0; --j) v = v * tau + b[j];
    for (int j = 4; j >= 1; --j) d1 = d1 * tau + j * b[j];
    for (int j = 4; j >= 2; --j) d2 = d2 * tau + j * (j - 1) * b[j];
    return {v, d1 / tf_, d2 / (tf_ * tf_)};
}

ThetaTrajectory solve_theta(double h, double tf) {
    if (!(h > 0.0) || !(tf > 0.0) || !std::isfinite(h) || !std::isfinite(tf)) {
        throw ValidationError("solve_theta: h and t_f must be finite and > 0");
    }
    const double c = h * tf;
    if (c < kPi * (1.0 - kGrazingTol)) {
        const double min_tf = kPi / h;
        char buf[128];
        std::snprintf(buf, sizeof buf, "t_f must be ≥ %.3f t_0 (got %.6g)", min_tf, tf);
        throw FeasibilityError(buf, min_tf);
    }

    // Rows: theta, theta', theta'' in tau at tau = 0 and tau = 1.
    Eigen::Matrix<double, 6, 6> a = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> rhs;
    for (int j = 0; j < 6; ++j) {
        a(0, j) = j == 0 ? 1.0 : 0.0;
        a(1, j) = j == 1 ? 1.0 : 0.0;
        a(2, j) = j == 2 ? 2.0 : 0.0;
        a(3, j) = 1.0;
        a(4, j) = j;
        a(5, j) = j * (j - 1.0);
    }
    rhs << kPi, -c, 0.0, 0.0, -c, 0.0;
    const Eigen::Matrix<double, 6, 1> x = a.partialPivLu().solve(rhs);

    ThetaTrajectory::Coefficients coeffs{};
    for (int j = 0; j < 6; ++j) coeffs[j] = x(j);
    ThetaTrajectory traj(coeffs, h, tf);

    // For large c theta' changes sign twice, at tau (1 - tau) = sqrt(c / (30 (c - pi))).
    // The first of these is a local minimum of theta; if it reaches 0 the path crosses
    // the north pole and cot(theta) makes the chirp singular inside the pulse.
    if (c > kPi) {
        const double r = std::sqrt(c / (30.0 * (c - kPi)));
        if (r <= 0.25) {
            const double tau_min = 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * r));
            if (traj.theta(tau_min * tf) <= 0.0) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "quintic trajectory leaves [0, pi] for gamma h t_f = %.6g; "
                              "t_f must be < %.3f t_0",
                              c, kMaxSweepAngle / h);
                throw FeasibilityError(buf, kPi / h);
            }
        }
    }
    return traj;
}

ThetaDerivatives theta_derivatives(const ThetaTrajectory& traj, double t) { return traj.at(t); }

double phi_of_t(const ThetaTrajectory& traj, double t) {
    const double ratio = traj.at(t).first / traj.h();
    if (std::abs(ratio) > 1.0 + 1e-12) {
        throw FeasibilityError("phi_of_t: |theta'| exceeds gamma*h at t = " + std::to_string(t),
                               kPi / traj.h());
    }
    return std::asin(std::clamp(ratio, -1.0, 1.0));
}

double chirp_frequency_naive(const ThetaTrajectory& traj, double t) {
    const auto th = traj.at(t);
    const double h = traj.h();
    const double x = th.first / h;
    const double q = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    return -th.second / (h * q) + h * q / std::tan(th.value);
}

double chirp_frequency(const ThetaTrajectory& traj, double t) {
    if (!(t >= 0.0 && t <= traj.tf())) {
        throw std::out_of_range("chirp_frequency: t outside [0, t_f]");
    }
    if (is_grazing(traj)) return 0.0;
    const double tau = t / traj.tf();
    if (tau < kEndpointWindow) return chirp_near_endpoint(traj, 0.0, tau, 1.0);
    if (tau > 1.0 - kEndpointWindow) return chirp_near_endpoint(traj, 1.0, tau - 1.0, -1.0);
    return chirp_frequency_naive(traj, t);
}

PulseDesign::PulseDesign(ThetaTrajectory trajectory)
    : traj_(trajectory),
      omega_start_(chirp_frequency(traj_, 0.0)),
      omega_end_(chirp_frequency(traj_, traj_.tf())) {}

std::vector<ChirpSample> sample_chirp(const PulseDesign& design, int n_samples) {
    if (n_samples < 2) {
        throw ValidationError("sample_chirp: n_samples must be >= 2, got " +
                              std::to_string(n_samples));
    }
    std::vector<ChirpSample> out;
    out.reserve(n_samples);
    const double tf = design.tf();
    for (int i = 0; i < n_samples; ++i) {
        const double t = i == n_samples - 1 ? tf : tf * i / (n_samples - 1);
        out.push_back({t, design.omega(t)});
    }
    return out;
}

}  // namespace magrev
