#include "magrev/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "magrev/errors.hpp"

namespace magrev {

namespace {

constexpr double kPoleEps = 1e-8;

struct Vec3 {
    double x, y, z;
};

inline Vec3 axpy(const Vec3& a, double k, const Vec3& b) {
    return {a.x + k * b.x, a.y + k * b.y, a.z + k * b.z};
}

inline Vec3 to_vec(const SpinState& s) { return {s.x, s.y, s.z}; }
inline SpinState to_state(const Vec3& v) { return {v.x, v.y, v.z}; }

inline Vec3 rhs(const Vec3& s, double t, const Drive& drive, double cph, double sph, double d,
                double alpha) {
    const FieldSample f{drive.h * cph, -drive.h * sph, 2.0 * d * s.z + drive.omega(t)};
    const SpinState r = llg_rhs(to_state(s), f, alpha);
    return {r.x, r.y, r.z};
}

// Number of steps between retained samples.
int sample_stride(const IntegratorConfig& cfg) {
    return (cfg.steps + cfg.max_samples_per_pulse - 1) / cfg.max_samples_per_pulse;
}

}  // namespace

Drive Drive::from_pulse(const PulseDesign& pulse) {
    return {pulse.h(), pulse.tf(), [pulse](double t) { return pulse.omega(t); }};
}

Drive Drive::constant(double h, double tf, double omega) {
    return {h, tf, [omega](double) { return omega; }};
}

Drive feedforward_chirp(const PulseDesign& pulse, double d, double coefficient) {
    const double k = coefficient * d;
    return {pulse.h(), pulse.tf(), [pulse, k](double t) {
                return pulse.omega(t) + k * std::cos(pulse.trajectory().theta(t));
            }};
}

void IntegratorConfig::validate() const {
    if (steps < 1000) {
        throw ValidationError("integrator steps per pulse must be >= 1000, got " +
                              std::to_string(steps));
    }
    if (renormalize_every < 1) throw ValidationError("renormalize_every must be >= 1");
    if (max_samples_per_pulse < 1) throw ValidationError("max_samples_per_pulse must be >= 1");
}

FieldSample effective_field(const SpinState& s, double t_local, const Drive& drive, double phase,
                            double d) {
    return {drive.h * std::cos(phase), -drive.h * std::sin(phase),
            2.0 * d * s.z + drive.omega(t_local)};
}

FieldSample effective_field(const SpinState& s, double t_local, const PulseDesign& pulse,
                            double phase, double d) {
    return {pulse.h() * std::cos(phase), -pulse.h() * std::sin(phase),
            2.0 * d * s.z + pulse.omega(t_local)};
}

SpinState llg_rhs(const SpinState& s, const FieldSample& f, double alpha) {
    // p = s x H, q = s x p
    const double px = s.y * f.z - s.z * f.y;
    const double py = s.z * f.x - s.x * f.z;
    const double pz = s.x * f.y - s.y * f.x;
    const double qx = s.y * pz - s.z * py;
    const double qy = s.z * px - s.x * pz;
    const double qz = s.x * py - s.y * px;
    return {px - alpha * qx, py - alpha * qy, pz - alpha * qz};
}

IntegrationResult integrate_pulse(const SpinState& s0, const Drive& drive, double phase, double d,
                                  double alpha, const IntegratorConfig& cfg, bool record) {
    cfg.validate();
    const int n = cfg.steps;
    const double tf = drive.tf;
    const double dt = tf / n;
    const double cph = std::cos(phase);
    const double sph = std::sin(phase);
    const int stride = sample_stride(cfg);

    IntegrationResult out;
    Vec3 s = to_vec(s0);
    if (record) {
        out.trajectory.emplace();
        out.trajectory->times.push_back(0.0);
        out.trajectory->states.push_back(s0);
        out.trajectory->pulse_index.push_back(1);
    }

    for (int i = 0; i < n; ++i) {
        const double t0 = tf * i / n;
        const double th = tf * (2.0 * i + 1.0) / (2.0 * n);
        const double t1 = tf * (i + 1.0) / n;
        const Vec3 k1 = rhs(s, t0, drive, cph, sph, d, alpha);
        const Vec3 k2 = rhs(axpy(s, 0.5 * dt, k1), th, drive, cph, sph, d, alpha);
        const Vec3 k3 = rhs(axpy(s, 0.5 * dt, k2), th, drive, cph, sph, d, alpha);
        const Vec3 k4 = rhs(axpy(s, dt, k3), t1, drive, cph, sph, d, alpha);
        const double w = dt / 6.0;
        s = {s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
             s.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
             s.z + w * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z)};

        if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z)) {
            throw NumericalError("non-finite spin state at step " + std::to_string(i + 1) +
                                     " (t = " + std::to_string(t1) + ")",
                                 static_cast<std::size_t>(i + 1));
        }
        if ((i + 1) % cfg.renormalize_every == 0 || i + 1 == n) {
            const double norm = std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z);
            out.max_norm_drift = std::max(out.max_norm_drift, std::abs(1.0 - norm));
            s = {s.x / norm, s.y / norm, s.z / norm};
        }
        if (record && ((i + 1) % stride == 0 || i + 1 == n)) {
            out.trajectory->times.push_back(t1);
            out.trajectory->states.push_back(to_state(s));
            out.trajectory->pulse_index.push_back(1);
        }
    }
    out.final_state = to_state(s);
    return out;
}

IntegrationResult integrate_sequence(const SpinState& s0, const CompositeSequence& seq, double d,
                                     double alpha, const IntegratorConfig& cfg, bool record,
                                     std::optional<double> feedforward) {
    const Drive drive = feedforward ? feedforward_chirp(seq.pulse(), d, *feedforward)
                                    : Drive::from_pulse(seq.pulse());
    IntegrationResult out;
    out.final_state = s0;
    if (record) out.trajectory.emplace();

    for (int k = 1; k <= seq.size(); ++k) {
        auto part = integrate_pulse(out.final_state, drive, seq.phases()[k - 1], d, alpha, cfg,
                                    record);
        out.final_state = part.final_state;
        out.max_norm_drift = std::max(out.max_norm_drift, part.max_norm_drift);
        if (record) {
            const double offset = seq.pulse_start(k);
            const auto& src = *part.trajectory;
            // pulse k > 1 starts where pulse k - 1 ended; drop the duplicate sample
            for (std::size_t j = k == 1 ? 0 : 1; j < src.size(); ++j) {
                out.trajectory->times.push_back(src.times[j] + offset);
                out.trajectory->states.push_back(src.states[j]);
                out.trajectory->pulse_index.push_back(k);
            }
        }
    }
    return out;
}

SphericalRate spherical_rhs(const SphericalState& p, double t_local, const Drive& drive,
                            double phase, double d, double alpha) {
    if (!(p.theta > kPoleEps && p.theta < kPi - kPoleEps)) {
        throw PoleError("spherical_rhs: theta = " + std::to_string(p.theta) +
                        " is within 1e-8 of a pole");
    }
    const double a = p.phi + phase;
    const double h = drive.h;
    return {h * std::sin(a) - alpha * d * std::sin(2.0 * p.theta),
            -2.0 * d * std::cos(p.theta) - drive.omega(t_local) +
                h * std::cos(a) / std::tan(p.theta)};
}

SphericalTrajectory integrate_pulse_spherical(const SphericalState& p0, const Drive& drive,
                                              double phase, double d, double alpha,
                                              const IntegratorConfig& cfg) {
    cfg.validate();
    const int n = cfg.steps;
    const double tf = drive.tf;
    const double dt = tf / n;
    const int stride = sample_stride(cfg);

    SphericalTrajectory out;
    out.times.push_back(0.0);
    out.states.push_back(p0);
    SphericalState p = p0;
    auto step = [&](const SphericalState& base, double k, const SphericalRate& r) {
        return SphericalState{base.theta + k * r.theta, base.phi + k * r.phi};
    };
    for (int i = 0; i < n; ++i) {
        const double t0 = tf * i / n;
        const double th = tf * (2.0 * i + 1.0) / (2.0 * n);
        const double t1 = tf * (i + 1.0) / n;
        const auto k1 = spherical_rhs(p, t0, drive, phase, d, alpha);
        const auto k2 = spherical_rhs(step(p, 0.5 * dt, k1), th, drive, phase, d, alpha);
        const auto k3 = spherical_rhs(step(p, 0.5 * dt, k2), th, drive, phase, d, alpha);
        const auto k4 = spherical_rhs(step(p, dt, k3), t1, drive, phase, d, alpha);
        p.theta += dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
        p.phi += dt / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
        if ((i + 1) % stride == 0 || i + 1 == n) {
            out.times.push_back(t1);
            out.states.push_back(p);
        }
    }
    return out;
}

}  // namespace magrev
