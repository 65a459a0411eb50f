#include "magrev/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "magrev/errors.hpp"

namespace magrev {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string(name) + " must be finite and > 0, got " +
                              std::to_string(v));
    }
}

}  // namespace

void MaterialParams::validate() const {
    require_positive(gyromagnetic_ratio, "gyromagnetic_ratio");
    require_positive(anisotropy_constant, "anisotropy_constant");
    require_positive(volume, "volume");
    require_positive(saturation_magnetization, "saturation_magnetization");
    require_positive(moment_at_saturation, "moment_at_saturation");
    if (field_scale_override) require_positive(*field_scale_override, "field_scale_override");
}

MaterialParams MaterialParams::cobalt() {
    return {1.76e11, 2.2e5, 14.1e-27, 1.44e6, 2.36e-20, std::nullopt};
}

Scales derive_scales(const MaterialParams& m) {
    m.validate();
    // 2K/(mu_0 M_s) is an H-field in A/m; mu_0 times it is the field in tesla.
    const double h0 = m.field_scale_override
                          ? *m.field_scale_override
                          : kMu0 * (2.0 * m.anisotropy_constant / (kMu0 * m.saturation_magnetization));
    return {h0, 1.0 / (m.gyromagnetic_ratio * h0)};
}

void DimensionlessParams::validate() const {
    require_positive(h, "h");
    require_positive(tf, "tf");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw ValidationError("alpha must be finite and >= 0, got " + std::to_string(alpha));
    }
    if (!(d >= 0.0) || !std::isfinite(d)) {
        throw ValidationError("d must be finite and >= 0, got " + std::to_string(d));
    }
}

DimensionlessParams to_dimensionless(const Scales& scales, double h_tesla, double tf_seconds,
                                     double d, double alpha) {
    DimensionlessParams p{h_tesla / scales.field, d, alpha, tf_seconds / scales.time};
    p.validate();
    return p;
}

PhysicalPulse to_physical(const Scales& scales, const DimensionlessParams& p) {
    return {p.h * scales.field, p.tf * scales.time};
}

double SpinState::norm() const { return std::sqrt(x * x + y * y + z * z); }

SpinState SpinState::normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
}

SpinState to_cartesian(const SphericalState& p) {
    const double st = std::sin(p.theta);
    return {st * std::cos(p.phi), st * std::sin(p.phi), std::cos(p.theta)};
}

SphericalState to_spherical(const SpinState& s) {
    if (std::abs(s.norm() - 1.0) > 1e-6) {
        throw ValidationError("to_spherical: state is not a unit vector (|s| = " +
                              std::to_string(s.norm()) + ")");
    }
    const double theta = std::acos(std::clamp(s.z, -1.0, 1.0));
    const bool pole = s.x == 0.0 && s.y == 0.0;
    return {theta, pole ? 0.0 : std::atan2(s.y, s.x)};
}

}  // namespace magrev
