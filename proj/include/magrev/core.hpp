#pragma once

// Units, material constants and coordinate transforms.
//
// Everything below the I/O boundary is dimensionless: fields in units of
// h_0 = 2K/(mu_0 M_s), time in units of t_0 = 1/(gamma h_0), gamma = 1.

#include <array>
#include <numbers>
#include <optional>

namespace magrev {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;  // T m / A

struct MaterialParams {
    double gyromagnetic_ratio;      // 1/(T s)
    double anisotropy_constant;     // J/m^3
    double volume;                  // m^3
    double saturation_magnetization;  // A/m
    double moment_at_saturation;    // J/T
    // Pins h_0 (tesla) instead of deriving it from K and M_s.
    std::optional<double> field_scale_override;

    void validate() const;

    /// 3-nm cobalt particle.
    static MaterialParams cobalt();
};

struct Scales {
    double field;  // h_0 as mu_0 H, tesla
    double time;   // t_0, seconds
};

Scales derive_scales(const MaterialParams& m);

struct DimensionlessParams {
    double h = 0.08;
    double d = 0.0;
    double alpha = 0.0;
    double tf = 100.0;

    void validate() const;
};

/// Physical amplitude (T) and duration (s) to units of h_0, t_0.
DimensionlessParams to_dimensionless(const Scales& scales, double h_tesla, double tf_seconds,
                                     double d = 0.0, double alpha = 0.0);

struct PhysicalPulse {
    double h_tesla;
    double tf_seconds;
};

PhysicalPulse to_physical(const Scales& scales, const DimensionlessParams& p);

/// Unit magnetization vector.
struct SpinState {
    double x = 0.0;
    double y = 0.0;
    double z = -1.0;

    double norm() const;
    SpinState normalized() const;
    std::array<double, 3> as_array() const { return {x, y, z}; }

    static constexpr SpinState south() { return {0.0, 0.0, -1.0}; }
    static constexpr SpinState north() { return {0.0, 0.0, 1.0}; }
};

struct SphericalState {
    double theta = kPi;
    double phi = 0.0;
};

SpinState to_cartesian(const SphericalState& p);

/// Inverse of to_cartesian; phi is reported as 0 at the poles.
SphericalState to_spherical(const SpinState& s);

}  // namespace magrev
