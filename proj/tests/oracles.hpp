#pragma once

// Test-only reference implementations, independent of the library code paths.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

namespace magrev::testing {

// Independent closed form: theta(tau) = pi - c tau + (c - pi)(10 tau^3 - 15 tau^4 + 6 tau^5),
// the quintic matching all six boundary conditions (c = h t_f).
template <class T>
struct HermiteOracle {
    T h, tf, c, pi;

    HermiteOracle(double h_, double tf_)
        : h(h_), tf(tf_), c(T(h_) * T(tf_)), pi(boost::math::constants::pi<T>()) {}

    T theta(T t) const {
        const T u = t / tf;
        return pi - c * u + (c - pi) * (10 * u * u * u - 15 * u * u * u * u + 6 * u * u * u * u * u);
    }
    T dtheta(T t) const {
        const T u = t / tf;
        return (-c + (c - pi) * (30 * u * u - 60 * u * u * u + 30 * u * u * u * u)) / tf;
    }
    T ddtheta(T t) const {
        const T u = t / tf;
        return (c - pi) * (60 * u - 180 * u * u + 120 * u * u * u) / (tf * tf);
    }
    T omega(T t) const {
        using std::sqrt;
        using std::tan;
        using boost::multiprecision::sqrt;
        using boost::multiprecision::tan;
        const T x = dtheta(t) / h;
        const T q = sqrt(1 - x * x);
        return -ddtheta(t) / (h * q) + h * q / tan(theta(t));
    }
};

using Wide = boost::multiprecision::cpp_bin_float_50;

/// Endpoint value of the chirp by Richardson extrapolation of the wide-precision
/// expression at distances 1e-6 and 1e-7 from the endpoint.
inline double chirp_limit(double h, double tf, bool at_end) {
    const HermiteOracle<Wide> oracle(h, tf);
    auto at = [&](double dist) {
        return at_end ? oracle.omega(Wide(tf) - Wide(dist)) : oracle.omega(Wide(dist));
    };
    const Wide a = at(1e-6);
    const Wide b = at(1e-7);
    return static_cast<double>((10 * b - a) / 9);
}

}  // namespace magrev::testing
