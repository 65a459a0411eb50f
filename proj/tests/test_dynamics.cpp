#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "magrev/dynamics.hpp"
#include "magrev/errors.hpp"
#include "magrev/protocol.hpp"

using namespace magrev;
using doctest::Approx;

namespace {

double dot(const SpinState& a, const FieldSample& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

SpinState random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return SpinState{n(rng), n(rng), n(rng)}.normalized();
}

}  // namespace

TEST_CASE("effective_field examples") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    auto f = effective_field(SpinState::south(), 50.0, pulse, 0.0, 0.0);
    CHECK(f.x == 0.08);
    CHECK(f.y == 0.0);
    CHECK(std::abs(f.z) <= 1e-9);

    f = effective_field(SpinState::south(), 50.0, pulse, 0.0, 0.01);
    CHECK(f.x == 0.08);
    CHECK(f.z == Approx(-0.02).epsilon(1e-7));

    // drive phase rotates the transverse field clockwise in the x-y plane
    f = effective_field(SpinState::south(), 50.0, pulse, kPi / 2, 0.0);
    CHECK(std::abs(f.x) <= 1e-17);
    CHECK(f.y == -0.08);
}

TEST_CASE("llg_rhs examples") {
    const double h = 0.08, w = 0.03;
    auto r = llg_rhs(SpinState::south(), {h, 0.0, w}, 0.0);
    CHECK(r.x == 0.0);
    CHECK(r.y == -h);
    CHECK(r.z == 0.0);

    r = llg_rhs(SpinState{0.6, 0.0, 0.8}, {0.3, 0.0, 0.4}, 0.0);
    CHECK(std::abs(r.x) + std::abs(r.y) + std::abs(r.z) <= 1e-16);

    // s x H = (0, -Hz, 0); s x (s x H) = (0, 0, -Hz)
    const double hz = 0.7, alpha = 0.1;
    r = llg_rhs(SpinState{1.0, 0.0, 0.0}, {0.0, 0.0, hz}, alpha);
    CHECK(r.x == 0.0);
    CHECK(r.y == -hz);
    CHECK(r.z == Approx(alpha * hz));
}

TEST_CASE("llg_rhs is orthogonal to s") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const auto s = random_unit(rng);
        const FieldSample f{u(rng), u(rng), u(rng)};
        const auto r = llg_rhs(s, f, std::abs(u(rng)));
        CHECK(std::abs(r.x * s.x + r.y * s.y + r.z * s.z) <= 1e-14);
    }
}

TEST_CASE("zero field leaves the state unchanged") {
    std::mt19937_64 rng(5);
    const auto s0 = random_unit(rng);
    const auto res = integrate_pulse(s0, Drive::constant(0.0, 100.0, 0.0), 0.0, 0.0, 0.0,
                                     IntegratorConfig{}, true);
    for (const auto& s : res.trajectory->states) {
        CHECK(s.x == Approx(s0.x).epsilon(1e-15));
        CHECK(s.y == Approx(s0.y).epsilon(1e-15));
        CHECK(s.z == Approx(s0.z).epsilon(1e-15));
    }
}

TEST_CASE("precession about a constant field conserves s . H") {
    const double h = 0.08, w = 0.05;
    const FieldSample field{h, 0.0, w};
    const double norm = std::hypot(h, w);
    const auto s0 = SpinState{0.3, -0.5, 0.2}.normalized();
    const auto res = integrate_pulse(s0, Drive::constant(h, 100.0, w), 0.0, 0.0, 0.0,
                                     IntegratorConfig{}, true);
    const double ref = dot(s0, field) / norm;
    for (const auto& s : res.trajectory->states) CHECK(std::abs(dot(s, field) / norm - ref) <= 1e-9);
}

TEST_CASE("damping along a constant field raises s_z monotonically") {
    const auto s0 = SpinState{0.7, 0.1, -0.7}.normalized();
    const auto res = integrate_pulse(s0, Drive::constant(0.0, 100.0, 1.0), 0.0, 0.0, 0.05,
                                     IntegratorConfig{}, true);
    const auto& st = res.trajectory->states;
    for (std::size_t i = 1; i < st.size(); ++i) CHECK(st[i].z >= st[i - 1].z);
    CHECK(st.back().z > 0.9);
}

TEST_CASE("linear limit reverses the spin") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    const auto res = integrate_pulse(SpinState::south(), Drive::from_pulse(pulse), 0.0, 0.0, 0.0,
                                     IntegratorConfig{}, false);
    CHECK(res.final_state.z >= 0.9999);
    CHECK(std::abs(res.final_state.norm() - 1.0) <= 1e-12);
    CHECK(res.max_norm_drift <= 1e-7);

    const auto seq = build_sequence(pulse, 3);
    const auto three = integrate_sequence(SpinState::south(), seq, 0.0, 0.0, IntegratorConfig{}, false);
    CHECK(three.final_state.z >= 0.9999);
}

TEST_CASE("single-pulse sequence equals the bare pulse") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    const IntegratorConfig cfg;
    const auto a = integrate_pulse(SpinState::south(), Drive::from_pulse(pulse), 0.0, 0.01, 0.002,
                                   cfg, true);
    const auto b =
        integrate_sequence(SpinState::south(), build_sequence(pulse, 1), 0.01, 0.002, cfg, true);
    CHECK(a.final_state.x == b.final_state.x);
    CHECK(a.final_state.y == b.final_state.y);
    CHECK(a.final_state.z == b.final_state.z);
    CHECK(a.trajectory->times == b.trajectory->times);
}

TEST_CASE("sequence trajectories use global time") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    IntegratorConfig cfg;
    const auto res =
        integrate_sequence(SpinState::south(), build_sequence(pulse, 5), 0.01, 0.0, cfg, true);
    const auto& tr = *res.trajectory;
    CHECK(tr.times.front() == 0.0);
    CHECK(tr.times.back() == 500.0);
    CHECK(tr.pulse_index.front() == 1);
    CHECK(tr.pulse_index.back() == 5);
    CHECK(tr.size() == 1 + 5 * 2000);
    for (std::size_t i = 1; i < tr.size(); ++i) {
        CHECK(tr.times[i] > tr.times[i - 1]);
        CHECK(tr.pulse_index[i] >= tr.pulse_index[i - 1]);
    }
    CHECK(tr.states.back().z == res.final_state.z);
}

TEST_CASE("decimation respects the per-pulse sample cap") {
    IntegratorConfig cfg;
    cfg.steps = 4999;
    cfg.max_samples_per_pulse = 100;
    const auto res = integrate_pulse(SpinState::south(), Drive::constant(0.08, 100.0, 0.0), 0.0,
                                     0.0, 0.0, cfg, true);
    CHECK(res.trajectory->size() <= 101 + 1);
    CHECK(res.trajectory->times.back() == 100.0);
}

TEST_CASE("integrator configuration is validated") {
    IntegratorConfig cfg;
    cfg.steps = 999;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = {};
    cfg.renormalize_every = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("non-finite state aborts with the step index") {
    Drive bad{0.08, 100.0, [](double t) {
                  return t > 10.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
              }};
    try {
        integrate_pulse(SpinState::south(), bad, 0.0, 0.0, 0.0, IntegratorConfig{}, false);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        // first stage touching t > 10 is the half step of the 2001st step
        CHECK(e.step() == 2001);
        CHECK(std::string(e.what()).find("step 2001") != std::string::npos);
    }
}

TEST_CASE("renormalization interval") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    IntegratorConfig cfg;
    cfg.renormalize_every = 1000;
    const auto res = integrate_pulse(SpinState::south(), Drive::from_pulse(pulse), 0.0, 0.01, 0.0,
                                     cfg, false);
    CHECK(std::abs(res.final_state.norm() - 1.0) <= 1e-12);
    CHECK(res.max_norm_drift <= 1e-7);
}

TEST_CASE("spherical_rhs examples") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    const auto drive = Drive::from_pulse(pulse);
    const double t = 37.0;
    auto r = spherical_rhs({kPi / 2, kPi / 2}, t, drive, 0.0, 0.0, 0.0);
    CHECK(r.theta == Approx(0.08));
    CHECK(r.phi == Approx(-pulse.omega(t)).epsilon(1e-14));

    const double alpha = 0.02, d = 0.01;
    const auto undamped = spherical_rhs({kPi / 4, 0.3}, t, drive, 0.0, d, 0.0);
    const auto damped = spherical_rhs({kPi / 4, 0.3}, t, drive, 0.0, d, alpha);
    CHECK(damped.theta - undamped.theta == Approx(-alpha * d).epsilon(1e-12));
    CHECK(damped.phi == undamped.phi);

    CHECK_THROWS_AS(spherical_rhs({1e-9, 0.0}, t, drive, 0.0, 0.0, 0.0), PoleError);
    CHECK_THROWS_AS(spherical_rhs({kPi - 1e-9, 0.0}, t, drive, 0.0, 0.0, 0.0), PoleError);
}

TEST_CASE("spherical_rhs is the Cartesian rhs in spherical coordinates at alpha = 0") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    const auto drive = Drive::from_pulse(pulse);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> th(0.05, kPi - 0.05), ph(-kPi, kPi), tt(0.0, 100.0),
        dd(0.0, 0.05);
    for (int i = 0; i < 2000; ++i) {
        const SphericalState p{th(rng), ph(rng)};
        const double t = tt(rng), d = dd(rng), phase = ph(rng) + kPi;
        const auto s = to_cartesian(p);
        const auto ds = llg_rhs(s, effective_field(s, t, drive, phase, d), 0.0);
        const double st = std::sin(p.theta);
        const double theta_dot = -ds.z / st;
        const double phi_dot = (s.x * ds.y - s.y * ds.x) / (st * st);
        const auto r = spherical_rhs(p, t, drive, phase, d, 0.0);
        CHECK(r.theta == Approx(theta_dot).epsilon(1e-12).scale(0.1));
        CHECK(r.phi == Approx(phi_dot).epsilon(1e-12).scale(1.0 / st));
    }
}

TEST_CASE("spherical and Cartesian integrations agree") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    const auto drive = Drive::from_pulse(pulse);
    const SphericalState p0{kPi - 1e-3, -kPi / 2};
    const IntegratorConfig cfg;
    for (double d : {0.0, 0.01, 0.05}) {
        const auto cart = integrate_pulse(to_cartesian(p0), drive, 0.0, d, 0.0, cfg, true);
        const auto sph = integrate_pulse_spherical(p0, drive, 0.0, d, 0.0, cfg);
        REQUIRE(cart.trajectory->size() == sph.states.size());
        double worst = 0.0;
        for (std::size_t i = 0; i < sph.states.size(); ++i) {
            const auto a = cart.trajectory->states[i];
            const auto b = to_cartesian(sph.states[i]);
            worst = std::max({worst, std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
        }
        INFO("d = " << d << ", worst = " << worst);
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("synthesized chirp drives the design trajectory") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    const auto drive = Drive::from_pulse(pulse);
    // Cartesian route: the spherical form would cross the north pole at t_f.
    const auto res = integrate_pulse(to_cartesian({kPi - 1e-6, -kPi / 2}), drive, 0.0, 0.0, 0.0,
                                     IntegratorConfig{}, true);
    const auto& tr = *res.trajectory;
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double theta = std::acos(std::clamp(tr.states[i].z, -1.0, 1.0));
        worst = std::max(worst, std::abs(theta - pulse.trajectory().theta(tr.times[i])));
    }
    INFO("worst theta deviation = " << worst);
    CHECK(worst <= 1e-4);
}

TEST_CASE("feed-forward chirp") {
    const auto pulse = PulseDesign::design(0.08, 100.0);
    const auto plain = Drive::from_pulse(pulse);
    const auto none = feedforward_chirp(pulse, 0.0);
    for (double t : {0.0, 12.5, 50.0, 99.0, 100.0}) CHECK(none.omega(t) == plain.omega(t));
    const auto ff = feedforward_chirp(pulse, 0.05);
    CHECK(ff.omega(50.0) - plain.omega(50.0) == Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK(ff.omega(0.0) - plain.omega(0.0) == Approx(-2.0 * 0.05 * -1.0));
    const auto custom = feedforward_chirp(pulse, 0.05, 1.0);
    CHECK(custom.omega(0.0) - plain.omega(0.0) == Approx(-0.05));

    ExperimentSpec spec;
    spec.params = {0.08, 0.05, 0.0, 100.0};
    const double p_plain = run_experiment(spec).probability;
    spec.feedforward = -2.0;
    const double p_ff = run_experiment(spec).probability;
    INFO("plain " << p_plain << " feed-forward " << p_ff);
    CHECK(p_ff >= p_plain);
}
