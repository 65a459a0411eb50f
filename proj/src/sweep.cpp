#include "magrev/sweep.hpp"

#include <cmath>
#include <exception>
#include <ostream>

#include <nlohmann/json.hpp>

#include "magrev/errors.hpp"
#include "magrev/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace magrev {

namespace {

void apply(ExperimentSpec& e, SweepParam p, double v) {
    switch (p) {
        case SweepParam::h: e.params.h = v; break;
        case SweepParam::d: e.params.d = v; break;
        case SweepParam::alpha: e.params.alpha = v; break;
        case SweepParam::n_pulses: e.n_pulses = static_cast<int>(std::lround(v)); break;
    }
}

SweepPoint evaluate_point(const SweepSpec& spec, std::size_t index) {
    SweepPoint pt;
    const auto e = point_spec(spec, index);
    std::size_t rem = index;
    pt.coords.resize(spec.axes.size());
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
        const auto& vals = spec.axes[a].values;
        pt.coords[a] = vals[rem % vals.size()];
        rem /= vals.size();
    }
    try {
        pt.probability = run_experiment(e).probability;
    } catch (const FeasibilityError&) {
        pt.status = PointStatus::infeasible;
    }
    return pt;
}

SweepResult run_points(const SweepSpec& spec, bool parallel, int threads) {
    spec.validate();
    const std::size_t n = spec.point_count();
    SweepResult out{spec.axes, std::vector<SweepPoint>(n)};
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);

#ifdef _OPENMP
    const int nthreads = parallel ? (threads > 0 ? threads : omp_get_max_threads()) : 1;
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
#else
    (void)parallel;
    (void)threads;
#endif
    for (long long i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            out.points[idx] = evaluate_point(spec, idx);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    return out;
}

}  // namespace

std::string to_string(SweepParam p) {
    switch (p) {
        case SweepParam::h: return "h";
        case SweepParam::d: return "d";
        case SweepParam::alpha: return "alpha";
        case SweepParam::n_pulses: return "N";
    }
    return "?";
}

SweepParam parse_sweep_param(const std::string& name) {
    if (name == "h") return SweepParam::h;
    if (name == "d") return SweepParam::d;
    if (name == "alpha") return SweepParam::alpha;
    if (name == "N") return SweepParam::n_pulses;
    throw ValidationError("unknown sweep parameter '" + name + "'");
}

SweepAxis SweepAxis::linspace(SweepParam p, double min, double max, int count) {
    if (count < 2) throw ValidationError("sweep axis needs at least 2 points");
    if (!(max > min)) throw ValidationError("sweep axis requires max > min");
    SweepAxis axis{p, std::vector<double>(count)};
    for (int i = 0; i < count; ++i) {
        axis.values[i] = i == count - 1 ? max : min + (max - min) * i / (count - 1);
    }
    return axis;
}

SweepAxis SweepAxis::odd_pulses(int n_min, int n_max) {
    if (n_min < 1 || n_min % 2 == 0) throw ValidationError("N axis must start at an odd N >= 1");
    SweepAxis axis{SweepParam::n_pulses, {}};
    for (int n = n_min; n <= n_max; n += 2) axis.values.push_back(n);
    return axis;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2) throw ValidationError("sweep needs 1 or 2 axes");
    if (axes.size() == 2 && axes[0].param == axes[1].param) {
        throw ValidationError("sweep axes must differ");
    }
    for (const auto& axis : axes) {
        if (axis.values.size() < 2) {
            throw ValidationError("sweep axis '" + to_string(axis.param) +
                                  "' needs at least 2 points");
        }
        for (double v : axis.values) {
            const bool ok = [&] {
                switch (axis.param) {
                    case SweepParam::h: return v > 0.0 && std::isfinite(v);
                    case SweepParam::d:
                    case SweepParam::alpha: return v >= 0.0 && std::isfinite(v);
                    case SweepParam::n_pulses:
                        return v >= 1.0 && v == std::floor(v) && std::fmod(v, 2.0) == 1.0;
                }
                return false;
            }();
            if (!ok) {
                throw ValidationError("invalid value " + format_double(v) + " on sweep axis '" +
                                      to_string(axis.param) + "'");
            }
        }
    }
    // fixed parameters with every axis value substituted must be valid
    auto probe = base;
    for (const auto& axis : axes) apply(probe, axis.param, axis.values.front());
    probe.validate();
}

std::size_t SweepSpec::point_count() const {
    std::size_t n = 1;
    for (const auto& axis : axes) n *= axis.values.size();
    return n;
}

ExperimentSpec point_spec(const SweepSpec& spec, std::size_t index) {
    ExperimentSpec e = spec.base;
    e.record_trajectory = false;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
        const auto& vals = spec.axes[a].values;
        apply(e, spec.axes[a].param, vals[index % vals.size()]);
        index /= vals.size();
    }
    return e;
}

SweepResult sweep(const SweepSpec& spec, int threads) { return run_points(spec, true, threads); }

SweepResult sweep_serial(const SweepSpec& spec) { return run_points(spec, false, 1); }

CurveTable compare_n(const SweepSpec& spec, const std::vector<int>& pulse_counts, int threads) {
    if (spec.axes.size() != 1) throw ValidationError("compare_n needs a 1-axis sweep");
    if (spec.axes.front().param == SweepParam::n_pulses) {
        throw ValidationError("compare_n axis cannot be N");
    }
    if (pulse_counts.empty()) throw ValidationError("compare_n needs at least one N");
    for (int n : pulse_counts) composite_phases(n);

    CurveTable table{spec.axes.front(), pulse_counts, {}};
    for (int n : pulse_counts) {
        auto per_n = spec;
        per_n.base.n_pulses = n;
        const auto res = sweep(per_n, threads);
        auto& curve = table.curves.emplace_back();
        for (const auto& pt : res.points) curve.push_back(pt.probability);
    }
    return table;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    for (const auto& axis : result.axes) os << to_string(axis.param) << ',';
    os << "P,status\n";
    for (const auto& pt : result.points) {
        for (double c : pt.coords) os << format_double(c) << ',';
        if (pt.probability) os << format_double(*pt.probability);
        os << ',' << (pt.status == PointStatus::ok ? "ok" : "infeasible") << '\n';
    }
}

void write_curves_csv(std::ostream& os, const CurveTable& table) {
    os << "N," << to_string(table.axis.param) << ",P,status\n";
    for (std::size_t i = 0; i < table.pulse_counts.size(); ++i) {
        for (std::size_t j = 0; j < table.axis.values.size(); ++j) {
            const auto& p = table.curves[i][j];
            os << table.pulse_counts[i] << ',' << format_double(table.axis.values[j]) << ',';
            if (p) os << format_double(*p);
            os << ',' << (p ? "ok" : "infeasible") << '\n';
        }
    }
}

nlohmann::json sweep_spec_to_json(const SweepSpec& spec) {
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& axis : spec.axes) {
        axes.push_back({{"param", to_string(axis.param)}, {"values", axis.values}});
    }
    return {{"axes", axes},
            {"fixed", spec_to_json(spec.base)},
            {"integrator", integrator_to_json(spec.base.integrator)}};
}

}  // namespace magrev
