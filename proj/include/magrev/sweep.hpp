#pragma once

// Grid scans of run_experiment. Every grid point is an independent pure
// evaluation; results are stored by row-major grid index, so output order
// never depends on the scheduler.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "magrev/protocol.hpp"

namespace magrev {

enum class SweepParam { h, d, alpha, n_pulses };

std::string to_string(SweepParam p);
SweepParam parse_sweep_param(const std::string& name);

struct SweepAxis {
    SweepParam param;
    std::vector<double> values;

    static SweepAxis linspace(SweepParam p, double min, double max, int count);
    /// Odd pulse counts n_min, n_min + 2, ..., <= n_max.
    static SweepAxis odd_pulses(int n_min, int n_max);
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  // 1 or 2, row-major (last axis fastest)
    ExperimentSpec base;

    void validate() const;
    std::size_t point_count() const;
};

enum class PointStatus { ok, infeasible };

struct SweepPoint {
    std::vector<double> coords;
    std::optional<double> probability;
    PointStatus status = PointStatus::ok;
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<SweepPoint> points;
};

/// Experiment at grid index `index` (row-major).
ExperimentSpec point_spec(const SweepSpec& spec, std::size_t index);

/// OpenMP map over grid points; threads <= 0 uses the runtime default.
SweepResult sweep(const SweepSpec& spec, int threads = 0);

/// Single-threaded reference with identical per-point arithmetic.
SweepResult sweep_serial(const SweepSpec& spec);

struct CurveTable {
    SweepAxis axis;
    std::vector<int> pulse_counts;
    // curves[i][j]: N = pulse_counts[i] at axis.values[j]
    std::vector<std::vector<std::optional<double>>> curves;
};

/// One 1-axis sweep per pulse count over the shared axis.
CurveTable compare_n(const SweepSpec& spec, const std::vector<int>& pulse_counts,
                     int threads = 0);

/// Header `<axis>[,<axis2>],P,status`; infeasible points leave P empty.
void write_sweep_csv(std::ostream& os, const SweepResult& result);
/// Long format `N,<axis>,P,status`.
void write_curves_csv(std::ostream& os, const CurveTable& table);

nlohmann::json sweep_spec_to_json(const SweepSpec& spec);

}  // namespace magrev
