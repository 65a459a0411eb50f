#pragma once

#include <vector>

#include "magrev/pulse.hpp"

namespace magrev {

/// phi_k = (N + 1 - 2 floor((k+1)/2)) floor(k/2) pi / N, reduced to [0, 2 pi).
std::vector<double> composite_phases(int n);

class CompositeSequence {
public:
    CompositeSequence(PulseDesign pulse, int n);

    const PulseDesign& pulse() const { return pulse_; }
    int size() const { return static_cast<int>(phases_.size()); }
    const std::vector<double>& phases() const { return phases_; }
    double total_duration() const { return pulse_.tf() * size(); }
    /// Global start time of pulse k (1-based).
    double pulse_start(int k) const { return pulse_.tf() * (k - 1); }

private:
    PulseDesign pulse_;
    std::vector<double> phases_;
};

CompositeSequence build_sequence(const PulseDesign& pulse, int n);

}  // namespace magrev
