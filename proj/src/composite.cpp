#include "magrev/composite.hpp"

#include <string>
#include <utility>

#include "magrev/core.hpp"
#include "magrev/errors.hpp"

namespace magrev {

std::vector<double> composite_phases(int n) {
    if (n < 1 || n % 2 == 0) {
        throw ValidationError("composite sequence length must be odd and >= 1, got " +
                              std::to_string(n));
    }
    std::vector<double> phases(n);
    const long long two_n = 2LL * n;
    for (int k = 1; k <= n; ++k) {
        // integer multiple of pi/N, reduced mod 2N before scaling
        const long long m = (n + 1LL - 2LL * ((k + 1) / 2)) * (k / 2);
        const long long reduced = ((m % two_n) + two_n) % two_n;
        phases[k - 1] = static_cast<double>(reduced) * kPi / n;
    }
    return phases;
}

CompositeSequence::CompositeSequence(PulseDesign pulse, int n)
    : pulse_(std::move(pulse)), phases_(composite_phases(n)) {}

CompositeSequence build_sequence(const PulseDesign& pulse, int n) {
    return CompositeSequence(pulse, n);
}

}  // namespace magrev
