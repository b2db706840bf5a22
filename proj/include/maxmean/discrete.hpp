#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "maxmean/bound_check.hpp"
#include "maxmean/error.hpp"

namespace maxmean {

// Finite real-valued series with uniform sample spacing. dt is metadata for
// the discrete operations; windows are counted in samples.
struct SampleSeries {
    std::vector<double> values;
    double dt = 1.0;

    std::size_t size() const { return values.size(); }
};

struct WindowSpec {
    double p = 1.0;      // exponent, > 0
    std::size_t n = 1;   // window length in samples, >= 1
};

// Maximal windowed p-mean and a witness window.
//   value       = ((1/n) sum |x_i|^p)^(1/p), maximized over window starts
//   value_pow_p = the maximized pre-root quantity (1/n) sum |x_i|^p
//   arg_start   = smallest zero-based start index attaining the maximum
struct WindowedNormResult {
    double value = 0.0;
    double value_pow_p = 0.0;
    std::size_t arg_start = 0;
};

struct ScaleRow {
    std::size_t window = 0;
    double duration = 0.0;  // window * dt
    double value = 0.0;
    double value_pow_p = 0.0;
    std::size_t arg_start = 0;
    bool violates_naive_monotonicity = false;
};

struct ScaleReport {
    double p = 1.0;
    std::string source;
    std::vector<ScaleRow> rows;  // sorted by window size ascending
};

// Throws on violated invariants: EmptySeries, NonFiniteInput.
void validate(const SampleSeries& x);

// Max over all window starts j of ((1/n) sum_{i=j}^{j+n-1} |x_i|^p)^(1/p).
// O(N) via a running sum of |x_i|^p; the winning window is re-verified by
// direct summation. Smallest maximizing j wins ties.
WindowedNormResult windowed_pnorm(const SampleSeries& x, const WindowSpec& spec);

// max_i |x_i|
double sup_norm(const SampleSeries& x);

// Length-L prefix of the 0/1 train with ones at zero-based indices 0, n, 2n, ...
// (one-based positions congruent to 1 mod n). dt = 1.
SampleSeries impulse_train(std::size_t n, std::size_t L);

// n^(-1/p) * sup_norm(x) <= windowed_pnorm(x) <= sup_norm(x).
// The returned lhs/rhs are the binding side; witness carries all three values.
BoundCheck check_equivalence_bounds(const SampleSeries& x, const WindowSpec& spec);

// value_pow_p(n) <= sum_l (alpha_l/n) * value_pow_p(alpha_l), n = sum alpha_l.
BoundCheck check_partition_inequality(const SampleSeries& x, double p,
                                      const std::vector<std::size_t>& parts);

// windowed_pnorm at d*n <= windowed_pnorm at n.
BoundCheck check_multiple_ordering(const SampleSeries& x, double p, std::size_t n,
                                   std::size_t d);

// value_pow_p(m) <= c * value_pow_p(n) with c = (floor(m/n)+1)*n/m <= 2.
// Requires (floor(m/n)+1)*n <= length so the extended window fits.
BoundCheck check_two_scale_bound(const SampleSeries& x, double p, std::size_t n,
                                 std::size_t m);

// One row per window size; a row is flagged when its value exceeds the value
// of some smaller window in the ladder beyond 1e-12 relative.
ScaleReport scale_ladder(const SampleSeries& x, double p, std::vector<std::size_t> windows);

}  // namespace maxmean
