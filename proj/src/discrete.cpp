#include "maxmean/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxmean/pmean.hpp"

namespace maxmean {
namespace {

constexpr double kIneqTol = 1e-9;
// The sliding sum is rebuilt from scratch at this interval to bound drift.
constexpr std::size_t kRefreshInterval = std::size_t(1) << 16;
// Cap on exact re-evaluations of near-maximal windows (massively tied data).
constexpr std::size_t kMaxRefinedCandidates = 4096;

// Pairwise summation keeps the error of huge-window sums near log2(n)*eps
// instead of n*eps.
double direct_window_sum(const std::vector<double>& pw, std::size_t j, std::size_t n) {
    if (n <= 64) {
        double s = 0.0;
        for (std::size_t i = j; i < j + n; ++i) s += pw[i];
        return s;
    }
    const std::size_t half = n / 2;
    return direct_window_sum(pw, j, half) + direct_window_sum(pw, j + half, n - half);
}

std::vector<double> abs_powers(const std::vector<double>& values, double p) {
    std::vector<double> pw(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) pw[i] = pow_abs(values[i], p);
    return pw;
}

struct SlideResult {
    double max_sum = 0.0;
    std::size_t arg = 0;
};

// One sliding pass over the power series: maximal window sum with the
// smallest attaining start. When collect is set, also gathers starts whose
// sliding sum reaches collect_threshold, capped at max_collect.
SlideResult slide(const std::vector<double>& pw, std::size_t n, double collect_threshold,
                  std::vector<std::size_t>* collect, std::size_t max_collect = 0) {
    const std::size_t last = pw.size() - n;
    double sum = direct_window_sum(pw, 0, n);
    SlideResult r{sum, 0};
    std::size_t since_refresh = 0;
    for (std::size_t j = 0;; ++j) {
        if (sum > r.max_sum) {
            r.max_sum = sum;
            r.arg = j;
        }
        if (collect && sum >= collect_threshold && collect->size() < max_collect)
            collect->push_back(j);
        if (j == last) break;
        sum += pw[j + n];
        sum -= pw[j];
        if (++since_refresh == kRefreshInterval) {
            sum = direct_window_sum(pw, j + 1, n);
            since_refresh = 0;
        }
    }
    return r;
}

void require_exponent(double p, double at_least) {
    if (!std::isfinite(p) || p < at_least)
        fail(ErrorCode::InvalidExponent,
             "exponent must be finite and >= " + std::to_string(at_least));
}

WindowedNormResult norm_at(const SampleSeries& x, double p, std::size_t n) {
    return windowed_pnorm(x, WindowSpec{p, n});
}

}  // namespace

void validate(const SampleSeries& x) {
    if (x.values.empty()) fail(ErrorCode::EmptySeries, "series must be non-empty");
    for (double v : x.values)
        if (!std::isfinite(v)) fail(ErrorCode::NonFiniteInput, "series contains a non-finite value");
    if (!std::isfinite(x.dt) || x.dt <= 0.0)
        fail(ErrorCode::InvalidLength, "sample spacing dt must be positive");
}

WindowedNormResult windowed_pnorm(const SampleSeries& x, const WindowSpec& spec) {
    validate(x);
    if (!std::isfinite(spec.p) || spec.p <= 0.0)
        fail(ErrorCode::InvalidExponent, "exponent must be positive");
    if (spec.n < 1) fail(ErrorCode::InvalidWindow, "window length must be >= 1");
    if (spec.n > x.size())
        fail(ErrorCode::WindowTooLong, "window of " + std::to_string(spec.n) +
                                           " samples exceeds series length " +
                                           std::to_string(x.size()));

    const std::vector<double> pw = abs_powers(x.values, spec.p);
    const std::size_t n = spec.n;

    const SlideResult sliding = slide(pw, n, std::numeric_limits<double>::infinity(), nullptr);

    // Re-rank every near-maximal window by direct summation so the reported
    // window does not depend on sliding-sum drift. Exactly tied windows
    // resolve to the smallest start. The cap bounds the re-summation work by
    // O(N) even when nearly all windows tie.
    std::vector<std::size_t> candidates;
    const double slack = kIneqTol * sliding.max_sum;
    const std::size_t max_collect =
        std::min(kMaxRefinedCandidates, std::max<std::size_t>(2, 8 * pw.size() / n));
    slide(pw, n, sliding.max_sum - slack, &candidates, max_collect);
    if (std::find(candidates.begin(), candidates.end(), sliding.arg) == candidates.end())
        candidates.push_back(sliding.arg);  // candidate cap overflowed before reaching it

    double best = -1.0;
    std::size_t arg = sliding.arg;
    for (std::size_t j : candidates) {
        const double s = direct_window_sum(pw, j, n);
        if (s > best) {
            best = s;
            arg = j;
        }
    }

    WindowedNormResult r;
    r.value_pow_p = best / static_cast<double>(n);
    r.value = proot(r.value_pow_p, spec.p);
    r.arg_start = arg;
    return r;
}

double sup_norm(const SampleSeries& x) {
    validate(x);
    double m = 0.0;
    for (double v : x.values) m = std::max(m, std::fabs(v));
    return m;
}

SampleSeries impulse_train(std::size_t n, std::size_t L) {
    if (n < 1) fail(ErrorCode::InvalidPeriod, "impulse period must be >= 1");
    if (L < n)
        fail(ErrorCode::LengthTooShort, "length " + std::to_string(L) +
                                            " shorter than period " + std::to_string(n));
    SampleSeries x;
    x.dt = 1.0;
    x.values.assign(L, 0.0);
    for (std::size_t i = 0; i < L; i += n) x.values[i] = 1.0;
    return x;
}

BoundCheck check_equivalence_bounds(const SampleSeries& x, const WindowSpec& spec) {
    require_exponent(spec.p, 1.0);
    const WindowedNormResult r = windowed_pnorm(x, spec);
    const double sup = sup_norm(x);
    const double lower = std::pow(static_cast<double>(spec.n), -1.0 / spec.p) * sup;

    BoundCheck c;
    c.name = "equivalence_bounds";
    c.tol = kIneqTol;
    const bool lower_ok = leq_rel(lower, r.value, kIneqTol);
    const bool upper_ok = leq_rel(r.value, sup, kIneqTol);
    c.passed = lower_ok && upper_ok;
    // Report the binding side as the lhs/rhs pair.
    if (r.value - lower <= sup - r.value) {
        c.lhs = lower;
        c.rhs = r.value;
    } else {
        c.lhs = r.value;
        c.rhs = sup;
    }
    c.witness = {{"lower", lower},        {"value", r.value}, {"upper", sup},
                 {"arg_start", r.arg_start}, {"n", spec.n},   {"p", spec.p}};
    return c;
}

BoundCheck check_partition_inequality(const SampleSeries& x, double p,
                                      const std::vector<std::size_t>& parts) {
    require_exponent(p, 1.0);
    if (parts.empty()) fail(ErrorCode::InvalidPartition, "partition must be non-empty");
    std::size_t n = 0;
    for (std::size_t a : parts) {
        if (a < 1) fail(ErrorCode::InvalidPartition, "partition entries must be >= 1");
        n += a;
    }
    validate(x);
    if (n > x.size())
        fail(ErrorCode::PartitionTooLong, "partition sums to " + std::to_string(n) +
                                              " > series length " + std::to_string(x.size()));

    const WindowedNormResult whole = norm_at(x, p, n);
    double rhs = 0.0;
    for (std::size_t a : parts)
        rhs += (static_cast<double>(a) / static_cast<double>(n)) * norm_at(x, p, a).value_pow_p;

    BoundCheck c;
    c.name = "partition_inequality";
    c.tol = kIneqTol;
    c.lhs = whole.value_pow_p;
    c.rhs = rhs;
    c.passed = leq_rel(c.lhs, c.rhs, kIneqTol);
    c.witness = {{"n", n}, {"parts", parts}, {"arg_start", whole.arg_start}, {"p", p}};
    return c;
}

BoundCheck check_multiple_ordering(const SampleSeries& x, double p, std::size_t n,
                                   std::size_t d) {
    require_exponent(p, 1.0);
    if (n < 1 || d < 1) fail(ErrorCode::InvalidWindow, "window and multiplier must be >= 1");
    validate(x);
    if (n * d > x.size())
        fail(ErrorCode::WindowTooLong, "d*n = " + std::to_string(n * d) +
                                           " exceeds series length " + std::to_string(x.size()));

    const WindowedNormResult coarse = norm_at(x, p, d * n);
    const WindowedNormResult fine = norm_at(x, p, n);

    BoundCheck c;
    c.name = "divisor_ordering";
    c.tol = kIneqTol;
    c.lhs = coarse.value;
    c.rhs = fine.value;
    c.passed = leq_rel(c.lhs, c.rhs, kIneqTol);
    c.witness = {{"n", n}, {"d", d}, {"arg_start_coarse", coarse.arg_start},
                 {"arg_start_fine", fine.arg_start}, {"p", p}};
    return c;
}

BoundCheck check_two_scale_bound(const SampleSeries& x, double p, std::size_t n,
                                 std::size_t m) {
    require_exponent(p, 1.0);
    if (n < 1) fail(ErrorCode::InvalidWindow, "window must be >= 1");
    if (n >= m) fail(ErrorCode::BadOrder, "need n < m");
    validate(x);
    const std::size_t d = m / n;
    // The proof extends the maximizing m-window to one of (d+1)*n samples;
    // that extension has to fit in the finite series.
    if ((d + 1) * n > x.size())
        fail(ErrorCode::WindowTooLong, "(floor(m/n)+1)*n = " + std::to_string((d + 1) * n) +
                                           " exceeds series length " + std::to_string(x.size()));

    const double factor =
        static_cast<double>((d + 1) * n) / static_cast<double>(m);
    const WindowedNormResult at_m = norm_at(x, p, m);
    const WindowedNormResult at_n = norm_at(x, p, n);

    BoundCheck c;
    c.name = "two_scale_bound";
    c.tol = kIneqTol;
    c.lhs = at_m.value_pow_p;
    c.rhs = factor * at_n.value_pow_p;
    c.passed = leq_rel(c.lhs, c.rhs, kIneqTol) && factor <= 2.0 + 1e-12;
    c.witness = {{"n", n},      {"m", m},       {"factor", factor},
                 {"arg_start_m", at_m.arg_start}, {"arg_start_n", at_n.arg_start}, {"p", p}};
    return c;
}

ScaleReport scale_ladder(const SampleSeries& x, double p, std::vector<std::size_t> windows) {
    validate(x);
    std::sort(windows.begin(), windows.end());
    windows.erase(std::unique(windows.begin(), windows.end()), windows.end());
    if (windows.empty()) fail(ErrorCode::EmptyLadder, "ladder must contain at least one window");
    if (windows.back() > x.size())
        fail(ErrorCode::WindowTooLong, "window of " + std::to_string(windows.back()) +
                                           " samples exceeds series length " +
                                           std::to_string(x.size()));

    ScaleReport report;
    report.p = p;
    double min_so_far = std::numeric_limits<double>::infinity();
    for (std::size_t n : windows) {
        const WindowedNormResult r = norm_at(x, p, n);
        ScaleRow row;
        row.window = n;
        row.duration = static_cast<double>(n) * x.dt;
        row.value = r.value;
        row.value_pow_p = r.value_pow_p;
        row.arg_start = r.arg_start;
        row.violates_naive_monotonicity = exceeds_rel(r.value, min_so_far, 1e-12);
        report.rows.push_back(row);
        min_so_far = std::min(min_so_far, r.value);
    }
    return report;
}

}  // namespace maxmean
