#include "maxmean/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxmean/pmean.hpp"

namespace maxmean {
namespace {

constexpr double kIneqTol = 1e-9;

void require_exponent(double p, double at_least) {
    if (!std::isfinite(p) || p < at_least)
        fail(ErrorCode::InvalidExponent,
             "exponent must be finite and >= " + std::to_string(at_least));
}

// Integral of |f|^p over (lo, hi) by direct piece-overlap accumulation.
double direct_integral(const StepFunction& f, const std::vector<double>& wpow, double lo,
                       double hi) {
    const auto& b = f.breakpoints();
    double mass = 0.0;
    for (std::size_t k = 0; k < f.pieces(); ++k) {
        const double overlap = std::min(b[k + 1], hi) - std::max(b[k], lo);
        if (overlap > 0.0) mass += wpow[k] * overlap;
    }
    return mass;
}

std::vector<double> abs_powers(const StepFunction& f, double p) {
    std::vector<double> wpow(f.pieces());
    for (std::size_t k = 0; k < f.pieces(); ++k) wpow[k] = pow_abs(f.values()[k], p);
    return wpow;
}

IntervalNormResult norm_at(const StepFunction& f, double p, double T) {
    return interval_pnorm(f, p, T);
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (values_.empty() || breakpoints_.size() < 2)
        fail(ErrorCode::EmptySupport, "step function needs at least one piece");
    if (breakpoints_.size() != values_.size() + 1)
        fail(ErrorCode::InvalidBreakpoints, "need exactly one more breakpoint than values");
    for (double b : breakpoints_)
        if (!std::isfinite(b)) fail(ErrorCode::InvalidBreakpoints, "breakpoints must be finite");
    for (double v : values_)
        if (!std::isfinite(v)) fail(ErrorCode::NonFiniteInput, "piece values must be finite");
    for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k)
        if (!(breakpoints_[k] < breakpoints_[k + 1]))
            fail(ErrorCode::InvalidBreakpoints, "breakpoints must be strictly increasing");

    // Canonical form: merge adjacent pieces of equal value.
    std::vector<double> bp{breakpoints_.front()};
    std::vector<double> vs;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!vs.empty() && vs.back() == values_[k]) {
            bp.back() = breakpoints_[k + 1];
        } else {
            vs.push_back(values_[k]);
            bp.push_back(breakpoints_[k + 1]);
        }
    }
    breakpoints_ = std::move(bp);
    values_ = std::move(vs);
}

IntervalNormResult interval_pnorm(const StepFunction& f, double p, double T) {
    if (!std::isfinite(p) || p <= 0.0)
        fail(ErrorCode::InvalidExponent, "exponent must be positive");
    if (!std::isfinite(T) || T <= 0.0)
        fail(ErrorCode::InvalidLength, "interval length must be positive");
    if (f.pieces() < 1) fail(ErrorCode::EmptySupport, "step function has no pieces");

    const auto& b = f.breakpoints();
    const std::vector<double> wpow = abs_powers(f, p);

    // Prefix integrals of |f|^p at breakpoints.
    std::vector<double> prefix(b.size(), 0.0);
    for (std::size_t k = 0; k < f.pieces(); ++k)
        prefix[k + 1] = prefix[k] + wpow[k] * (b[k + 1] - b[k]);

    auto prefix_at = [&](double t) -> double {
        if (t <= b.front()) return 0.0;
        if (t >= b.back()) return prefix.back();
        const std::size_t k =
            static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), t) - b.begin()) - 1;
        return prefix[k] + wpow[k] * (t - b[k]);
    };

    // The objective t -> integral_t^{t+T} |f|^p is piecewise linear with kinks
    // exactly where t or t+T crosses a breakpoint.
    std::vector<double> candidates;
    candidates.reserve(2 * b.size());
    for (double bk : b) {
        candidates.push_back(bk - T);
        candidates.push_back(bk);
    }
    std::sort(candidates.begin(), candidates.end());

    double best = -1.0;
    double arg = candidates.front();
    for (double t : candidates) {
        const double mass = prefix_at(t + T) - prefix_at(t);
        if (mass > best) {
            best = mass;
            arg = t;
        }
    }

    IntervalNormResult r;
    r.arg_left = arg;
    // Re-integrate the winning interval directly; this keeps the reported
    // value free of prefix-difference cancellation.
    r.value_pow_p = direct_integral(f, wpow, arg, arg + T) / T;
    r.value = proot(r.value_pow_p, p);
    return r;
}

StepFunction single_bump(double eps, double p) {
    if (!std::isfinite(eps) || eps <= 0.0)
        fail(ErrorCode::InvalidEpsilon, "bump width must be positive");
    if (!std::isfinite(p) || p <= 0.0)
        fail(ErrorCode::InvalidExponent, "exponent must be positive");
    const double height = std::pow(eps, -1.0 / p);
    return StepFunction({0.0, eps}, {height});
}

BumpTrain bump_train(double T, double S, double p) {
    if (!std::isfinite(p) || p <= 0.0)
        fail(ErrorCode::InvalidExponent, "exponent must be positive");
    if (!std::isfinite(T) || !std::isfinite(S) || T <= 0.0 || T >= S)
        fail(ErrorCode::NotACounterexampleCase, "need 0 < T < S");
    const double ratio = S / T;
    if (std::fabs(ratio - std::round(ratio)) <= 1e-12 * ratio)
        fail(ErrorCode::NotACounterexampleCase,
             "T divides S; the norms at these scales are ordered");

    const std::size_t d = static_cast<std::size_t>(std::floor(ratio));
    const double eps = (S - static_cast<double>(d) * T) / (2.0 * static_cast<double>(d + 1));
    const double height = std::pow(eps, -1.0 / p);

    std::vector<double> bp{0.0};
    std::vector<double> vs;
    for (std::size_t i = 0; i <= d; ++i) {
        const double start = static_cast<double>(i) * (T + eps);
        if (i > 0) {
            vs.push_back(0.0);  // gap of length T between consecutive bumps
            bp.push_back(start);
        }
        vs.push_back(height);
        bp.push_back(start + eps);
    }
    return BumpTrain{StepFunction(std::move(bp), std::move(vs)), d, eps};
}

BoundCheck check_reverse_counterexample(double T, double S, double p) {
    if (!std::isfinite(p) || p <= 0.0)
        fail(ErrorCode::InvalidExponent, "exponent must be positive");
    if (!std::isfinite(T) || !std::isfinite(S) || T <= 0.0 || T >= S)
        fail(ErrorCode::BadOrder, "need 0 < T < S");

    const double eps = std::min(T, S - T) / 2.0;
    const StepFunction g = single_bump(eps, p);
    const IntervalNormResult at_S = norm_at(g, p, S);
    const IntervalNormResult at_T = norm_at(g, p, T);

    BoundCheck c;
    c.name = "reverse_counterexample";
    c.tol = 0.0;
    c.lhs = at_S.value_pow_p;
    c.rhs = at_T.value_pow_p;
    const bool exact_S = std::fabs(at_S.value_pow_p * S - 1.0) <= 1e-12;
    const bool exact_T = std::fabs(at_T.value_pow_p * T - 1.0) <= 1e-12;
    c.passed = exact_S && exact_T && c.lhs < c.rhs;
    c.witness = {{"T", T}, {"S", S}, {"epsilon", eps}, {"p", p},
                 {"arg_left_S", at_S.arg_left}, {"arg_left_T", at_T.arg_left}};
    return c;
}

BoundCheck check_partition_inequality_cont(const StepFunction& f, double p,
                                           const std::vector<double>& parts) {
    require_exponent(p, 1.0);
    if (parts.empty()) fail(ErrorCode::InvalidPartition, "partition must be non-empty");
    double V = 0.0;
    for (double a : parts) {
        if (!std::isfinite(a) || a <= 0.0)
            fail(ErrorCode::InvalidPartition, "partition entries must be positive");
        V += a;
    }

    const IntervalNormResult whole = norm_at(f, p, V);
    double rhs = 0.0;
    for (double a : parts) rhs += (a / V) * norm_at(f, p, a).value_pow_p;

    BoundCheck c;
    c.name = "partition_inequality_cont";
    c.tol = kIneqTol;
    c.lhs = whole.value_pow_p;
    c.rhs = rhs;
    c.passed = leq_rel(c.lhs, c.rhs, kIneqTol);
    c.witness = {{"V", V}, {"parts", parts}, {"arg_left", whole.arg_left}, {"p", p}};
    return c;
}

BoundCheck check_multiple_ordering_cont(const StepFunction& f, double p, double V,
                                        std::size_t d) {
    require_exponent(p, 1.0);
    if (!std::isfinite(V) || V <= 0.0) fail(ErrorCode::InvalidLength, "V must be positive");
    if (d < 1) fail(ErrorCode::InvalidWindow, "multiplier must be >= 1");

    const IntervalNormResult coarse = norm_at(f, p, static_cast<double>(d) * V);
    const IntervalNormResult fine = norm_at(f, p, V);

    BoundCheck c;
    c.name = "divisor_ordering_cont";
    c.tol = kIneqTol;
    c.lhs = coarse.value;
    c.rhs = fine.value;
    c.passed = leq_rel(c.lhs, c.rhs, kIneqTol);
    c.witness = {{"V", V}, {"d", d}, {"arg_left_coarse", coarse.arg_left},
                 {"arg_left_fine", fine.arg_left}, {"p", p}};
    return c;
}

BoundCheck check_two_scale_bound_cont(const StepFunction& f, double p, double T, double S) {
    require_exponent(p, 1.0);
    if (!std::isfinite(T) || !std::isfinite(S) || T <= 0.0 || T >= S)
        fail(ErrorCode::BadOrder, "need 0 < T < S");

    const double d = std::floor(S / T);
    const double factor = (d + 1.0) * T / S;
    const IntervalNormResult at_S = norm_at(f, p, S);
    const IntervalNormResult at_T = norm_at(f, p, T);

    BoundCheck c;
    c.name = "two_scale_bound_cont";
    c.tol = kIneqTol;
    c.lhs = at_S.value_pow_p;
    c.rhs = factor * at_T.value_pow_p;
    c.passed = leq_rel(c.lhs, c.rhs, kIneqTol) && factor <= 2.0 + 1e-12;
    c.witness = {{"T", T}, {"S", S}, {"factor", factor},
                 {"arg_left_S", at_S.arg_left}, {"arg_left_T", at_T.arg_left}, {"p", p}};
    return c;
}

}  // namespace maxmean
