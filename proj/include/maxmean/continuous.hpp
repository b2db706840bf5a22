#pragma once

#include <cstddef>
#include <vector>

#include "maxmean/bound_check.hpp"
#include "maxmean/error.hpp"

namespace maxmean {

// Compactly supported piecewise-constant function on the real line:
// value values[k] on (breakpoints[k], breakpoints[k+1]), 0 outside.
// Construction canonicalizes: adjacent pieces with equal values are merged.
class StepFunction {
public:
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t pieces() const { return values_.size(); }
    double support_left() const { return breakpoints_.front(); }
    double support_right() const { return breakpoints_.back(); }
    double support_length() const { return breakpoints_.back() - breakpoints_.front(); }

private:
    std::vector<double> breakpoints_;  // strictly increasing, size pieces()+1
    std::vector<double> values_;
};

// Maximal interval p-mean and a witness interval (arg_left, arg_left+T).
struct IntervalNormResult {
    double value = 0.0;
    double value_pow_p = 0.0;
    double arg_left = 0.0;
};

// sup over t of ((1/T) integral_t^{t+T} |f|^p)^(1/p), computed exactly: the
// objective is piecewise linear in t with kinks only where t or t+T crosses a
// breakpoint, so the sup is attained on {b_k} union {b_k - T}. Smallest
// maximizing candidate wins ties; the winning interval is re-integrated
// directly for the reported value.
IntervalNormResult interval_pnorm(const StepFunction& f, double p, double T);

// Rectangle of height eps^(-1/p) on (0, eps): unit L^p mass by construction.
StepFunction single_bump(double eps, double p);

struct BumpTrain {
    StepFunction f;
    std::size_t d = 0;  // floor(S/T)
    double epsilon = 0.0;
};

// d+1 unit-mass bumps spaced T+eps apart, with eps = (S - dT)/(2(d+1)).
// Guarantees value_pow_p = 1/T at scale T and (d+1)/S at scale S, with
// 1/T < (d+1)/S. Rejects T >= S and integer S/T.
BumpTrain bump_train(double T, double S, double p);

// Single bump: value_pow_p(S) = 1/S < 1/T = value_pow_p(T).
BoundCheck check_reverse_counterexample(double T, double S, double p);

// value_pow_p(V) <= sum_l (alpha_l/V) * value_pow_p(alpha_l), V = sum alpha_l.
BoundCheck check_partition_inequality_cont(const StepFunction& f, double p,
                                           const std::vector<double>& parts);

// interval_pnorm at d*V <= interval_pnorm at V.
BoundCheck check_multiple_ordering_cont(const StepFunction& f, double p, double V,
                                        std::size_t d);

// value_pow_p(S) <= c * value_pow_p(T) with c = (floor(S/T)+1)*T/S <= 2.
BoundCheck check_two_scale_bound_cont(const StepFunction& f, double p, double T, double S);

}  // namespace maxmean
