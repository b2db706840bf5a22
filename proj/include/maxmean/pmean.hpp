#pragma once

#include <algorithm>
#include <cmath>

namespace maxmean {

// |v|^p with fast paths for the common exponents.
inline double pow_abs(double v, double p) {
    double a = std::fabs(v);
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    return std::pow(a, p);
}

// p-th root of a nonnegative pre-root mean.
inline double proot(double v, double p) {
    if (p == 1.0) return v;
    if (p == 2.0) return std::sqrt(v);
    return std::pow(v, 1.0 / p);
}

// lhs <= rhs up to a relative tolerance anchored at max(1, |rhs|).
inline bool leq_rel(double lhs, double rhs, double tol) {
    return lhs <= rhs + tol * std::max(1.0, std::fabs(rhs));
}

// a strictly exceeds b beyond a scale-free relative tolerance.
inline bool exceeds_rel(double a, double b, double tol) {
    return a > b + tol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace maxmean
