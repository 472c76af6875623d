/// @file roots.hpp
/// @brief Bracketed bisection.
#pragma once

#include "primephase/error.hpp"

#include <cmath>

namespace primephase {

struct RootResult
{
    double root;
    int iterations;
};

/// Root of f in [lo, hi] by bisection, stopping when the bracket is narrower
/// than x_tol. A zero at both ends (f vanishing identically) is reported as
/// a degenerate bracket; no sign change is a configuration error.
template <typename F>
RootResult bisect(const F& f, double lo, double hi, double x_tol = 1e-13, int max_iter = 400)
{
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (std::isnan(f_lo) || std::isnan(f_hi)) throw DomainError("bisect: function is NaN at bracket end");
    if (f_lo == 0.0 && f_hi == 0.0) throw ConfigError("bisect: degenerate bracket, f vanishes at both ends");
    if (f_lo == 0.0) return {lo, 0};
    if (f_hi == 0.0) return {hi, 0};
    if ((f_lo < 0) == (f_hi < 0)) throw ConfigError("bisect: no sign change in bracket");

    int it = 0;
    while (hi - lo > x_tol && it < max_iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        ++it;
        if (f_mid == 0.0) return {mid, it};
        if ((f_mid < 0) == (f_lo < 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), it};
}

} // namespace primephase
