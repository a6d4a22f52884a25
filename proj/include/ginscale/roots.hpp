#pragma once

#include <cmath>
#include <string>

#include "ginscale/errors.hpp"

namespace ginscale {

struct BisectionOptions {
    int max_iterations = 200;
    double relative_tolerance = 1e-12;
};

/// Root of an increasing-crossing function g on [lo, hi] with g(lo) < 0 <= g(hi).
/// Throws NumericError when the bracket does not straddle zero.
template <class Fn>
double bisect(Fn&& g, double lo, double hi, const BisectionOptions& options = {}) {
    double g_lo = g(lo);
    const double g_hi = g(hi);
    if (!(g_lo < 0.0 && g_hi >= 0.0)) {
        throw NumericError("bisect: no sign change on [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "] (g(lo)=" + std::to_string(g_lo) +
                               ", g(hi)=" + std::to_string(g_hi) + ")",
                           std::abs(g_hi));
    }
    if (g_hi == 0.0) return hi;
    for (int i = 0; i < options.max_iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double g_mid = g(mid);
        if (g_mid == 0.0) return mid;
        if (g_mid < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= options.relative_tolerance * std::abs(hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace ginscale
