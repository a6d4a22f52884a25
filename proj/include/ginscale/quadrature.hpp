#pragma once

#include <functional>

namespace ginscale::quad {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int pieces = 0;
};

/// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.
Result integrate(const std::function<double(double)>& f, double lower, double upper,
                 double abs_tol = 1e-10);

struct TailOptions {
    double abs_tol = 1e-10;
    /// Width of the first piece; subsequent pieces double in width.
    double first_width = 1.0;
    /// Extra truncation predicate on the current upper limit, e.g. "C(x) < 1e-12".
    /// Integration only stops once it holds and the remaining tail is below abs_tol.
    std::function<bool(double)> truncate_ok;
    int max_pieces = 1500;
};

/// Integral over [lower, inf) truncated at an upper limit X_max chosen on the fly:
/// pieces [x_k, x_k + w 2^k] are added until the geometric extrapolation of the
/// remaining tail drops below abs_tol and `truncate_ok(X_max)` holds.
/// Throws NumericError when the piece contributions do not decay (divergent integrand).
Result integrate_to_infinity(const std::function<double(double)>& f, double lower,
                             const TailOptions& options);

}  // namespace ginscale::quad
