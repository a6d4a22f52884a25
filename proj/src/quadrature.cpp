#include "ginscale/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ginscale/errors.hpp"

namespace ginscale::quad {

namespace {

constexpr unsigned kMaxDepth = 15;
// Tighter relative targets make the bisection chase roundoff in the error estimate.
constexpr double kRelativeTarget = 1e-12;

}  // namespace

Result integrate(const std::function<double(double)>& f, double lower, double upper,
                 double abs_tol) {
    if (!(upper >= lower)) throw DomainError("integrate: upper < lower");
    if (upper == lower) return {};
    double error = 0.0;
    double l1 = 0.0;
    // Boost's tolerance is relative to the L1 norm of the piece, which keeps the absolute
    // error well below abs_tol for the O(1) integrands used here.
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, lower, upper, kMaxDepth, kRelativeTarget, &error, &l1);
    if (!std::isfinite(value)) {
        throw NumericError("integrate: non-finite value on [" + std::to_string(lower) + ", " +
                               std::to_string(upper) + "]",
                           std::numeric_limits<double>::infinity());
    }
    if (error > abs_tol && error > 1e-10 * l1) {
        throw NumericError("integrate: tolerance not reached (achieved " + std::to_string(error) +
                               ")",
                           error);
    }
    return {value, error, 1};
}

Result integrate_to_infinity(const std::function<double(double)>& f, double lower,
                             const TailOptions& options) {
    if (!(options.first_width > 0.0)) throw DomainError("integrate_to_infinity: first_width <= 0");
    Result total;
    double x = lower;
    double width = options.first_width;
    double previous = std::numeric_limits<double>::quiet_NaN();
    int growing = 0;

    for (int k = 0; k < options.max_pieces; ++k) {
        const double upper = x + width;
        if (!std::isfinite(upper)) break;
        const Result piece = integrate(f, x, upper, options.abs_tol * 1e-3);
        total.value += piece.value;
        total.error_estimate += piece.error_estimate;
        ++total.pieces;
        x = upper;
        width *= 2.0;

        const double current = std::abs(piece.value);
        if (k > 0) {
            const bool truncation_ok = !options.truncate_ok || options.truncate_ok(x);
            if (current == 0.0 && previous == 0.0 && total.value != 0.0 && truncation_ok) return total;
            if (current < previous) {
                growing = 0;
                const double ratio = current / previous;
                const double tail = current * ratio / (1.0 - ratio);
                if (tail < 0.1 * options.abs_tol && truncation_ok) {
                    total.error_estimate += tail;
                    return total;
                }
            } else if (current > 0.0 && ++growing > 64) {
                break;
            }
        }
        previous = current;
    }
    throw NumericError("integrate_to_infinity: tail contributions do not decay (last upper limit " +
                           std::to_string(x) + ")",
                       std::abs(previous));
}

}  // namespace ginscale::quad
