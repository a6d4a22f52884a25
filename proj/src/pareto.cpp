#include "ginscale/pareto.hpp"

#include <cmath>
#include <string>

#include "ginscale/errors.hpp"
#include "ginscale/quadrature.hpp"

namespace ginscale {

namespace {

void check_x(double x, const char* op) {
    if (!(x >= 0.0)) throw DomainError(std::string(op) + ": x must be >= 0");
}

// Upper limit where both C and F are below 1e-12. Truncating the Gini integral at
// C < 1e-12 alone leaves a tail of order F(X_max), which is ~1e-2 at b = 1.2.
bool tails_negligible(const ParetoModel& m, double x) {
    return tail_cdf(m, x) < 1e-12 && wealth_tail(m, x) < 1e-12;
}

quad::TailOptions tail_options(const ParetoModel& m) {
    quad::TailOptions options;
    options.abs_tol = 1e-10;
    options.first_width = 1.0 / m.a();
    options.truncate_ok = [m](double x) { return tails_negligible(m, x); };
    return options;
}

}  // namespace

void check_shape(double b) {
    if (!(b > 1.0 && b <= ParetoModel::kMaxShape)) {
        throw DomainError("shape exponent b must lie in (1, 64], got " + std::to_string(b));
    }
}

ParetoModel::ParetoModel(double b, double a) : b_(b), a_(a) {
    check_shape(b);
    if (!(a > 0.0 && std::isfinite(a))) {
        throw DomainError("rate a must be positive and finite, got " + std::to_string(a));
    }
}

ParetoModel ParetoModel::from_mean(double b, double mean) {
    check_shape(b);
    if (!(mean > 0.0 && std::isfinite(mean))) throw DomainError("mean must be positive");
    return ParetoModel(b, 1.0 / (mean * (b - 1.0)));
}

double pdf(const ParetoModel& m, double x) {
    check_x(x, "pdf");
    return m.a() * m.b() * std::pow(1.0 + m.a() * x, -m.b() - 1.0);
}

double tail_cdf(const ParetoModel& m, double x) {
    check_x(x, "tail_cdf");
    return std::pow(1.0 + m.a() * x, -m.b());
}

double wealth_tail(const ParetoModel& m, double x) {
    check_x(x, "wealth_tail");
    return (1.0 + m.a() * m.b() * x) * std::pow(1.0 + m.a() * x, -m.b());
}

double gintropy(const ParetoModel& m, double x) {
    check_x(x, "gintropy");
    return m.a() * m.b() * x * std::pow(1.0 + m.a() * x, -m.b());
}

double mean(const ParetoModel& m) { return 1.0 / (m.a() * (m.b() - 1.0)); }

double gini_closed_form(double b) {
    check_shape(b);
    return b / (2.0 * b - 1.0);
}

double gini_numeric(const ParetoModel& m) {
    const auto integrand = [&m](double x) {
        const double c = std::pow(1.0 + m.a() * x, -m.b());
        return c * (1.0 - c);
    };
    return quad::integrate_to_infinity(integrand, 0.0, tail_options(m)).value / mean(m);
}

double gintropy_area(const ParetoModel& m) {
    // dC = -rho dx, and the Lorenz parameterization runs from C = 1 (x = 0) to C = 0.
    const auto integrand = [&m](double x) {
        const double base = 1.0 + m.a() * x;
        const double c = std::pow(base, -m.b());
        return m.a() * m.b() * x * c * (m.a() * m.b() * c / base);
    };
    return quad::integrate_to_infinity(integrand, 0.0, tail_options(m)).value;
}

double max_gintropy(double b) {
    check_shape(b);
    return std::pow(b / (b - 1.0), 1.0 - b);
}

double hirsch_bound_factor(double b) {
    check_shape(b);
    return std::pow(1.0 + 1.0 / (b - 1.0), -b);
}

double quantile_from_tail(const ParetoModel& m, double u) {
    if (!(u > 0.0 && u <= 1.0)) throw DomainError("quantile_from_tail: u must lie in (0, 1]");
    return std::expm1(-std::log(u) / m.b()) / m.a();
}

double uniform_open_zero(std::mt19937_64& rng) {
    constexpr double kScale = 0x1.0p-53;
    return static_cast<double>((rng() >> 11) + 1) * kScale;
}

std::vector<double> sample(const ParetoModel& m, std::mt19937_64& rng, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(quantile_from_tail(m, uniform_open_zero(rng)));
    return out;
}

}  // namespace ginscale
