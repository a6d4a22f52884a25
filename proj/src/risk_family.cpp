#include "ginscale/risk_family.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ginscale/errors.hpp"
#include "ginscale/quadrature.hpp"
#include "ginscale/roots.hpp"

namespace ginscale {

double RiskFamily::tail_cdf(double x) const { return std::exp(-cumulative_risk(x)); }

RiskFamily tsallis_pareto_family(double b, double a) {
    if (!(b > 0.0)) throw DomainError("tsallis_pareto_family: b must be positive");
    if (!(a > 0.0)) throw DomainError("tsallis_pareto_family: a must be positive");
    RiskFamily family;
    family.name = "tsallis-pareto";
    family.f = [b](double u) { return b * std::log(u); };
    family.f_inverse = [b](double h) { return std::exp(h / b); };
    family.b_shift = 1.0;
    family.a = a;
    return family;
}

RiskFamily exponential_family(double a) {
    if (!(a > 0.0)) throw DomainError("exponential_family: a must be positive");
    RiskFamily family;
    family.name = "exponential";
    family.f = [](double u) { return u; };
    family.f_inverse = [](double h) { return h; };
    family.b_shift = 0.0;
    family.a = a;
    return family;
}

RiskFamily family_by_name(std::string_view name, double b, double a) {
    if (name == "tsallis-pareto") return tsallis_pareto_family(b, a);
    if (name == "exponential") return exponential_family(a);
    throw DomainError("unknown risk family '" + std::string(name) + "'");
}

void check_inverse_pair(const RiskFamily& family, std::span<const double> probes) {
    for (const double y : probes) {
        const double back = family.f(family.f_inverse(y));
        if (!(std::abs(back - y) <= 1e-9 * std::max(1.0, std::abs(y)))) {
            throw DomainError("risk family '" + family.name + "': f(f_inverse(" +
                              std::to_string(y) + ")) = " + std::to_string(back));
        }
    }
}

double kappa(const RiskFamily& family) {
    const double lower = family.f(family.b_shift);
    if (!std::isfinite(lower)) throw DomainError("kappa: f(b_shift) is not finite");
    quad::TailOptions options;
    options.abs_tol = 1e-11;
    options.first_width = 1.0;
    options.truncate_ok = [](double h) { return std::exp(-h) < 1e-12; };
    const auto integrand = [&family](double h) { return family.f_inverse(h) * std::exp(-h); };
    try {
        return quad::integrate_to_infinity(integrand, lower, options).value;
    } catch (const NumericError& e) {
        throw NumericError("kappa: integral diverges for family '" + family.name + "' (" +
                               e.what() + ")",
                           e.achieved_tolerance());
    }
}

double family_mean(const RiskFamily& family) { return (kappa(family) - family.b_shift) / family.a; }

double general_hirsch_solve(const RiskFamily& family, double n_pub, double n_cit) {
    return general_hirsch_solve(family, kappa(family), n_pub, n_cit);
}

double general_hirsch_solve(const RiskFamily& family, double kappa_value, double n_pub,
                            double n_cit) {
    if (!(n_pub >= 1.0)) throw DomainError("general_hirsch_solve: n_pub must be >= 1");
    if (!(n_cit >= 1.0)) throw DomainError("general_hirsch_solve: n_cit must be >= 1");
    const double lambda = lambda_of(n_pub, n_cit);
    const double slope = kappa_value - family.b_shift;
    const auto residual = [&](double h) {
        const double r = h / n_pub;
        return r - std::exp(-family.f(slope * r * lambda + family.b_shift));
    };
    try {
        return bisect(residual, 0.0, n_pub);
    } catch (const NumericError& e) {
        throw NumericError("general_hirsch_solve: family '" + family.name +
                               "' has no crossing in (0, N_pub]: " + e.what(),
                           e.achieved_tolerance());
    }
}

double general_scaling_curve(const RiskFamily& family, double r) {
    return general_scaling_curve(family, kappa(family), r);
}

double general_scaling_curve(const RiskFamily& family, double kappa_value, double r) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("general_scaling_curve: r must lie in (0, 1)");
    const double denominator = family.f_inverse(-std::log(r)) - family.b_shift;
    if (!(denominator > 0.0)) {
        throw DomainError("general_scaling_curve: f_inverse(-ln r) <= b_shift at r = " +
                          std::to_string(r));
    }
    return std::sqrt((kappa_value - family.b_shift) * r / denominator);
}

double lambda_of(double n_pub, double n_cit) {
    if (!(n_cit > 0.0)) throw DomainError("lambda_of: n_cit must be positive");
    return n_pub * n_pub / n_cit;
}

}  // namespace ginscale
