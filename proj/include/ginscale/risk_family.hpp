#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace ginscale {

/// Distributions written in risk form, C(x) = exp(-H(x)) with H(x) = f(a x + b_shift).
///
/// `f` must be increasing with `f_inverse` its inverse, and both must be free of side
/// effects: the solvers call them from whichever thread evaluates the family.
/// b_shift is the additive shift of the argument (not the Pareto exponent).
struct RiskFamily {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> f_inverse;
    double b_shift = 0.0;
    double a = 1.0;

    double cumulative_risk(double x) const { return f(a * x + b_shift); }
    double tail_cdf(double x) const;
};

/// f(u) = b ln u, b_shift = 1:  C(x) = (1 + a x)^(-b).
RiskFamily tsallis_pareto_family(double b, double a = 1.0);

/// f(u) = u, b_shift = 0:  C(x) = exp(-a x).
RiskFamily exponential_family(double a = 1.0);

/// "tsallis-pareto" or "exponential"; `b` is ignored for the exponential family.
RiskFamily family_by_name(std::string_view name, double b, double a = 1.0);

/// Throws DomainError unless f(f_inverse(y)) == y within 1e-9 (relative) at every probe y.
void check_inverse_pair(const RiskFamily& family, std::span<const double> probes);

/// kappa(b_shift) = a <x> + b_shift = integral_{f(b_shift)}^inf f_inverse(H) e^-H dH.
double kappa(const RiskFamily& family);

/// Mean <x> = (kappa - b_shift) / a.
double family_mean(const RiskFamily& family);

/// Real h solving h/N_pub = exp(-f([kappa - b_shift] (h/N_pub) lambda + b_shift)).
double general_hirsch_solve(const RiskFamily& family, double n_pub, double n_cit);
double general_hirsch_solve(const RiskFamily& family, double kappa_value, double n_pub,
                            double n_cit);

/// sqrt(N_cit)/N_pub as a function of r = h/N_pub.
double general_scaling_curve(const RiskFamily& family, double r);
double general_scaling_curve(const RiskFamily& family, double kappa_value, double r);

/// lambda = N_pub^2 / N_cit.
double lambda_of(double n_pub, double n_cit);

}  // namespace ginscale
