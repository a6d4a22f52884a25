#pragma once

#include <cstddef>
#include <random>
#include <vector>

namespace ginscale {

/// Tsallis-Pareto (Lomax) law  rho(x) = a b (1 + a x)^(-b-1)  on x >= 0.
///
/// `b` is the dimensionless shape exponent, `a` the rate in 1/citations.
/// Only finite-mean laws are representable: 1 < b <= kMaxShape, a > 0.
class ParetoModel {
public:
    static constexpr double kMaxShape = 64.0;

    /// Throws DomainError when (b, a) violates the invariants.
    ParetoModel(double b, double a);

    /// Model with shape b whose mean is `mean`, i.e. a = 1 / (mean (b - 1)).
    static ParetoModel from_mean(double b, double mean);

    double b() const noexcept { return b_; }
    double a() const noexcept { return a_; }

    friend bool operator==(const ParetoModel&, const ParetoModel&) = default;

private:
    double b_;
    double a_;
};

/// Throws DomainError unless 1 < b <= ParetoModel::kMaxShape.
void check_shape(double b);

double pdf(const ParetoModel& m, double x);

/// C(x) = (1 + a x)^(-b): fraction of publications with at least x citations.
double tail_cdf(const ParetoModel& m, double x);

/// F(x) = (1 + a b x)(1 + a x)^(-b): fraction of all citations held above x.
double wealth_tail(const ParetoModel& m, double x);

/// sigma(x) = F(x) - C(x) = a b x (1 + a x)^(-b).
double gintropy(const ParetoModel& m, double x);

double mean(const ParetoModel& m);

/// G = b / (2b - 1).
double gini_closed_form(double b);

/// G = (1/<x>) * integral of C(1 - C) dx, by adaptive quadrature.
double gini_numeric(const ParetoModel& m);

/// Integral of sigma dC along the Lorenz curve, by quadrature; equals G/2.
double gintropy_area(const ParetoModel& m);

/// sigma(<x>) = (b/(b-1))^(1-b).
double max_gintropy(double b);

/// Upper bound on h^2 / N_cit: (1 + 1/(b-1))^(-b); tends to 1/e as b grows.
double hirsch_bound_factor(double b);

/// Inverse transform x = (u^(-1/b) - 1) / a for u in (0, 1].
double quantile_from_tail(const ParetoModel& m, double u);

/// Uniform draw on (0, 1] built from the top 53 bits of one engine output,
/// so streams are identical across standard library implementations.
double uniform_open_zero(std::mt19937_64& rng);

std::vector<double> sample(const ParetoModel& m, std::mt19937_64& rng, std::size_t n);

}  // namespace ginscale
