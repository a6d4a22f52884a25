#pragma once

#include <utility>
#include <vector>

#include "ginscale/citation_record.hpp"

namespace ginscale {

struct LorenzPoint {
    double threshold;  ///< citation threshold x
    double c;          ///< fraction of publications with >= x citations
    double f;          ///< fraction of citations held by those publications
};

/// Tail-parameterized Lorenz curve: starts at (1, 1) and ends at (0, 0).
struct LorenzCurve {
    std::vector<LorenzPoint> points;
};

struct TailFractions {
    double c;
    double f;
};

/// Largest h such that h publications have at least h citations each.
Count h_index(const CitationRecord& record);

/// Population Gini: sum_ij |x_i - x_j| / (2 N_pub^2 <x>).  Throws DataError if N_cit = 0.
double gini_pairwise(const CitationRecord& record);

/// Twice the area between the Lorenz curve and the diagonal (trapezoid rule on the
/// piecewise-linear curve). Throws DataError if N_cit = 0.
double gini_lorenz(const CitationRecord& record);

/// (#{x_i >= x} / N_pub, sum_{x_i >= x} x_i / N_cit).
TailFractions empirical_tail(const CitationRecord& record, double x);

/// One point per distinct citation value (tail at and above it) plus the terminal (0, 0).
LorenzCurve lorenz_curve(const CitationRecord& record);

/// (threshold, F - C) at each point of the Lorenz curve.
std::vector<std::pair<double, double>> empirical_gintropy(const CitationRecord& record);

}  // namespace ginscale
