#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ginscale/citation_record.hpp"

namespace ginscale {

/// Grid-search settings for the Tsallis-Pareto exponent.
struct FitConfig {
    double b_min = 1.025;
    double b_max = 8.0;
    double b_step = 0.025;
    double s_cutoff = 0.2;
    std::size_t min_points = 3;

    /// Throws DomainError unless 1 < b_min < b_max, b_step > 0 and s_cutoff >= 0.
    void validate() const;
    std::size_t grid_size() const;
    /// b_min + k b_step, computed from the integer index to avoid drift.
    double grid_value(std::size_t k) const;
};

enum class RejectionReason { none, loss_above_cutoff, b_at_grid_boundary, too_few_points };

std::string_view to_string(RejectionReason reason);
/// Inverse of to_string; throws DomainError for unknown names.
RejectionReason rejection_reason_from_string(std::string_view name);

struct FitResult {
    double b_hat = 0.0;
    double a_hat = 0.0;
    double s_min = 0.0;
    std::size_t w = 0;
    bool accepted = false;
    RejectionReason rejection_reason = RejectionReason::too_few_points;
};

/// Fit points of one record: distinct observed values x >= 1 whose empirical tail
/// fraction C(x) is strictly below 1, with ln C(x) precomputed.
struct FitPoints {
    double mean = 0.0;
    std::vector<double> x;
    std::vector<double> log_tail;
};

/// Throws DataError when the record is empty, has zero citations, or all entries are equal.
FitPoints fit_points(const CitationRecord& record);

/// s-loss at exponent b with a tied to the record mean, a = 1/(<x>(b-1)).
double fit_loss(const FitPoints& points, double b);

/// Throws DataError (degenerate record or fewer than cfg.min_points points).
double fit_loss(const CitationRecord& record, double b, const FitConfig& cfg);

/// Grid search over cfg's b values; data problems become rejected results.
FitResult fit(const CitationRecord& record, const FitConfig& cfg);

/// fit() over every record, parallel across records, results in input order.
std::vector<FitResult> fit_cohort(std::span<const CitationRecord> records, const FitConfig& cfg);

/// One bin of the rescaled-density histogram used for the data-collapse plot.
struct CollapseBin {
    double lower;
    double upper;
    double center;
    double density;
};

/// Normalized histogram of x / <x>. The first bin [0, 0.5/<x>) holds zero-citation
/// papers; the rest are logarithmic with `bins_per_decade` bins per decade.
std::vector<CollapseBin> collapse_coordinates(const CitationRecord& record,
                                              int bins_per_decade = 10);

}  // namespace ginscale
