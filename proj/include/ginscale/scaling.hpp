#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ginscale/citation_record.hpp"
#include "ginscale/dataset_io.hpp"
#include "ginscale/fitting.hpp"

namespace ginscale {

/// Measured position of one record in the (h/N_pub, sqrt(N_cit)/N_pub) plane.
struct ScalingPoint {
    std::string id;
    Count h = 0;
    std::size_t n_pub = 0;
    Count n_cit = 0;
    double x_coord = 0.0;  ///< h / N_pub
    double y_coord = 0.0;  ///< sqrt(N_cit) / N_pub
    double lambda = 0.0;   ///< N_pub^2 / N_cit
    bool defined = false;  ///< false when N_cit = 0 (y_coord and lambda meaningless)
    bool violates_e_bound = false;        ///< N_cit < e h^2
    bool violates_obvious_bound = false;  ///< N_cit < h^2; impossible for integer records
};

/// Real h solving h/N_pub = (1 + h N_pub / ((b-1) N_cit))^(-b).
double pareto_hirsch_solve(double b, double n_pub, double n_cit);

/// sqrt(N_cit)/N_pub = sqrt(r / ((b-1)(r^(-1/b) - 1))) for r = h/N_pub in (0, 1).
double impscale_curve(double b, double r);

/// Uses exact integer h and N_cit.
ScalingPoint bound_check(const CitationRecord& record);

/// Median of sqrt(N_cit)/h over points with h > 0. Throws DataError if there are none.
double two_h_trend(std::span<const ScalingPoint> points);

struct Histogram {
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
    bool logarithmic = false;

    static Histogram linear(double lo, double hi, std::size_t bins);
    static Histogram log_spaced(double lo, double hi, std::size_t bins);

    /// Values outside [lo, hi] are clamped into the end bins.
    void add(double value);
    double center(std::size_t bin) const;
    /// Center of the most populated bin (lowest bin on ties).
    double mode_center() const;
    std::uint64_t total() const;
};

struct DensityGrid {
    std::size_t nx = 200;
    std::size_t ny = 200;
    double x_lo = 0.0, x_hi = 1.0;
    double y_lo = 0.0, y_hi = 3.0;
    std::vector<std::uint64_t> counts;  ///< row-major, index = iy * nx + ix
    std::uint64_t out_of_range = 0;

    DensityGrid() = default;
    DensityGrid(std::size_t nx, std::size_t ny, double x_lo, double x_hi, double y_lo, double y_hi);
    void add(double x, double y);
    std::uint64_t at(std::size_t ix, std::size_t iy) const { return counts[iy * nx + ix]; }
};

struct SummaryConfig {
    FilterPreset preset = FilterPreset::none();
    double b_lo = 1.0;
    double b_hi = 8.0;
    std::size_t b_bins = 40;
    std::size_t gini_bins = 50;
    std::size_t grid_nx = 200;
    std::size_t grid_ny = 200;
    double grid_x_hi = 1.0;
    double grid_y_hi = 3.0;
};

struct RecordCounts {
    std::size_t total = 0;
    std::size_t filtered = 0;  ///< dropped by the preset
    std::size_t fitted = 0;    ///< passed the preset and produced a loss value
    std::size_t accepted = 0;
    std::size_t rejected = 0;  ///< passed the preset but the fit was rejected
};

struct CohortSummary {
    Histogram b_histogram;
    Histogram gini_histogram;
    DensityGrid density_grid;
    double b_mode = 0.0;
    double b_mean = 0.0;
    double gini_mode = 0.0;
    double e_bound_violation_rate = 0.0;
    std::size_t obvious_bound_violations = 0;
    double two_h_median = 0.0;
    RecordCounts record_counts;
    std::vector<ScalingPoint> points;  ///< accepted records, input order
};

/// `fits[i]` belongs to `records[i]`. Histograms, grid and rates cover accepted records
/// that pass the preset. Throws DataError when none remain.
CohortSummary summarize_cohort(std::span<const CitationRecord> records,
                               std::span<const FitResult> fits, const SummaryConfig& cfg);

struct ViolationReport {
    std::string preset;
    std::size_t n_records = 0;
    std::size_t e_bound_violations = 0;
    std::size_t obvious_bound_violations = 0;
    double e_bound_rate = 0.0;
};

/// e-bound and obvious-bound violation counts among all records passing `preset`.
ViolationReport violation_report(std::span<const CitationRecord> records,
                                 const FilterPreset& preset);

}  // namespace ginscale
