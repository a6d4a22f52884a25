#include "ginscale/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ginscale/empirical.hpp"
#include "ginscale/errors.hpp"
#include "ginscale/kernels.hpp"

namespace ginscale {

void FitConfig::validate() const {
    if (!(b_min > 1.0 && b_min < b_max)) throw DomainError("FitConfig: need 1 < b_min < b_max");
    if (!(b_step > 0.0)) throw DomainError("FitConfig: b_step must be positive");
    if (!(s_cutoff >= 0.0)) throw DomainError("FitConfig: s_cutoff must be non-negative");
    if (b_max > 64.0) throw DomainError("FitConfig: b_max must not exceed 64");
}

std::size_t FitConfig::grid_size() const {
    // Tolerate rounding in (b_max - b_min) / b_step so that 8.0 stays on the default grid.
    return static_cast<std::size_t>(std::floor((b_max - b_min) / b_step + 1e-9)) + 1;
}

double FitConfig::grid_value(std::size_t k) const { return b_min + static_cast<double>(k) * b_step; }

std::string_view to_string(RejectionReason reason) {
    switch (reason) {
        case RejectionReason::none: return "none";
        case RejectionReason::loss_above_cutoff: return "loss_above_cutoff";
        case RejectionReason::b_at_grid_boundary: return "b_at_grid_boundary";
        case RejectionReason::too_few_points: return "too_few_points";
    }
    return "unknown";
}

RejectionReason rejection_reason_from_string(std::string_view name) {
    for (const auto r : {RejectionReason::none, RejectionReason::loss_above_cutoff,
                         RejectionReason::b_at_grid_boundary, RejectionReason::too_few_points}) {
        if (to_string(r) == name) return r;
    }
    throw DomainError("unknown rejection reason '" + std::string(name) + "'");
}

FitPoints fit_points(const CitationRecord& record) {
    if (record.citations.empty()) throw DataError("fit: record '" + record.id + "' is empty");
    const Count total = record.n_cit();
    if (total == 0) throw DataError("fit: record '" + record.id + "' has zero citations");
    const ValueCounts vc = distinct_counts(record);
    if (vc.values.size() == 1) {
        throw DataError("fit: record '" + record.id + "' is degenerate (all citations equal)");
    }
    FitPoints points;
    points.mean = static_cast<double>(total) / static_cast<double>(record.n_pub());
    const double n = static_cast<double>(record.n_pub());
    Count above = record.n_pub();
    for (std::size_t k = 0; k < vc.values.size(); ++k) {
        if (vc.values[k] >= 1 && above < record.n_pub()) {
            points.x.push_back(static_cast<double>(vc.values[k]));
            points.log_tail.push_back(std::log(static_cast<double>(above) / n));
        }
        above -= vc.counts[k];
    }
    return points;
}

double fit_loss(const FitPoints& points, double b) {
    const double a = 1.0 / (points.mean * (b - 1.0));
    double sum = 0.0;
    for (std::size_t i = 0; i < points.x.size(); ++i) {
        const double theory = -b * std::log1p(a * points.x[i]);
        const double rel = (points.log_tail[i] - theory) / points.log_tail[i];
        sum += rel * rel;
    }
    return sum / static_cast<double>(points.x.size());
}

double fit_loss(const CitationRecord& record, double b, const FitConfig& cfg) {
    if (!(b > 1.0)) throw DomainError("fit_loss: b must exceed 1");
    const FitPoints points = fit_points(record);
    if (points.x.size() < std::max<std::size_t>(cfg.min_points, 1)) {
        throw DataError("fit: record '" + record.id + "' has " + std::to_string(points.x.size()) +
                        " fit points, need " + std::to_string(cfg.min_points));
    }
    return fit_loss(points, b);
}

FitResult fit(const CitationRecord& record, const FitConfig& cfg) {
    cfg.validate();
    FitResult result;
    FitPoints points;
    try {
        points = fit_points(record);
    } catch (const DataError&) {
        return result;
    }
    result.w = points.x.size();
    if (result.w < std::max<std::size_t>(cfg.min_points, 1)) return result;

    const std::vector<double> losses = kernels::serial::loss_grid(points, cfg);
    std::size_t best = 0;
    for (std::size_t k = 1; k < losses.size(); ++k) {
        if (losses[k] < losses[best]) best = k;
    }
    result.b_hat = cfg.grid_value(best);
    result.a_hat = 1.0 / (points.mean * (result.b_hat - 1.0));
    result.s_min = losses[best];
    if (best == 0 || best + 1 == losses.size()) {
        result.rejection_reason = RejectionReason::b_at_grid_boundary;
    } else if (!(result.s_min <= cfg.s_cutoff)) {
        result.rejection_reason = RejectionReason::loss_above_cutoff;
    } else {
        result.rejection_reason = RejectionReason::none;
    }
    result.accepted = result.rejection_reason == RejectionReason::none;
    return result;
}

std::vector<FitResult> fit_cohort(std::span<const CitationRecord> records, const FitConfig& cfg) {
    cfg.validate();
    return kernels::omp::fit_all(records, cfg);
}

std::vector<CollapseBin> collapse_coordinates(const CitationRecord& record, int bins_per_decade) {
    if (bins_per_decade < 1) throw DomainError("collapse_coordinates: bins_per_decade must be >= 1");
    if (record.citations.empty()) throw DataError("collapse_coordinates: empty record");
    const Count total = record.n_cit();
    if (total == 0) throw DataError("collapse_coordinates: record has zero citations");
    const ValueCounts vc = distinct_counts(record);
    if (vc.values.size() == 1) throw DataError("collapse_coordinates: degenerate record");

    const double mean = record.mean();
    const double n = static_cast<double>(record.n_pub());
    // Integer counts k >= 1 map to k/<x> >= 1/<x>; the edge 0.5/<x> separates zeros.
    const double lo = 0.5 / mean;
    const double hi = (static_cast<double>(vc.values.back()) + 0.5) / mean;
    const double step = 1.0 / bins_per_decade;
    const auto n_log = static_cast<std::size_t>(std::ceil(std::log10(hi / lo) / step));

    std::vector<double> edges{0.0};
    for (std::size_t k = 0; k <= n_log; ++k) edges.push_back(lo * std::pow(10.0, step * k));
    std::vector<Count> counts(edges.size() - 1, 0);
    for (std::size_t k = 0; k < vc.values.size(); ++k) {
        const double v = static_cast<double>(vc.values[k]) / mean;
        std::size_t bin = 0;
        if (vc.values[k] > 0) {
            const auto idx = std::upper_bound(edges.begin(), edges.end(), v) - edges.begin() - 1;
            bin = std::min<std::size_t>(static_cast<std::size_t>(idx), counts.size() - 1);
        }
        counts[bin] += vc.counts[k];
    }

    std::vector<CollapseBin> out;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double lower = edges[k];
        const double upper = edges[k + 1];
        const double center = k == 0 ? 0.5 * upper : std::sqrt(lower * upper);
        out.push_back({lower, upper, center, static_cast<double>(counts[k]) / (n * (upper - lower))});
    }
    return out;
}

}  // namespace ginscale
