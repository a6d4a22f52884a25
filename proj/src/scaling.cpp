#include "ginscale/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ginscale/empirical.hpp"
#include "ginscale/errors.hpp"
#include "ginscale/pareto.hpp"
#include "ginscale/roots.hpp"

namespace ginscale {

double pareto_hirsch_solve(double b, double n_pub, double n_cit) {
    check_shape(b);
    if (!(n_pub >= 1.0)) throw DomainError("pareto_hirsch_solve: n_pub must be >= 1");
    if (!(n_cit >= 1.0)) throw DomainError("pareto_hirsch_solve: n_cit must be >= 1");
    const double scale = n_pub / ((b - 1.0) * n_cit);
    const auto residual = [&](double h) { return h / n_pub - std::pow(1.0 + h * scale, -b); };
    return bisect(residual, 0.0, n_pub);
}

double impscale_curve(double b, double r) {
    check_shape(b);
    if (!(r > 0.0 && r < 1.0)) throw DomainError("impscale_curve: r must lie in (0, 1)");
    // r^(-1/b) - 1 via expm1 keeps precision as r -> 1.
    return std::sqrt(r / ((b - 1.0) * std::expm1(-std::log(r) / b)));
}

ScalingPoint bound_check(const CitationRecord& record) {
    ScalingPoint p;
    p.id = record.id;
    p.h = h_index(record);
    p.n_pub = record.n_pub();
    p.n_cit = record.n_cit();
    if (p.n_pub == 0) return p;
    const double n_pub = static_cast<double>(p.n_pub);
    const double h = static_cast<double>(p.h);
    p.x_coord = h / n_pub;
    p.violates_obvious_bound = p.n_cit < p.h * p.h;
    p.violates_e_bound = static_cast<double>(p.n_cit) < std::numbers::e * h * h;
    if (p.n_cit > 0) {
        p.defined = true;
        p.y_coord = std::sqrt(static_cast<double>(p.n_cit)) / n_pub;
        p.lambda = n_pub * n_pub / static_cast<double>(p.n_cit);
    }
    return p;
}

double two_h_trend(std::span<const ScalingPoint> points) {
    std::vector<double> ratios;
    ratios.reserve(points.size());
    for (const auto& p : points) {
        if (p.h > 0) ratios.push_back(std::sqrt(static_cast<double>(p.n_cit)) / static_cast<double>(p.h));
    }
    if (ratios.empty()) throw DataError("two_h_trend: no points with h > 0");
    std::sort(ratios.begin(), ratios.end());
    const std::size_t n = ratios.size();
    return n % 2 == 1 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
}

Histogram Histogram::linear(double lo, double hi, std::size_t bins) {
    if (!(hi > lo) || bins == 0) throw DomainError("Histogram: need lo < hi and bins > 0");
    Histogram h;
    for (std::size_t k = 0; k <= bins; ++k) h.edges.push_back(lo + (hi - lo) * k / bins);
    h.counts.assign(bins, 0);
    return h;
}

Histogram Histogram::log_spaced(double lo, double hi, std::size_t bins) {
    if (!(lo > 0.0 && hi > lo) || bins == 0) throw DomainError("Histogram: need 0 < lo < hi");
    Histogram h;
    h.logarithmic = true;
    const double ratio = std::log(hi / lo);
    for (std::size_t k = 0; k <= bins; ++k) {
        h.edges.push_back(k == bins ? hi : lo * std::exp(ratio * k / bins));
    }
    h.counts.assign(bins, 0);
    return h;
}

void Histogram::add(double value) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), value);
    std::size_t bin = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
    ++counts[std::min(bin, counts.size() - 1)];
}

double Histogram::center(std::size_t bin) const {
    return logarithmic ? std::sqrt(edges[bin] * edges[bin + 1]) : 0.5 * (edges[bin] + edges[bin + 1]);
}

double Histogram::mode_center() const {
    const auto it = std::max_element(counts.begin(), counts.end());
    return center(static_cast<std::size_t>(it - counts.begin()));
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (const auto c : counts) t += c;
    return t;
}

DensityGrid::DensityGrid(std::size_t nx_, std::size_t ny_, double x_lo_, double x_hi_, double y_lo_,
                         double y_hi_)
    : nx(nx_), ny(ny_), x_lo(x_lo_), x_hi(x_hi_), y_lo(y_lo_), y_hi(y_hi_), counts(nx_ * ny_, 0) {
    if (nx == 0 || ny == 0 || !(x_hi > x_lo) || !(y_hi > y_lo)) {
        throw DomainError("DensityGrid: invalid shape or range");
    }
}

void DensityGrid::add(double x, double y) {
    if (!(x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi)) {
        ++out_of_range;
        return;
    }
    const auto ix = std::min(nx - 1, static_cast<std::size_t>((x - x_lo) / (x_hi - x_lo) * nx));
    const auto iy = std::min(ny - 1, static_cast<std::size_t>((y - y_lo) / (y_hi - y_lo) * ny));
    ++counts[iy * nx + ix];
}

CohortSummary summarize_cohort(std::span<const CitationRecord> records,
                               std::span<const FitResult> fits, const SummaryConfig& cfg) {
    if (records.size() != fits.size()) {
        throw DomainError("summarize_cohort: " + std::to_string(records.size()) + " records but " +
                          std::to_string(fits.size()) + " fit results");
    }
    if (records.empty()) throw DataError("summarize_cohort: empty cohort");

    CohortSummary s;
    s.b_histogram = Histogram::log_spaced(cfg.b_lo, cfg.b_hi, cfg.b_bins);
    s.gini_histogram = Histogram::linear(0.0, 1.0, cfg.gini_bins);
    s.density_grid = DensityGrid(cfg.grid_nx, cfg.grid_ny, 0.0, cfg.grid_x_hi, 0.0, cfg.grid_y_hi);
    s.record_counts.total = records.size();

    // Per-record work is independent; gini and the scaling point are computed in parallel
    // into slots, then reduced in input order.
    std::vector<ScalingPoint> points(records.size());
    std::vector<double> ginis(records.size(), 0.0);
    std::vector<char> selected(records.size(), 0);
    const auto count = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto& record = records[i];
        if (!cfg.preset.keeps(record) || !fits[i].accepted) continue;
        selected[i] = 1;
        points[i] = bound_check(record);
        ginis[i] = record.n_cit() > 0 ? gini_lorenz(record) : 0.0;
    }

    double b_sum = 0.0;
    std::size_t e_violations = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!cfg.preset.keeps(records[i])) {
            ++s.record_counts.filtered;
            continue;
        }
        if (fits[i].w > 0 && fits[i].rejection_reason != RejectionReason::too_few_points) {
            ++s.record_counts.fitted;
        }
        if (!selected[i]) {
            ++s.record_counts.rejected;
            continue;
        }
        ++s.record_counts.accepted;
        s.b_histogram.add(fits[i].b_hat);
        s.gini_histogram.add(ginis[i]);
        b_sum += fits[i].b_hat;
        const ScalingPoint& p = points[i];
        if (p.defined) s.density_grid.add(p.x_coord, p.y_coord);
        if (p.violates_e_bound) ++e_violations;
        if (p.violates_obvious_bound) ++s.obvious_bound_violations;
        s.points.push_back(p);
    }
    if (s.record_counts.accepted == 0) {
        throw DataError("summarize_cohort: no accepted records after filtering with preset '" +
                        cfg.preset.name + "'");
    }
    const double n_accepted = static_cast<double>(s.record_counts.accepted);
    s.b_mean = b_sum / n_accepted;
    s.b_mode = s.b_histogram.mode_center();
    s.gini_mode = s.gini_histogram.mode_center();
    s.e_bound_violation_rate = static_cast<double>(e_violations) / n_accepted;
    try {
        s.two_h_median = two_h_trend(s.points);
    } catch (const DataError&) {
        s.two_h_median = 0.0;
    }
    return s;
}

ViolationReport violation_report(std::span<const CitationRecord> records,
                                 const FilterPreset& preset) {
    ViolationReport report;
    report.preset = preset.name;
    for (const auto& record : records) {
        if (!preset.keeps(record)) continue;
        const ScalingPoint p = bound_check(record);
        ++report.n_records;
        if (p.violates_e_bound) ++report.e_bound_violations;
        if (p.violates_obvious_bound) ++report.obvious_bound_violations;
    }
    if (report.n_records > 0) {
        report.e_bound_rate =
            static_cast<double>(report.e_bound_violations) / static_cast<double>(report.n_records);
    }
    return report;
}

}  // namespace ginscale
