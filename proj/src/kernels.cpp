#include "ginscale/kernels.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace ginscale::kernels {

namespace {

using u128 = UInt128;

// Contribution of row i: count_i * sum_j count_j |v_i - v_j|.
u128 pair_row(const ValueCounts& vc, std::size_t i) {
    u128 row = 0;
    const Count vi = vc.values[i];
    for (std::size_t j = 0; j < vc.values.size(); ++j) {
        const Count vj = vc.values[j];
        const Count diff = vi > vj ? vi - vj : vj - vi;
        row += static_cast<u128>(vc.counts[j]) * diff;
    }
    return row * vc.counts[i];
}

// Parallel regions below write into per-index slots and reduce serially afterwards,
// which keeps results independent of the thread schedule.
constexpr std::size_t kParallelThreshold = 64;

}  // namespace

namespace serial {

u128 pairwise_abs_diff_sum(const ValueCounts& values) {
    u128 total = 0;
    for (std::size_t i = 0; i < values.values.size(); ++i) total += pair_row(values, i);
    return total;
}

std::vector<double> loss_grid(const FitPoints& points, const FitConfig& cfg) {
    std::vector<double> out(cfg.grid_size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = fit_loss(points, cfg.grid_value(k));
    return out;
}

std::vector<FitResult> fit_all(std::span<const CitationRecord> records, const FitConfig& cfg) {
    std::vector<FitResult> out;
    out.reserve(records.size());
    for (const auto& record : records) out.push_back(fit(record, cfg));
    return out;
}

}  // namespace serial

namespace omp {

u128 pairwise_abs_diff_sum(const ValueCounts& values) {
    const std::size_t n = values.values.size();
    if (n < kParallelThreshold) return serial::pairwise_abs_diff_sum(values);
    std::vector<u128> rows(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) rows[i] = pair_row(values, static_cast<std::size_t>(i));
    u128 total = 0;
    for (const u128 r : rows) total += r;
    return total;
}

std::vector<double> loss_grid(const FitPoints& points, const FitConfig& cfg) {
    std::vector<double> out(cfg.grid_size());
    const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        out[k] = fit_loss(points, cfg.grid_value(static_cast<std::size_t>(k)));
    }
    return out;
}

std::vector<FitResult> fit_all(std::span<const CitationRecord> records, const FitConfig& cfg) {
    std::vector<FitResult> out(records.size());
    const auto count = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = fit(records[i], cfg);
    return out;
}

}  // namespace omp

int configured_threads() {
    const char* env = std::getenv("GINSCALE_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    try {
        const int n = std::stoi(env);
        return n > 0 ? n : 0;
    } catch (...) {
        return 0;
    }
}

}  // namespace ginscale::kernels
