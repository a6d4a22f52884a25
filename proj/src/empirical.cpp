#include "ginscale/empirical.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "ginscale/errors.hpp"
#include "ginscale/kernels.hpp"

namespace ginscale {

Count CitationRecord::n_cit() const {
    Count total = 0;
    for (const Count c : citations) {
        if (c > std::numeric_limits<Count>::max() - total) {
            throw DataError("record '" + id + "': citation total overflows");
        }
        total += c;
    }
    return total;
}

double CitationRecord::mean() const {
    if (citations.empty()) throw DataError("record '" + id + "' has no publications");
    return static_cast<double>(n_cit()) / static_cast<double>(n_pub());
}

ValueCounts distinct_counts(const CitationRecord& record) {
    std::vector<Count> sorted = record.citations;
    std::sort(sorted.begin(), sorted.end());
    ValueCounts out;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        out.values.push_back(sorted[i]);
        out.counts.push_back(j - i);
        i = j;
    }
    return out;
}

Count h_index(const CitationRecord& record) {
    std::vector<Count> sorted = record.citations;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    Count h = 0;
    while (h < sorted.size() && sorted[h] >= h + 1) ++h;
    return h;
}

namespace {

Count positive_total(const CitationRecord& record, const char* what) {
    if (record.citations.empty()) throw DataError(std::string(what) + ": empty record");
    const Count total = record.n_cit();
    if (total == 0) {
        throw DataError(std::string(what) + ": undefined for record '" + record.id +
                        "' with zero citations");
    }
    return total;
}

}  // namespace

double gini_pairwise(const CitationRecord& record) {
    const Count total = positive_total(record, "gini_pairwise");
    const ValueCounts vc = distinct_counts(record);
    const kernels::UInt128 sum = kernels::omp::pairwise_abs_diff_sum(vc);
    // sum / (2 N^2 <x>) = sum / (2 N N_cit)
    const long double denominator =
        2.0L * static_cast<long double>(record.n_pub()) * static_cast<long double>(total);
    return static_cast<double>(static_cast<long double>(sum) / denominator);
}

double gini_lorenz(const CitationRecord& record) {
    positive_total(record, "gini_lorenz");
    const LorenzCurve curve = lorenz_curve(record);
    // G = 2 * integral (f - c) dc, with c running from 0 to 1.
    double area = 0.0;
    for (std::size_t k = curve.points.size() - 1; k > 0; --k) {
        const LorenzPoint& lo = curve.points[k];
        const LorenzPoint& hi = curve.points[k - 1];
        area += 0.5 * ((lo.f - lo.c) + (hi.f - hi.c)) * (hi.c - lo.c);
    }
    return 2.0 * area;
}

TailFractions empirical_tail(const CitationRecord& record, double x) {
    if (!(x >= 0.0)) throw DomainError("empirical_tail: x must be >= 0");
    if (record.citations.empty()) throw DataError("empirical_tail: empty record");
    const Count total = record.n_cit();
    if (total == 0) throw DataError("empirical_tail: wealth fraction undefined with zero citations");
    std::size_t above = 0;
    Count wealth = 0;
    for (const Count c : record.citations) {
        if (static_cast<double>(c) >= x) {
            ++above;
            wealth += c;
        }
    }
    return {static_cast<double>(above) / static_cast<double>(record.n_pub()),
            static_cast<double>(wealth) / static_cast<double>(total)};
}

LorenzCurve lorenz_curve(const CitationRecord& record) {
    const Count total = positive_total(record, "lorenz_curve");
    const ValueCounts vc = distinct_counts(record);
    const double n = static_cast<double>(record.n_pub());
    const double wealth = static_cast<double>(total);

    LorenzCurve curve;
    curve.points.reserve(vc.values.size() + 1);
    Count above = record.n_pub();
    Count held = total;
    for (std::size_t k = 0; k < vc.values.size(); ++k) {
        curve.points.push_back({static_cast<double>(vc.values[k]), static_cast<double>(above) / n,
                                static_cast<double>(held) / wealth});
        above -= vc.counts[k];
        held -= vc.counts[k] * vc.values[k];
    }
    curve.points.push_back({static_cast<double>(vc.values.back()) + 1.0, 0.0, 0.0});
    return curve;
}

std::vector<std::pair<double, double>> empirical_gintropy(const CitationRecord& record) {
    const LorenzCurve curve = lorenz_curve(record);
    std::vector<std::pair<double, double>> out;
    out.reserve(curve.points.size());
    for (const auto& p : curve.points) out.emplace_back(p.threshold, p.f - p.c);
    return out;
}

}  // namespace ginscale
