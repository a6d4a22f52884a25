#include "ginscale/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "ginscale/digest.hpp"
#include "ginscale/errors.hpp"
#include "ginscale/pareto.hpp"
#include "ginscale/text_format.hpp"

namespace ginscale::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class StageTimer {
public:
    StageTimer(RunManifest& manifest, std::string stage)
        : manifest_(manifest), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        manifest_.set_stage_ms(stage_, std::chrono::duration<double, std::milli>(elapsed).count());
    }

private:
    RunManifest& manifest_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_;
};

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
    fs::path out = p;
    out += suffix;
    return out;
}

json fit_config_json(const FitConfig& cfg) {
    return {{"b_min", cfg.b_min},   {"b_max", cfg.b_max},         {"b_step", cfg.b_step},
            {"s_cutoff", cfg.s_cutoff}, {"min_points", cfg.min_points}};
}

json preset_json(const FilterPreset& p) {
    return {{"name", p.name}, {"n_pub_min", p.n_pub_min}, {"n_cit_min", p.n_cit_min}};
}

json range_json(const Range& r) { return {{"lo", r.lo}, {"hi", r.hi}}; }

CohortFile load_checked(const fs::path& path, bool skip_invalid, RunManifest& manifest) {
    LoadResult loaded = read_cohort(path);
    manifest.set_count("loaded", loaded.cohort.records.size() + loaded.issues.size());
    manifest.set_count("invalid", loaded.issues.size());
    if (!loaded.issues.empty()) {
        json issues = json::array();
        for (const auto& issue : loaded.issues) {
            issues.push_back({{"line", issue.line}, {"id", issue.id}, {"message", issue.message}});
        }
        manifest.set_count("invalid_records", issues);
        if (!skip_invalid) {
            const auto& first = loaded.issues.front();
            throw ParseError(first.message + " (" + std::to_string(loaded.issues.size()) +
                                 " invalid record(s); rerun with --skip-invalid to drop them)",
                             first.line);
        }
    }
    return std::move(loaded.cohort);
}

std::string histogram_table(const Histogram& h, const std::string& title, const std::string& quantity,
                            const std::string& extra_header = {}) {
    std::ostringstream out;
    const double total = static_cast<double>(h.total());
    out << "# figure: " << title << "\n" << extra_header;
    out << "# bins: " << h.counts.size() << (h.logarithmic ? " logarithmic" : " linear") << "\n";
    out << "# columns: " << quantity << "_lo " << quantity << "_hi " << quantity
        << "_center count density\n";
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
        const double width = h.edges[k + 1] - h.edges[k];
        const double density = total > 0 ? static_cast<double>(h.counts[k]) / (total * width) : 0.0;
        out << format_real(h.edges[k]) << ' ' << format_real(h.edges[k + 1]) << ' '
            << format_real(h.center(k)) << ' ' << h.counts[k] << ' ' << format_real(density) << '\n';
    }
    return out.str();
}

std::string scatter_table(const std::vector<ScalingPoint>& points) {
    std::ostringstream out;
    out << "# figure: scaling scatter, sqrt(N_cit)/N_pub against h/N_pub for accepted records\n";
    out << "# columns (tab separated): id x_coord=h/N_pub y_coord=sqrt(N_cit)/N_pub lambda h n_pub "
           "n_cit violates_e_bound\n";
    for (const auto& p : points) {
        out << p.id << '\t' << format_real(p.x_coord) << '\t' << format_real(p.y_coord) << '\t'
            << format_real(p.lambda) << '\t' << p.h << '\t' << p.n_pub << '\t' << p.n_cit << '\t'
            << (p.violates_e_bound ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string grid_table(const DensityGrid& g) {
    std::ostringstream out;
    out << "# figure: 2D point density over (h/N_pub, sqrt(N_cit)/N_pub)\n";
    out << "# grid: " << g.nx << " x " << g.ny << " cells, x in [" << format_real(g.x_lo) << ", "
        << format_real(g.x_hi) << "], y in [" << format_real(g.y_lo) << ", " << format_real(g.y_hi)
        << "], out_of_range " << g.out_of_range << "\n";
    out << "# columns: x_center y_center count (blank line between x columns)\n";
    const double dx = (g.x_hi - g.x_lo) / static_cast<double>(g.nx);
    const double dy = (g.y_hi - g.y_lo) / static_cast<double>(g.ny);
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
        for (std::size_t iy = 0; iy < g.ny; ++iy) {
            out << format_real(g.x_lo + (ix + 0.5) * dx) << ' ' << format_real(g.y_lo + (iy + 0.5) * dy)
                << ' ' << g.at(ix, iy) << '\n';
        }
        out << '\n';
    }
    return out.str();
}

std::string violations_table(const std::vector<ViolationReport>& reports) {
    std::ostringstream out;
    out << "# figure: bound violation rates, e-bound N_cit >= e h^2 and obvious bound N_cit >= h^2\n";
    out << "# columns: preset n_records e_bound_violations e_bound_rate obvious_bound_violations\n";
    for (const auto& r : reports) {
        out << r.preset << ' ' << r.n_records << ' ' << r.e_bound_violations << ' '
            << format_real(r.e_bound_rate) << ' ' << r.obvious_bound_violations << '\n';
    }
    return out.str();
}

void emit(RunManifest& manifest, const fs::path& path, const std::string& contents) {
    write_file_atomic(path, contents);
    manifest.add_output(path);
}

}  // namespace

RunManifest::RunManifest(std::string command) {
    doc_["tool"] = kToolVersion;
    doc_["command"] = std::move(command);
    doc_["inputs"] = json::array();
    doc_["outputs"] = json::array();
    doc_["counts"] = json::object();
    doc_["stage_ms"] = json::object();
}

void RunManifest::set_config(json config) { doc_["config"] = std::move(config); }

void RunManifest::add_input(const fs::path& path) {
    doc_["inputs"].push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
}

void RunManifest::add_output(const fs::path& path) {
    const std::string bytes = read_file(path);
    doc_["outputs"].push_back(
        {{"path", path.string()}, {"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}});
}

void RunManifest::set_count(const std::string& key, json value) { doc_["counts"][key] = std::move(value); }

void RunManifest::set_stage_ms(const std::string& stage, double ms) { doc_["stage_ms"][stage] = ms; }

void RunManifest::write(const fs::path& path) const { write_file_atomic(path, doc_.dump(2) + "\n"); }

json run_generate(const GenerateOptions& options) {
    options.spec.validate();
    RunManifest manifest("generate");
    manifest.set_config({{"n_researchers", options.spec.n_researchers},
                         {"b_true", range_json(options.spec.b_true)},
                         {"n_pub", range_json(options.spec.n_pub)},
                         {"mean_citations", range_json(options.spec.mean_citations)},
                         {"seed", options.spec.seed}});
    CohortFile cohort;
    {
        StageTimer t(manifest, "generate");
        cohort = generate_synthetic(options.spec);
    }
    {
        StageTimer t(manifest, "write");
        emit(manifest, options.out, serialize_cohort(cohort));
    }
    manifest.set_count("records", cohort.records.size());
    manifest.write(options.manifest.value_or(with_suffix(options.out, ".manifest.json")));
    return manifest.document();
}

std::string smin_histogram_table(const std::vector<double>& s_values, double cutoff) {
    Histogram h = Histogram::log_spaced(1e-6, 1e2, 80);
    std::size_t below = 0;
    std::size_t above = 0;
    for (const double s : s_values) {
        if (s < h.edges.front()) ++below;
        else if (s > h.edges.back()) ++above;
        h.add(s);
    }
    std::ostringstream extra;
    extra << "# s_cutoff: " << format_real(cutoff) << "\n";
    extra << "# clamped_into_end_bins: below " << below << ", above " << above << "\n";
    return histogram_table(h, "distribution of the minimal fit loss s_min", "s_min", extra.str());
}

json run_fit(const FitOptions& options) {
    options.cfg.validate();
    RunManifest manifest("fit");
    manifest.set_config({{"fit", fit_config_json(options.cfg)},
                         {"preset", preset_json(options.preset)},
                         {"skip_invalid", options.skip_invalid}});
    manifest.add_input(options.in);

    CohortFile cohort;
    {
        StageTimer t(manifest, "load");
        cohort = load_checked(options.in, options.skip_invalid, manifest);
    }
    FilterOutcome filtered = filter_cohort(cohort, options.preset);
    manifest.set_count("filtered_out", filtered.n_dropped);
    manifest.set_count("kept", filtered.n_kept);

    std::vector<FitResult> fits;
    {
        StageTimer t(manifest, "fit");
        fits = fit_cohort(filtered.kept.records, options.cfg);
    }

    std::vector<SummaryRow> rows(fits.size());
    std::vector<double> s_values;
    std::map<std::string, std::size_t> reasons;
    std::ostringstream rejections;
    rejections << "id,reason\n";
    std::size_t accepted = 0;
    {
        StageTimer t(manifest, "summarize");
        const auto count = static_cast<std::ptrdiff_t>(fits.size());
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < count; ++i) rows[i] = summary_row(filtered.kept.records[i], fits[i]);
        for (std::size_t i = 0; i < fits.size(); ++i) {
            const FitResult& f = fits[i];
            if (f.rejection_reason != RejectionReason::too_few_points) s_values.push_back(f.s_min);
            if (f.accepted) {
                ++accepted;
            } else {
                ++reasons[std::string(to_string(f.rejection_reason))];
                rejections << csv_escape(filtered.kept.records[i].id) << ',' << to_string(f.rejection_reason)
                           << '\n';
            }
        }
    }
    manifest.set_count("fitted", s_values.size());
    manifest.set_count("accepted", accepted);
    manifest.set_count("rejected", fits.size() - accepted);
    manifest.set_count("rejected_by_reason", reasons);
    manifest.set_count("table_rows", rows.size());

    {
        StageTimer t(manifest, "write");
        emit(manifest, options.out, serialize_summary(rows));
        emit(manifest, options.smin_out.value_or(with_suffix(options.out, ".smin.dat")),
             smin_histogram_table(s_values, options.cfg.s_cutoff));
        emit(manifest, with_suffix(options.out, ".rejections.csv"), rejections.str());
    }
    manifest.write(options.manifest.value_or(with_suffix(options.out, ".manifest.json")));
    return manifest.document();
}

std::string overlay_curves_table(const std::vector<double>& curve_b, std::size_t points) {
    if (points == 0) throw DomainError("overlay curves need at least one point");
    for (const double b : curve_b) check_shape(b);
    std::ostringstream out;
    out << "# figure: scaling overlay curves sqrt(N_cit)/N_pub as a function of r = h/N_pub\n";
    out << "# columns: r";
    for (const double b : curve_b) out << " tsallis_pareto_b=" << format_real(b);
    out << " two_h_line e_bound_line\n";
    const double sqrt_e = std::sqrt(std::numbers::e);
    for (std::size_t k = 0; k < points; ++k) {
        const double r = (static_cast<double>(k) + 0.5) / static_cast<double>(points);
        out << format_real(r);
        for (const double b : curve_b) out << ' ' << format_real(impscale_curve(b, r));
        out << ' ' << format_real(2.0 * r) << ' ' << format_real(sqrt_e * r) << '\n';
    }
    return out.str();
}

json run_analyze(const AnalyzeOptions& options) {
    options.cfg.validate();
    RunManifest manifest("analyze");
    json bins = {{"b_range", {options.summary.b_lo, options.summary.b_hi}},
                 {"b_bins", options.summary.b_bins},
                 {"gini_bins", options.summary.gini_bins},
                 {"grid", {options.summary.grid_nx, options.summary.grid_ny}},
                 {"grid_x_hi", options.summary.grid_x_hi},
                 {"grid_y_hi", options.summary.grid_y_hi}};
    manifest.set_config({{"preset", preset_json(options.summary.preset)},
                         {"bins", bins},
                         {"fit", fit_config_json(options.cfg)},
                         {"curve_b", options.curve_b},
                         {"curve_points", options.curve_points}});
    manifest.add_input(options.in);
    manifest.add_input(options.fits);

    CohortFile cohort;
    std::vector<SummaryRow> rows;
    {
        StageTimer t(manifest, "load");
        cohort = load_checked(options.in, options.skip_invalid, manifest);
        rows = read_summary(options.fits, options.cfg);
    }

    std::unordered_map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!row_of.emplace(rows[i].id, i).second) {
            throw DataError("fit table lists id '" + rows[i].id + "' twice");
        }
    }
    std::vector<CitationRecord> records;
    std::vector<FitResult> fits;
    std::size_t missing = 0;
    for (const auto& record : cohort.records) {
        const auto it = row_of.find(record.id);
        if (it == row_of.end()) {
            ++missing;
            continue;
        }
        const SummaryRow& row = rows[it->second];
        if (row.n_pub != record.n_pub() || row.n_cit != record.n_cit()) {
            throw DataError("fit table row for '" + record.id + "' does not match the cohort record");
        }
        records.push_back(record);
        fits.push_back(row.fit);
    }
    manifest.set_count("records_without_fit_row", missing);

    CohortSummary summary;
    std::vector<ViolationReport> reports;
    {
        StageTimer t(manifest, "summarize");
        summary = summarize_cohort(records, fits, options.summary);
        for (const auto& preset : {FilterPreset::strict(), FilterPreset::relaxed(), options.summary.preset}) {
            reports.push_back(violation_report(records, preset));
        }
    }
    const RecordCounts& c = summary.record_counts;
    manifest.set_count("total", c.total);
    manifest.set_count("filtered", c.filtered);
    manifest.set_count("fitted", c.fitted);
    manifest.set_count("accepted", c.accepted);
    manifest.set_count("rejected", c.rejected);

    json stats = {{"b_mode", summary.b_mode},
                  {"b_mean", summary.b_mean},
                  {"gini_mode", summary.gini_mode},
                  {"e_bound_violation_rate", summary.e_bound_violation_rate},
                  {"obvious_bound_violations", summary.obvious_bound_violations},
                  {"two_h_median_sqrt_ncit_over_h", summary.two_h_median},
                  {"density_grid_out_of_range", summary.density_grid.out_of_range},
                  {"record_counts",
                   {{"total", c.total},
                    {"filtered", c.filtered},
                    {"fitted", c.fitted},
                    {"accepted", c.accepted},
                    {"rejected", c.rejected}}}};
    json violations = json::array();
    for (const auto& r : reports) {
        violations.push_back({{"preset", r.preset},
                              {"n_records", r.n_records},
                              {"e_bound_violations", r.e_bound_violations},
                              {"e_bound_rate", r.e_bound_rate},
                              {"obvious_bound_violations", r.obvious_bound_violations}});
    }
    stats["violations"] = violations;

    {
        StageTimer t(manifest, "write");
        const fs::path& dir = options.outdir;
        emit(manifest, dir / "b_histogram.dat",
             histogram_table(summary.b_histogram, "distribution of fitted Tsallis-Pareto exponents b", "b"));
        emit(manifest, dir / "gini_histogram.dat",
             histogram_table(summary.gini_histogram, "distribution of individual Gini coefficients", "gini"));
        emit(manifest, dir / "scaling_scatter.dat", scatter_table(summary.points));
        emit(manifest, dir / "density_grid.dat", grid_table(summary.density_grid));
        emit(manifest, dir / "overlay_curves.dat", overlay_curves_table(options.curve_b, options.curve_points));
        emit(manifest, dir / "violations.dat", violations_table(reports));
        emit(manifest, dir / "summary.json", stats.dump(2) + "\n");
    }
    manifest.write(options.outdir / "manifest.json");
    return manifest.document();
}

}  // namespace ginscale::pipeline
