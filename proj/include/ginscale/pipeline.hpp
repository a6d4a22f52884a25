#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ginscale/dataset_io.hpp"
#include "ginscale/fitting.hpp"
#include "ginscale/scaling.hpp"
#include "ginscale/verify.hpp"

// Batch commands behind the CLI. Each writes its outputs once, atomically, after all
// per-record work is reduced, and returns the run manifest it also wrote to disk.
namespace ginscale::pipeline {

inline constexpr const char* kToolVersion = "ginscale 1.0.0";

enum ExitCode : int { ok = 0, usage = 1, data_error = 2, verification_failed = 3 };

/// Config echo, per-stage counts and timings, and a SHA-256 for every input and output.
class RunManifest {
public:
    explicit RunManifest(std::string command);

    void set_config(nlohmann::json config);
    void add_input(const std::filesystem::path& path);
    /// Records the digest of an already-written output file.
    void add_output(const std::filesystem::path& path);
    void set_count(const std::string& key, nlohmann::json value);
    void set_stage_ms(const std::string& stage, double ms);
    void write(const std::filesystem::path& path) const;

    const nlohmann::json& document() const { return doc_; }

private:
    nlohmann::json doc_;
};

struct GenerateOptions {
    SynthSpec spec;
    std::filesystem::path out;
    std::optional<std::filesystem::path> manifest;  ///< default: <out>.manifest.json
};

struct FitOptions {
    std::filesystem::path in;
    std::filesystem::path out;                      ///< summary export (CSV)
    std::optional<std::filesystem::path> smin_out;  ///< default: <out>.smin.dat
    std::optional<std::filesystem::path> manifest;  ///< default: <out>.manifest.json
    FitConfig cfg;
    FilterPreset preset = FilterPreset::none();
    bool skip_invalid = false;
};

struct AnalyzeOptions {
    std::filesystem::path in;
    std::filesystem::path fits;
    std::filesystem::path outdir;
    SummaryConfig summary;  ///< preset, histogram bins, density grid
    FitConfig cfg;          ///< grid used by the fit stage (for rejection reasons)
    std::vector<double> curve_b{1.32, 1.4, 1.58, 2.0, 4.0};
    std::size_t curve_points = 512;
    bool skip_invalid = false;
};

nlohmann::json run_generate(const GenerateOptions& options);
nlohmann::json run_fit(const FitOptions& options);
nlohmann::json run_analyze(const AnalyzeOptions& options);

/// Overlay data: r grid, impscale_curve per b, the 2h line and the sqrt(e) h bound.
std::string overlay_curves_table(const std::vector<double>& curve_b, std::size_t points);

/// Log-binned PDF of s_min values; header marks the cutoff.
std::string smin_histogram_table(const std::vector<double>& s_values, double cutoff);

}  // namespace ginscale::pipeline
