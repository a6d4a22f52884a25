#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ginscale/citation_record.hpp"
#include "ginscale/fitting.hpp"

namespace ginscale {

inline constexpr int kCohortFormatVersion = 1;

struct CohortFile {
    std::vector<CitationRecord> records;
    std::string provenance;
    int format_version = kCohortFormatVersion;

    friend bool operator==(const CohortFile&, const CohortFile&) = default;
};

struct RecordIssue {
    std::size_t line;
    std::string id;  ///< empty when the id itself could not be read
    std::string message;
};

struct LoadResult {
    CohortFile cohort;                ///< valid records only
    std::vector<RecordIssue> issues;  ///< every rejected line, in file order
};

/// Parses a line-delimited cohort. An optional first line
/// {"format_version": 1, "provenance": "..."} is the header; every other non-blank line is
/// {"id": string, "citations": [non-negative integers]}. Invalid records are reported in
/// `issues`. Throws ParseError only for an unreadable file or an unsupported header.
LoadResult read_cohort(const std::filesystem::path& path);
LoadResult parse_cohort(const std::string& text);

/// read_cohort, throwing ParseError (first issue, with its line number) if any record is
/// invalid.
CohortFile load_cohort(const std::filesystem::path& path);

std::string serialize_cohort(const CohortFile& cohort);

/// Writes via a temporary file and rename, so an interrupted run leaves no partial file.
void save_cohort(const std::filesystem::path& path, const CohortFile& cohort);
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Record-count thresholds, both inclusive.
struct FilterPreset {
    std::string name;
    Count n_pub_min = 0;
    Count n_cit_min = 0;

    static FilterPreset strict();   ///< N_cit >= 10000 and N_pub >= 100
    static FilterPreset relaxed();  ///< N_cit >= 100 and N_pub >= 10
    static FilterPreset none();
    static FilterPreset custom(Count n_pub_min, Count n_cit_min);
    /// "strict", "relaxed" or "none"; throws DomainError otherwise.
    static FilterPreset by_name(const std::string& name);

    bool keeps(const CitationRecord& record) const;
};

struct FilterOutcome {
    CohortFile kept;
    std::size_t n_kept = 0;
    std::size_t n_dropped = 0;
};

FilterOutcome filter_cohort(const CohortFile& cohort, const FilterPreset& preset);

/// Closed interval for a synthetic-cohort parameter; lo == hi means a fixed value.
struct Range {
    double lo = 0.0;
    double hi = 0.0;

    static Range fixed(double v) { return {v, v}; }
    bool is_fixed() const { return lo == hi; }
};

struct SynthSpec {
    std::size_t n_researchers = 0;
    Range b_true = Range::fixed(1.4);
    Range n_pub = Range::fixed(100);  ///< integer draws, uniform on [lo, hi]
    Range mean_citations = Range::fixed(50.0);
    std::uint64_t seed = 0;

    void validate() const;
};

/// Each researcher gets an engine seeded from (seed, index); parameters are drawn first,
/// then N_pub Tsallis-Pareto values, each floored to an integer count.
CohortFile generate_synthetic(const SynthSpec& spec);
CitationRecord generate_researcher(const SynthSpec& spec, std::size_t index);

/// The continuous draws behind generate_researcher, before integerization.
struct ResearcherDraw {
    double b = 0.0;
    double mean = 0.0;
    std::vector<double> values;
};
ResearcherDraw draw_researcher(const SynthSpec& spec, std::size_t index);

/// One row of the per-researcher summary export.
struct SummaryRow {
    std::string id;
    std::size_t n_pub = 0;
    Count n_cit = 0;
    Count h = 0;
    std::optional<double> gini;
    FitResult fit;
    bool violates_e_bound = false;
};

inline constexpr const char* kSummaryHeader =
    "id,n_pub,n_cit,h,gini,b_hat,a_hat,s_min,w,accepted,violates_e_bound";

SummaryRow summary_row(const CitationRecord& record, const FitResult& fit);
std::string serialize_summary(std::span<const SummaryRow> rows);
/// Parses a summary export. The table has no reason column, so the rejection reason is
/// reconstructed: empty b_hat means too_few_points, a b_hat on either end of `cfg`'s grid
/// means b_at_grid_boundary, any other rejection is loss_above_cutoff.
std::vector<SummaryRow> parse_summary(const std::string& text, const FitConfig& cfg = {});
std::vector<SummaryRow> read_summary(const std::filesystem::path& path, const FitConfig& cfg = {});

std::string read_file(const std::filesystem::path& path);

}  // namespace ginscale
