#include "ginscale/dataset_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "ginscale/empirical.hpp"
#include "ginscale/errors.hpp"
#include "ginscale/pareto.hpp"
#include "ginscale/scaling.hpp"
#include "ginscale/text_format.hpp"

namespace ginscale {

using nlohmann::json;

namespace {

// Largest count a floored sample may take; keeps per-record totals far from overflow.
constexpr double kMaxDrawnCount = 1e15;

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

CitationRecord parse_record(const json& j) {
    if (!j.is_object()) throw DomainError("record must be a JSON object");
    const auto id_it = j.find("id");
    if (id_it == j.end() || !id_it->is_string()) throw DomainError("missing string field 'id'");
    CitationRecord record;
    record.id = id_it->get<std::string>();
    if (record.id.empty()) throw DomainError("empty id");
    const auto cit_it = j.find("citations");
    if (cit_it == j.end() || !cit_it->is_array()) {
        throw DomainError("record '" + record.id + "': missing array field 'citations'");
    }
    if (cit_it->empty()) throw DomainError("record '" + record.id + "': citations array is empty");
    record.citations.reserve(cit_it->size());
    for (const auto& c : *cit_it) {
        if (!c.is_number_unsigned()) {
            throw DomainError("record '" + record.id + "': " +
                              (c.is_number_integer() ? "negative citation count"
                                                     : "citation counts must be integers"));
        }
        record.citations.push_back(c.get<Count>());
    }
    record.n_cit();  // overflow check
    return record;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LoadResult parse_cohort(const std::string& text) {
    LoadResult result;
    std::unordered_set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            result.issues.push_back({line_no, "", std::string("malformed JSON: ") + e.what()});
            first = false;
            continue;
        }
        if (first && j.is_object() && j.contains("format_version")) {
            first = false;
            if (!j["format_version"].is_number_integer() ||
                j["format_version"].get<int>() != kCohortFormatVersion) {
                throw ParseError("unsupported format_version " + j["format_version"].dump(), line_no);
            }
            result.cohort.format_version = j["format_version"].get<int>();
            if (j.contains("provenance")) {
                if (!j["provenance"].is_string()) throw ParseError("provenance must be a string", line_no);
                result.cohort.provenance = j["provenance"].get<std::string>();
            }
            continue;
        }
        first = false;
        try {
            CitationRecord record = parse_record(j);
            if (!seen.insert(record.id).second) {
                result.issues.push_back({line_no, record.id, "duplicate id '" + record.id + "'"});
                continue;
            }
            result.cohort.records.push_back(std::move(record));
        } catch (const std::exception& e) {
            std::string id;
            if (j.is_object() && j.contains("id") && j["id"].is_string()) id = j["id"].get<std::string>();
            result.issues.push_back({line_no, id, e.what()});
        }
    }
    return result;
}

LoadResult read_cohort(const std::filesystem::path& path) { return parse_cohort(read_file(path)); }

CohortFile load_cohort(const std::filesystem::path& path) {
    LoadResult result = read_cohort(path);
    if (!result.issues.empty()) {
        const RecordIssue& issue = result.issues.front();
        throw ParseError(issue.message + " (" + std::to_string(result.issues.size()) +
                             " invalid record(s) in '" + path.string() + "')",
                         issue.line);
    }
    return std::move(result.cohort);
}

std::string serialize_cohort(const CohortFile& cohort) {
    std::string out;
    json header = {{"format_version", cohort.format_version}, {"provenance", cohort.provenance}};
    out += header.dump();
    out += '\n';
    for (const auto& record : cohort.records) {
        json j = {{"id", record.id}, {"citations", record.citations}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write '" + tmp.string() + "'");
        out << contents;
        out.flush();
        if (!out) throw DataError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

void save_cohort(const std::filesystem::path& path, const CohortFile& cohort) {
    write_file_atomic(path, serialize_cohort(cohort));
}

FilterPreset FilterPreset::strict() { return {"strict", 100, 10000}; }
FilterPreset FilterPreset::relaxed() { return {"relaxed", 10, 100}; }
FilterPreset FilterPreset::none() { return {"none", 0, 0}; }
FilterPreset FilterPreset::custom(Count n_pub_min, Count n_cit_min) {
    return {"custom", n_pub_min, n_cit_min};
}

FilterPreset FilterPreset::by_name(const std::string& name) {
    if (name == "strict") return strict();
    if (name == "relaxed") return relaxed();
    if (name == "none") return none();
    throw DomainError("unknown filter preset '" + name + "' (expected strict, relaxed or none)");
}

bool FilterPreset::keeps(const CitationRecord& record) const {
    return record.n_pub() >= n_pub_min && record.n_cit() >= n_cit_min;
}

FilterOutcome filter_cohort(const CohortFile& cohort, const FilterPreset& preset) {
    FilterOutcome outcome;
    outcome.kept.provenance = cohort.provenance;
    outcome.kept.format_version = cohort.format_version;
    for (const auto& record : cohort.records) {
        if (preset.keeps(record)) {
            outcome.kept.records.push_back(record);
            ++outcome.n_kept;
        } else {
            ++outcome.n_dropped;
        }
    }
    return outcome;
}

void SynthSpec::validate() const {
    if (!(b_true.lo > 1.0 && b_true.hi >= b_true.lo && b_true.hi <= ParetoModel::kMaxShape)) {
        throw DomainError("SynthSpec: b_true must lie in (1, 64] with lo <= hi");
    }
    if (!(n_pub.lo >= 1.0 && n_pub.hi >= n_pub.lo) || n_pub.lo != std::floor(n_pub.lo) ||
        n_pub.hi != std::floor(n_pub.hi)) {
        throw DomainError("SynthSpec: n_pub must be integers >= 1 with lo <= hi");
    }
    if (!(mean_citations.lo > 0.0 && mean_citations.hi >= mean_citations.lo)) {
        throw DomainError("SynthSpec: mean_citations must be positive with lo <= hi");
    }
}

ResearcherDraw draw_researcher(const SynthSpec& spec, std::size_t index) {
    // std::seed_seq's mixing is fixed by the standard, so streams are portable.
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    const auto draw = [&rng](const Range& r) {
        return r.is_fixed() ? r.lo : r.lo + (r.hi - r.lo) * (1.0 - uniform_open_zero(rng));
    };
    ResearcherDraw out;
    out.b = draw(spec.b_true);
    std::size_t n_pub = static_cast<std::size_t>(spec.n_pub.lo);
    if (!spec.n_pub.is_fixed()) {
        const auto span = static_cast<std::uint64_t>(spec.n_pub.hi - spec.n_pub.lo) + 1;
        n_pub += static_cast<std::size_t>(std::min<std::uint64_t>(
            span - 1, static_cast<std::uint64_t>((1.0 - uniform_open_zero(rng)) * span)));
    }
    out.mean = draw(spec.mean_citations);
    const ParetoModel model = ParetoModel::from_mean(out.b, out.mean);
    out.values.reserve(n_pub);
    for (std::size_t k = 0; k < n_pub; ++k) out.values.push_back(quantile_from_tail(model, uniform_open_zero(rng)));
    return out;
}

CitationRecord generate_researcher(const SynthSpec& spec, std::size_t index) {
    const ResearcherDraw d = draw_researcher(spec, index);
    CitationRecord record;
    record.id = "syn" + std::to_string(index);
    record.citations.reserve(d.values.size());
    for (const double x : d.values) {
        record.citations.push_back(static_cast<Count>(std::floor(std::min(x, kMaxDrawnCount))));
    }
    return record;
}

CohortFile generate_synthetic(const SynthSpec& spec) {
    spec.validate();
    CohortFile cohort;
    std::ostringstream prov;
    prov << "synthetic tsallis-pareto; n=" << spec.n_researchers << " b=[" << format_real(spec.b_true.lo)
         << "," << format_real(spec.b_true.hi) << "] n_pub=[" << format_real(spec.n_pub.lo) << ","
         << format_real(spec.n_pub.hi) << "] mean_cit=[" << format_real(spec.mean_citations.lo) << ","
         << format_real(spec.mean_citations.hi) << "] seed=" << spec.seed;
    cohort.provenance = prov.str();
    cohort.records.resize(spec.n_researchers);
    const auto count = static_cast<std::ptrdiff_t>(spec.n_researchers);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        cohort.records[i] = generate_researcher(spec, static_cast<std::size_t>(i));
    }
    return cohort;
}

SummaryRow summary_row(const CitationRecord& record, const FitResult& fit) {
    SummaryRow row;
    row.id = record.id;
    row.n_pub = record.n_pub();
    row.n_cit = record.n_cit();
    const ScalingPoint p = bound_check(record);
    row.h = p.h;
    row.violates_e_bound = p.violates_e_bound;
    if (row.n_cit > 0) row.gini = gini_lorenz(record);
    row.fit = fit;
    return row;
}

std::string serialize_summary(std::span<const SummaryRow> rows) {
    std::string out = kSummaryHeader;
    out += '\n';
    for (const auto& r : rows) {
        const bool has_fit = r.fit.rejection_reason != RejectionReason::too_few_points;
        out += csv_escape(r.id);
        out += ',' + std::to_string(r.n_pub);
        out += ',' + std::to_string(r.n_cit);
        out += ',' + std::to_string(r.h);
        out += ',' + (r.gini ? format_real(*r.gini) : std::string());
        out += ',' + (has_fit ? format_real(r.fit.b_hat) : std::string());
        out += ',' + (has_fit ? format_real(r.fit.a_hat) : std::string());
        out += ',' + (has_fit ? format_real(r.fit.s_min) : std::string());
        out += ',' + std::to_string(r.fit.w);
        out += r.fit.accepted ? ",1" : ",0";
        out += r.violates_e_bound ? ",1\n" : ",0\n";
    }
    return out;
}

std::vector<SummaryRow> parse_summary(const std::string& text, const FitConfig& cfg) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<SummaryRow> rows;
    if (!std::getline(in, line) || (++line_no, line != kSummaryHeader)) {
        throw ParseError("summary table must start with header '" + std::string(kSummaryHeader) + "'", 1);
    }
    const double b_first = cfg.grid_value(0);
    const double b_last = cfg.grid_value(cfg.grid_size() - 1);
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        try {
            const auto f = csv_split(line);
            if (f.size() != 11) throw DomainError("expected 11 fields, got " + std::to_string(f.size()));
            SummaryRow r;
            r.id = f[0];
            r.n_pub = parse_unsigned(f[1]);
            r.n_cit = parse_unsigned(f[2]);
            r.h = parse_unsigned(f[3]);
            if (!f[4].empty()) r.gini = parse_real(f[4]);
            r.fit.w = parse_unsigned(f[8]);
            r.fit.accepted = f[9] == "1";
            if (f[9] != "0" && f[9] != "1") throw DomainError("accepted must be 0 or 1");
            if (f[10] != "0" && f[10] != "1") throw DomainError("violates_e_bound must be 0 or 1");
            r.violates_e_bound = f[10] == "1";
            if (f[5].empty()) {
                if (r.fit.accepted) throw DomainError("accepted row without b_hat");
                r.fit.rejection_reason = RejectionReason::too_few_points;
            } else {
                r.fit.b_hat = parse_real(f[5]);
                r.fit.a_hat = parse_real(f[6]);
                r.fit.s_min = parse_real(f[7]);
                if (r.fit.accepted) {
                    r.fit.rejection_reason = RejectionReason::none;
                } else if (r.fit.b_hat == b_first || r.fit.b_hat == b_last) {
                    r.fit.rejection_reason = RejectionReason::b_at_grid_boundary;
                } else {
                    r.fit.rejection_reason = RejectionReason::loss_above_cutoff;
                }
            }
            rows.push_back(std::move(r));
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return rows;
}

std::vector<SummaryRow> read_summary(const std::filesystem::path& path, const FitConfig& cfg) {
    return parse_summary(read_file(path), cfg);
}

}  // namespace ginscale
