#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "ginscale/dataset_io.hpp"
#include "ginscale/digest.hpp"
#include "ginscale/empirical.hpp"
#include "ginscale/errors.hpp"
#include "ginscale/pareto.hpp"
#include "ginscale/text_format.hpp"
#include "oracles.hpp"

using namespace ginscale;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "ginscale_test_dataset_io";
    fs::create_directories(dir);
    return dir / name;
}

CohortFile random_cohort(std::mt19937_64& rng) {
    CohortFile c;
    c.provenance = "random \"quoted\" provenance, with commas\tand tabs";
    std::uniform_int_distribution<int> n(0, 30);
    const int count = n(rng);
    for (int i = 0; i < count; ++i) {
        CitationRecord r;
        r.id = "id-" + std::to_string(i) + (i % 3 == 0 ? ",x\"y" : "");
        r.citations = oracle::random_counts(rng, 50, 100000);
        if (i % 7 == 0) r.citations.push_back(~Count{0} / 4);  // large counts survive
        c.records.push_back(r);
    }
    return c;
}

SynthSpec spec_for(double b, double n_pub, double mean, std::uint64_t seed, std::size_t n) {
    SynthSpec s;
    s.n_researchers = n;
    s.b_true = Range::fixed(b);
    s.n_pub = Range::fixed(n_pub);
    s.mean_citations = Range::fixed(mean);
    s.seed = seed;
    return s;
}

}  // namespace

TEST_CASE("parse a one-line record") {
    const LoadResult r = parse_cohort(R"({"id":"r1","citations":[10,5,3,2,1]})");
    REQUIRE(r.issues.empty());
    REQUIRE(r.cohort.records.size() == 1);
    const CitationRecord& rec = r.cohort.records[0];
    CHECK(rec.id == "r1");
    CHECK(rec.n_pub() == 5);
    CHECK(rec.n_cit() == 21);
    CHECK(h_index(rec) == 3);
    CHECK(r.cohort.format_version == kCohortFormatVersion);
}

TEST_CASE("invalid records are reported with line numbers, not dropped silently") {
    const std::string text =
        "{\"format_version\":1,\"provenance\":\"t\"}\n"
        "{\"id\":\"ok\",\"citations\":[1,2]}\n"
        "{\"id\":\"empty\",\"citations\":[]}\n"
        "\n"
        "{\"id\":\"neg\",\"citations\":[1,-2]}\n"
        "{\"id\":\"frac\",\"citations\":[1.5]}\n"
        "{\"id\":\"ok\",\"citations\":[3]}\n"
        "{not json\n"
        "{\"citations\":[1]}\n"
        "{\"id\":\"\",\"citations\":[1]}\n"
        "[1,2,3]\n"
        "{\"id\":\"str\",\"citations\":[\"4\"]}\n"
        "{\"id\":\"last\",\"citations\":[0]}\n";
    const LoadResult r = parse_cohort(text);
    REQUIRE(r.cohort.records.size() == 2);
    CHECK(r.cohort.records[0].id == "ok");
    CHECK(r.cohort.records[1].id == "last");
    CHECK(r.cohort.provenance == "t");
    REQUIRE(r.issues.size() == 9);
    const std::size_t lines[] = {3, 5, 6, 7, 8, 9, 10, 11, 12};
    for (std::size_t i = 0; i < 9; ++i) CHECK(r.issues[i].line == lines[i]);
    CHECK(r.issues[0].message.find("empty") != std::string::npos);
    CHECK(r.issues[1].message.find("negative") != std::string::npos);
    CHECK(r.issues[2].message.find("integer") != std::string::npos);
    CHECK(r.issues[3].message.find("duplicate") != std::string::npos);
    CHECK(r.issues[3].id == "ok");
    CHECK(r.issues[4].message.find("malformed") != std::string::npos);

    const fs::path p = scratch("bad.jsonl");
    write_file_atomic(p, text);
    try {
        load_cohort(p);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
    }
    CHECK(read_cohort(p).issues.size() == 9);
}

TEST_CASE("header handling") {
    CHECK_THROWS_AS(parse_cohort("{\"format_version\":2}\n"), ParseError);
    CHECK_THROWS_AS(parse_cohort("{\"format_version\":\"1\"}\n"), ParseError);
    // A header-like object after the first line is a record issue, not a header.
    const LoadResult late = parse_cohort("{\"id\":\"a\",\"citations\":[1]}\n{\"format_version\":1}\n");
    CHECK(late.cohort.records.size() == 1);
    CHECK(late.issues.size() == 1);
    CHECK(parse_cohort("").cohort.records.empty());
    CHECK_THROWS_AS(read_cohort(scratch("does-not-exist.jsonl")), ParseError);
}

TEST_CASE("round trip: save then load is lossless") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        const CohortFile c = random_cohort(rng);
        CHECK(parse_cohort(serialize_cohort(c)).cohort == c);
        const fs::path p = scratch("rt.jsonl");
        save_cohort(p, c);
        CHECK(load_cohort(p) == c);
        CHECK_FALSE(fs::exists(p.string() + ".tmp"));
    }
}

TEST_CASE("filter presets") {
    const CitationRecord strict_edge{"a", std::vector<Count>(100, 100)};  // N_pub=100, N_cit=10000
    CitationRecord just_below = strict_edge;
    just_below.citations.back() = 99;  // N_cit=9999
    const CitationRecord relaxed_edge{"b", std::vector<Count>(10, 10)};  // N_pub=10, N_cit=100
    CHECK(FilterPreset::strict().keeps(strict_edge));
    CHECK_FALSE(FilterPreset::strict().keeps(just_below));
    CHECK(FilterPreset::relaxed().keeps(relaxed_edge));
    CHECK_FALSE(FilterPreset::relaxed().keeps({"c", std::vector<Count>(9, 100)}));
    CHECK(FilterPreset::none().keeps({"z", {0}}));
    CHECK(FilterPreset::custom(2, 5).keeps({"z", {5, 0}}));
    CHECK(FilterPreset::by_name("strict").n_cit_min == 10000);
    CHECK(FilterPreset::by_name("relaxed").n_pub_min == 10);
    CHECK_THROWS_AS(FilterPreset::by_name("loose"), DomainError);

    SynthSpec s;
    s.n_researchers = 500;
    s.b_true = {1.2, 3.0};
    s.n_pub = {1, 400};
    s.mean_citations = {1.0, 300.0};
    s.seed = 4;
    const CohortFile c = generate_synthetic(s);
    const FilterOutcome strict = filter_cohort(c, FilterPreset::strict());
    const FilterOutcome relaxed = filter_cohort(c, FilterPreset::relaxed());
    CHECK(strict.n_kept + strict.n_dropped == 500);
    CHECK(strict.kept.records.size() == strict.n_kept);
    CHECK(strict.n_kept > 0);
    CHECK(strict.n_kept < relaxed.n_kept);
    for (const auto& r : strict.kept.records) CHECK(FilterPreset::relaxed().keeps(r));
}

TEST_CASE("synthetic generation is deterministic") {
    const SynthSpec s = spec_for(1.4, 200, 50.0, 7, 100);
    const std::string a = serialize_cohort(generate_synthetic(s));
    const std::string b = serialize_cohort(generate_synthetic(s));
    CHECK(sha256_hex(a) == sha256_hex(b));
    SynthSpec other = s;
    other.seed = 8;
    CHECK(serialize_cohort(generate_synthetic(other)) != a);
    const CohortFile c = generate_synthetic(s);
    CHECK(c.records[42] == generate_researcher(s, 42));
    CHECK(c.records[42].id == "syn42");
}

TEST_CASE("synthetic spec validation and parameter ranges") {
    SynthSpec s = spec_for(1.0, 10, 5.0, 0, 1);
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = spec_for(2.0, 0, 5.0, 0, 1);
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = spec_for(2.0, 10.5, 5.0, 0, 1);
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = spec_for(2.0, 10, 0.0, 0, 1);
    CHECK_THROWS_AS(s.validate(), DomainError);

    SynthSpec r;
    r.n_researchers = 300;
    r.b_true = {1.2, 2.5};
    r.n_pub = {10, 20};
    r.mean_citations = {5.0, 9.0};
    r.seed = 1;
    for (std::size_t i = 0; i < r.n_researchers; ++i) {
        const ResearcherDraw d = draw_researcher(r, i);
        CHECK(d.b >= 1.2);
        CHECK(d.b <= 2.5);
        CHECK(d.mean >= 5.0);
        CHECK(d.mean <= 9.0);
        CHECK(d.values.size() >= 10);
        CHECK(d.values.size() <= 20);
    }
}

TEST_CASE("floor integerization lowers the mean by less than one citation") {
    const SynthSpec s = spec_for(1.6, 500, 3.0, 19, 50);
    for (std::size_t i = 0; i < s.n_researchers; ++i) {
        const ResearcherDraw d = draw_researcher(s, i);
        const CitationRecord r = generate_researcher(s, i);
        double raw = 0.0;
        for (const double x : d.values) raw += x;
        raw /= static_cast<double>(d.values.size());
        CHECK(r.mean() <= raw);
        CHECK(r.mean() > raw - 1.0);
    }
}

TEST_CASE("cohort Gini concentrates near b/(2b-1)") {
    // Finite variance keeps the per-record estimator close to the population value.
    for (const double b : {2.5, 4.0}) {
        const CohortFile c = generate_synthetic(spec_for(b, 3000, 200.0, 6, 40));
        std::vector<double> g;
        for (const auto& r : c.records) g.push_back(gini_lorenz(r));
        CHECK(std::abs(oracle::median(g) - gini_closed_form(b)) < 0.02);
    }
}

TEST_CASE("summary export header and round trip") {
    const SynthSpec s = spec_for(1.5, 60, 20.0, 3, 40);
    CohortFile c = generate_synthetic(s);
    c.records.push_back({"quoted,\"id\"", {0, 0, 0}});
    c.records.push_back({"tiny", {1, 2, 4}});
    const auto fits = fit_cohort(c.records, FitConfig{});
    std::vector<SummaryRow> rows;
    for (std::size_t i = 0; i < c.records.size(); ++i) rows.push_back(summary_row(c.records[i], fits[i]));
    const std::string text = serialize_summary(rows);
    CHECK(text.rfind(std::string(kSummaryHeader) + "\n", 0) == 0);

    const auto back = parse_summary(text);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SummaryRow& a = rows[i];
        const SummaryRow& b = back[i];
        CHECK(a.id == b.id);
        CHECK(a.n_pub == b.n_pub);
        CHECK(a.n_cit == b.n_cit);
        CHECK(a.h == b.h);
        CHECK(a.gini == b.gini);
        CHECK(a.fit.b_hat == b.fit.b_hat);
        CHECK(a.fit.a_hat == b.fit.a_hat);
        CHECK(a.fit.s_min == b.fit.s_min);
        CHECK(a.fit.w == b.fit.w);
        CHECK(a.fit.accepted == b.fit.accepted);
        CHECK(a.fit.rejection_reason == b.fit.rejection_reason);
        CHECK(a.violates_e_bound == b.violates_e_bound);
    }
    CHECK_FALSE(back[40].gini.has_value());

    CHECK_THROWS_AS(parse_summary("id,n_pub\n"), ParseError);
    try {
        parse_summary(std::string(kSummaryHeader) + "\nx,1,1,1,0.5,2,0.1,0.01,3,2,0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("text formatting helpers") {
    for (const double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.0}) {
        CHECK(parse_real(format_real(v)) == v);
    }
    CHECK(format_real(std::nan("")) == "nan");
    CHECK(format_real(INFINITY) == "inf");
    CHECK_THROWS_AS(parse_real("1.5x"), DomainError);
    CHECK_THROWS_AS(parse_real(""), DomainError);
    CHECK(parse_unsigned("18446744073709551615") == 18446744073709551615ULL);
    CHECK_THROWS_AS(parse_unsigned("-1"), DomainError);
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,\"b\"") == "\"a,\"\"b\"\"\"");
    CHECK(csv_split("x,\"a,\"\"b\"\"\",,z") == std::vector<std::string>{"x", "a,\"b\"", "", "z"});
    CHECK_THROWS_AS(csv_split("\"open"), DomainError);
}

TEST_CASE("sha256 digests") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const fs::path p = scratch("digest.txt");
    write_file_atomic(p, "abc");
    CHECK(sha256_file(p) == sha256_hex("abc"));
}
