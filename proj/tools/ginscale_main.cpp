// ginscale: batch pipeline for Tsallis-Pareto citation analytics.
//
//   ginscale generate --n 1000 --b 1.4 --npub 200 --mean-cit 50 --seed 7 --out cohort.jsonl
//   ginscale fit      --in cohort.jsonl --out fits.csv
//   ginscale analyze  --in cohort.jsonl --fits fits.csv --outdir figures/
//   ginscale verify
//
// Exit status: 0 success, 1 usage, 2 data error, 3 verification failure.
// GINSCALE_THREADS sets the OpenMP worker count.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"

#include "ginscale/errors.hpp"
#include "ginscale/kernels.hpp"
#include "ginscale/pipeline.hpp"
#include "ginscale/text_format.hpp"
#include "ginscale/verify.hpp"

namespace {

namespace pl = ginscale::pipeline;

struct RangeFlags {
    std::optional<double> value;
    std::optional<double> lo;
    std::optional<double> hi;

    void add(CLI::App* app, const std::string& name, const std::string& what) {
        app->add_option("--" + name, value, what + " (fixed value)");
        app->add_option("--" + name + "-min", lo, what + ", lower end of a uniform range");
        app->add_option("--" + name + "-max", hi, what + ", upper end of a uniform range");
    }

    ginscale::Range resolve(const std::string& name, double fallback) const {
        if (value && (lo || hi)) throw CLI::ValidationError("--" + name, "give a value or a range, not both");
        if (lo.has_value() != hi.has_value()) {
            throw CLI::ValidationError("--" + name, "--" + name + "-min and -max go together");
        }
        if (value) return ginscale::Range::fixed(*value);
        if (lo) return {*lo, *hi};
        return ginscale::Range::fixed(fallback);
    }
};

void add_fit_flags(CLI::App* app, ginscale::FitConfig& cfg, bool grid_only) {
    app->add_option("--b-min", cfg.b_min, "smallest exponent on the fit grid")->capture_default_str();
    app->add_option("--b-max", cfg.b_max, "largest exponent on the fit grid")->capture_default_str();
    app->add_option("--b-step", cfg.b_step, "grid spacing")->capture_default_str();
    if (grid_only) return;
    app->add_option("--s-cutoff", cfg.s_cutoff, "largest accepted s_min")->capture_default_str();
    app->add_option("--min-points", cfg.min_points, "fewest fit points for a usable fit")
        ->capture_default_str();
}

struct PresetFlags {
    std::string name = "none";
    std::optional<ginscale::Count> n_pub_min;
    std::optional<ginscale::Count> n_cit_min;

    void add(CLI::App* app) {
        app->add_option("--preset", name, "record filter: strict, relaxed or none")
            ->check(CLI::IsMember({"strict", "relaxed", "none"}))
            ->capture_default_str();
        app->add_option("--npub-min", n_pub_min, "custom filter: minimum N_pub (overrides --preset)");
        app->add_option("--ncit-min", n_cit_min, "custom filter: minimum N_cit (overrides --preset)");
    }

    ginscale::FilterPreset resolve() const {
        if (n_pub_min || n_cit_min) return ginscale::FilterPreset::custom(n_pub_min.value_or(0), n_cit_min.value_or(0));
        return ginscale::FilterPreset::by_name(name);
    }
};

int run_verify(const std::optional<std::string>& fault, bool list) {
    if (list) {
        for (const auto& name : ginscale::identity_check_names()) std::cout << name << '\n';
        return pl::ok;
    }
    const auto checks = ginscale::run_identity_checks(fault);
    bool all = true;
    for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " achieved=" << ginscale::format_real(c.achieved)
                  << " required<=" << ginscale::format_real(c.required) << '\n';
        all = all && c.passed;
    }
    return all ? pl::ok : pl::verification_failed;
}

void print_counts(const nlohmann::json& manifest) {
    std::cerr << manifest.at("command").get<std::string>() << ": " << manifest.at("counts").dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    if (const int threads = ginscale::kernels::configured_threads(); threads > 0) omp_set_num_threads(threads);

    CLI::App app{"Tsallis-Pareto citation analytics: synthetic cohorts, exponent fits, scaling analysis"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "write a synthetic Tsallis-Pareto cohort");
    pl::GenerateOptions gen_opts;
    RangeFlags b_flags, npub_flags, mean_flags;
    std::optional<std::string> gen_manifest;
    std::string gen_out;
    gen->add_option("--n", gen_opts.spec.n_researchers, "number of researchers")->required();
    b_flags.add(gen, "b", "Tsallis-Pareto exponent");
    npub_flags.add(gen, "npub", "publications per researcher");
    mean_flags.add(gen, "mean-cit", "mean citations per publication");
    gen->add_option("--seed", gen_opts.spec.seed, "RNG seed")->required();
    gen->add_option("--out", gen_out, "cohort file to write")->required();
    gen->add_option("--manifest", gen_manifest, "manifest path (default <out>.manifest.json)");

    auto* fit = app.add_subcommand("fit", "fit the exponent b per researcher");
    pl::FitOptions fit_opts;
    PresetFlags fit_preset;
    std::string fit_in, fit_out;
    std::optional<std::string> fit_smin, fit_manifest;
    fit->add_option("--in", fit_in, "cohort file")->required();
    fit->add_option("--out", fit_out, "summary table (CSV) to write")->required();
    fit->add_option("--smin-out", fit_smin, "s_min histogram path (default <out>.smin.dat)");
    fit->add_option("--manifest", fit_manifest, "manifest path (default <out>.manifest.json)");
    add_fit_flags(fit, fit_opts.cfg, false);
    fit_preset.add(fit);
    fit->add_flag("--skip-invalid", fit_opts.skip_invalid, "drop invalid records instead of failing");

    auto* analyze = app.add_subcommand("analyze", "histograms, scaling scatter, density grid, bound checks");
    pl::AnalyzeOptions an_opts;
    PresetFlags an_preset;
    std::string an_in, an_fits, an_outdir;
    analyze->add_option("--in", an_in, "cohort file")->required();
    analyze->add_option("--fits", an_fits, "summary table written by `fit`")->required();
    analyze->add_option("--outdir", an_outdir, "directory for figure data files")->required();
    an_preset.add(analyze);
    analyze->add_option("--curves", an_opts.curve_b, "exponents b for overlay curves")
        ->delimiter(',')
        ->capture_default_str();
    analyze->add_option("--curve-points", an_opts.curve_points, "points per overlay curve")->capture_default_str();
    analyze->add_option("--b-bins", an_opts.summary.b_bins, "log bins of the b histogram")->capture_default_str();
    analyze->add_option("--gini-bins", an_opts.summary.gini_bins, "linear bins of the Gini histogram")
        ->capture_default_str();
    analyze->add_option("--grid-x", an_opts.summary.grid_nx, "density grid cells along h/N_pub")
        ->capture_default_str();
    analyze->add_option("--grid-y", an_opts.summary.grid_ny, "density grid cells along sqrt(N_cit)/N_pub")
        ->capture_default_str();
    analyze->add_option("--grid-x-max", an_opts.summary.grid_x_hi, "upper h/N_pub of the grid")
        ->capture_default_str();
    analyze->add_option("--grid-y-max", an_opts.summary.grid_y_hi, "upper sqrt(N_cit)/N_pub of the grid")
        ->capture_default_str();
    add_fit_flags(analyze, an_opts.cfg, true);
    analyze->add_flag("--skip-invalid", an_opts.skip_invalid, "drop invalid records instead of failing");

    auto* verify = app.add_subcommand("verify", "run the analytic identity checks");
    std::optional<std::string> fault;
    bool list_checks = false;
    verify->add_option("--inject-fault", fault, "perturb the named check (test hook)")->group("");
    verify->add_flag("--list", list_checks, "list check names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? pl::ok : pl::usage;
    }

    try {
        if (*gen) {
            gen_opts.spec.b_true = b_flags.resolve("b", 1.4);
            gen_opts.spec.n_pub = npub_flags.resolve("npub", 100);
            gen_opts.spec.mean_citations = mean_flags.resolve("mean-cit", 50.0);
            gen_opts.out = gen_out;
            if (gen_manifest) gen_opts.manifest = *gen_manifest;
            print_counts(pl::run_generate(gen_opts));
        } else if (*fit) {
            fit_opts.in = fit_in;
            fit_opts.out = fit_out;
            if (fit_smin) fit_opts.smin_out = *fit_smin;
            if (fit_manifest) fit_opts.manifest = *fit_manifest;
            fit_opts.preset = fit_preset.resolve();
            print_counts(pl::run_fit(fit_opts));
        } else if (*analyze) {
            an_opts.in = an_in;
            an_opts.fits = an_fits;
            an_opts.outdir = an_outdir;
            an_opts.summary.preset = an_preset.resolve();
            an_opts.summary.b_lo = std::min(1.0, an_opts.cfg.b_min);
            an_opts.summary.b_hi = an_opts.cfg.b_max;
            print_counts(pl::run_analyze(an_opts));
        } else if (*verify) {
            return run_verify(fault, list_checks);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return pl::usage;
    } catch (const ginscale::DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return pl::usage;
    } catch (const ginscale::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return pl::data_error;
    } catch (const ginscale::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return pl::data_error;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return pl::data_error;
    }
    return pl::ok;
}
