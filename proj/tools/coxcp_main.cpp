// coxcp: piecewise-constant hazard-ratio estimation for survival data.
// Subcommands: fit, region, detect, simulate, study, plot-data.
// Exit codes: 0 ok, 2 input error, 3 numerical failure.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "coxcp/cox_fit.hpp"
#include "coxcp/errors.hpp"
#include "coxcp/reports.hpp"
#include "coxcp/score_process.hpp"
#include "coxcp/segmentation.hpp"
#include "coxcp/simulation.hpp"
#include "coxcp/single_changepoint.hpp"
#include "coxcp/studies.hpp"
#include "coxcp/survival_data.hpp"

namespace {

using nlohmann::json;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw coxcp::DataError("cannot write " + out_path);
        out << j.dump(2) << '\n';
    }
}

coxcp::Scenario resolve_scenario(const std::string& spec) {
    if (spec.size() == 9 && spec.rfind("scenario", 0) == 0 && spec[8] >= '1' && spec[8] <= '7')
        return coxcp::paper_scenario(spec[8] - '0');
    std::ifstream in(spec);
    if (!in) throw coxcp::DataError("scenario '" + spec + "' is neither a preset id nor a readable file");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw coxcp::DataError("scenario file " + spec + ": " + e.what());
    }
    return coxcp::scenario_from_json(j);
}

coxcp::ScorePath path_for(const coxcp::SurvivalSample& sample, const std::string& k_mode,
                          double epsilon) {
    const coxcp::KMode mode =
        k_mode == "deterministic" ? coxcp::KMode::deterministic : coxcp::KMode::observed;
    const std::size_t requested = coxcp::choose_k(sample, mode, epsilon);
    const std::size_t k = coxcp::usable_k(sample, requested);
    if (k < 2) throw coxcp::NumericalError("fewer than two usable failures for the score path");
    return coxcp::standardized_score_path(sample, k);
}

int run(int argc, char** argv) {
    CLI::App app{"Cox-type changepoint estimation for survival data"};
    app.require_subcommand(1);

    std::string input, output, scenario_spec, study_kind = "coverage", k_mode = "observed";
    double alpha = 0.10, h = 0.15, epsilon = 0.05, window_lo = 0.0;
    std::optional<double> window_hi;
    int K = 2, reps = 100, jobs = 0;
    std::size_t min_events = 5;
    std::uint64_t seed = 1, rep_index = 0;
    bool with_fit = false;

    auto* fit = app.add_subcommand("fit", "Cox fit over a time window");
    fit->add_option("input", input, "CSV file (time,status,covariate)")->required();
    fit->add_option("--window-lo", window_lo, "window lower end, exclusive (default 0)");
    fit->add_option("--window-hi", window_hi, "window upper end, inclusive (default +inf)");
    fit->add_option("-o,--out", output, "write JSON here instead of stdout");

    auto* region = app.add_subcommand("region", "single changepoint estimate and confidence region");
    region->add_option("input", input)->required();
    region->add_option("-a,--alpha", alpha, "region level (default 0.10)");
    region->add_option("--min-events", min_events, "events required on each side of a candidate");
    region->add_option("-o,--out", output);

    auto* detect = app.add_subcommand("detect", "least-squares detection of K-1 changepoints");
    detect->add_option("input", input)->required();
    detect->add_option("-K,--k-changepoints", K, "number of segments (>= 2)")->required();
    detect->add_option("--h-frac", h, "minimum segment fraction of the grid (default 0.15)");
    detect->add_option("--k-mode", k_mode, "observed | deterministic");
    detect->add_option("--epsilon", epsilon, "deterministic k margin");
    detect->add_option("-o,--out", output);

    auto* simulate = app.add_subcommand("simulate", "draw a dataset from a scenario");
    simulate->add_option("-s,--scenario", scenario_spec, "preset id (scenario1..scenario7) or JSON file")
        ->required();
    simulate->add_option("--rep", rep_index, "replication stream index (default 0)");
    simulate->add_option("--seed", seed, "override the scenario seed");
    simulate->add_option("-o,--out", output, "write CSV here instead of stdout");

    auto* study = app.add_subcommand("study", "Monte Carlo study over a scenario");
    study->add_option("-s,--scenario", scenario_spec)->required();
    study->add_option("--study", study_kind, "coverage | compare | multi-precision");
    study->add_option("-r,--reps", reps, "replications");
    study->add_option("--seed", seed, "master seed");
    study->add_option("-a,--alpha", alpha, "coverage level");
    study->add_option("-j,--jobs", jobs, "worker threads (0 = default)");
    study->add_option("--h-frac", h, "minimum segment fraction");
    study->add_option("--min-events", min_events);
    study->add_flag("--table", with_fit, "emit an aligned text table instead of JSON");
    study->add_option("-o,--out", output);

    auto* plot = app.add_subcommand("plot-data", "standardized score process as CSV series");
    plot->add_option("input", input)->required();
    plot->add_flag("--with-fit", with_fit, "append per-segment fitted-line columns");
    plot->add_option("-K,--k-changepoints", K, "segments for --with-fit");
    plot->add_option("--h-frac", h);
    plot->add_option("--k-mode", k_mode);
    plot->add_option("--epsilon", epsilon);
    plot->add_option("-o,--out", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (fit->parsed()) {
        const auto sample = coxcp::load_sample_file(input);
        coxcp::TimeWindow w;
        w.lo = window_lo;
        if (window_hi) w.hi = *window_hi;
        const coxcp::CoxFit f = coxcp::fit_cox(sample, w);
        emit(coxcp::to_json(f), output);
        if (!f.converged) {
            std::cerr << "coxcp: fit did not converge\n";
            return 3;
        }
        return 0;
    }

    if (region->parsed()) {
        if (!(alpha > 0.0 && alpha < 1.0)) throw coxcp::DataError("alpha must lie in (0, 1)");
        const auto sample = coxcp::load_sample_file(input);
        const coxcp::ProfilePath profile = coxcp::profile_fit(sample, min_events);
        const coxcp::SingleCpFit f = coxcp::estimate_single_changepoint(profile);
        const coxcp::ChangepointRegion cr = coxcp::confidence_region(profile, alpha);
        emit(coxcp::to_json(f, cr), output);
        return 0;
    }

    if (detect->parsed()) {
        if (K < 2) throw coxcp::DataError("detect needs at least K = 2 segments");
        const auto sample = coxcp::load_sample_file(input);
        const coxcp::ScorePath path = path_for(sample, k_mode, epsilon);
        const coxcp::SegmentationResult seg = coxcp::detect_changepoints(path, K, h);
        const coxcp::MultiCpFit f = coxcp::fit_multi_model(sample, seg.breakpoint_times);
        emit(coxcp::to_json(f, seg), output);
        return 0;
    }

    if (simulate->parsed()) {
        coxcp::Scenario sc = resolve_scenario(scenario_spec);
        if (simulate->count("--seed") > 0) sc.seed = seed;
        sc = coxcp::calibrated(sc);
        const auto sample = coxcp::generate_dataset(sc, rep_index);
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!output.empty()) {
            file.open(output);
            if (!file) throw coxcp::DataError("cannot write " + output);
            out = &file;
        }
        out->precision(17);
        *out << "time,status,covariate\n";
        for (std::size_t i = 0; i < sample.size(); ++i)
            *out << sample.time(i) << ',' << int(sample.status(i)) << ',' << sample.covariate(i)
                 << '\n';
        return 0;
    }

    if (study->parsed()) {
        coxcp::Scenario sc = resolve_scenario(scenario_spec);
        if (study->count("--seed") > 0) sc.seed = seed;
        coxcp::StudyOptions opts;
        opts.replications = reps;
        opts.alpha = alpha;
        opts.jobs = jobs;
        opts.h = h;
        opts.min_events_per_side = min_events;
        json j;
        std::string table;
        if (study_kind == "coverage") {
            const auto res = coxcp::run_coverage_study(sc, opts);
            j = coxcp::to_json(res);
            table = coxcp::coverage_table(sc, res);
        } else if (study_kind == "compare") {
            const auto res = coxcp::run_estimator_comparison(sc, opts);
            j = coxcp::to_json(res);
            table = coxcp::comparison_table(sc, res);
        } else if (study_kind == "multi-precision") {
            const auto res = coxcp::run_multi_precision_study(sc, opts);
            j = coxcp::to_json(res);
            table = coxcp::precision_table(sc, res);
        } else {
            throw coxcp::DataError("unknown study kind '" + study_kind + "'");
        }
        if (with_fit) { // --table
            if (output.empty())
                std::cout << table;
            else {
                std::ofstream out(output);
                out << table;
            }
        } else {
            emit(j, output);
        }
        return 0;
    }

    if (plot->parsed()) {
        const auto sample = coxcp::load_sample_file(input);
        const coxcp::ScorePath path = path_for(sample, k_mode, epsilon);
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!output.empty()) {
            file.open(output);
            if (!file) throw coxcp::DataError("cannot write " + output);
            out = &file;
        }
        if (with_fit) {
            const coxcp::SegmentationResult seg = coxcp::detect_changepoints(path, K, h);
            coxcp::write_score_path_csv(*out, path, seg);
        } else {
            coxcp::write_score_path_csv(*out, path);
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const coxcp::DataError& e) {
        std::cerr << "coxcp: " << e.what() << '\n';
        return 2;
    } catch (const coxcp::NumericalError& e) {
        std::cerr << "coxcp: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "coxcp: " << e.what() << '\n';
        return 1;
    }
}
