// Timing comparison of the OpenMP kernels against their serial reference
// implementations: profile fits across candidates, the segmentation cost
// table, and a replication study at different worker counts.
#include <chrono>
#include <cstdio>

#include "coxcp/score_process.hpp"
#include "coxcp/segmentation.hpp"
#include "coxcp/simulation.hpp"
#include "coxcp/single_changepoint.hpp"
#include "coxcp/studies.hpp"

using namespace coxcp;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    std::printf("threads available: %d\n\n", par::max_threads());

    Scenario sc;
    sc.beta0 = StepFunction({0.4}, {1.0, 0.0});
    sc.covariate = CovariateDist::uniform();
    sc.censoring = CensoringKind::exponential;
    sc.censoring_parameter = 0.4;
    sc.n = 3000;
    sc.seed = 7;
    const SurvivalSample sample = generate_dataset(sc);

    auto t0 = std::chrono::steady_clock::now();
    const ProfilePath serial = profile_fit_serial(sample, 5);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const ProfilePath parallel = profile_fit(sample, 5);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.candidates.size() == parallel.candidates.size();
    for (std::size_t i = 0; identical && i < serial.candidates.size(); ++i)
        identical = serial.candidates[i].beta1 == parallel.candidates[i].beta1 &&
                    serial.candidates[i].loglik == parallel.candidates[i].loglik;
    std::printf("profile_fit  n=%zu  candidates=%zu\n", sample.size(), serial.candidates.size());
    std::printf("  serial   %.3fs\n  parallel %.3fs  (outputs identical: %s)\n\n", t_serial,
                t_parallel, identical ? "yes" : "no");

    const std::size_t k = usable_k(sample, sample.n_events());
    const ScorePath path = standardized_score_path(sample, k);
    t0 = std::chrono::steady_clock::now();
    const SegmentCostTable table_serial(path, false);
    const double t_table_serial = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const SegmentCostTable table_parallel(path, true);
    const double t_table_parallel = seconds_since(t0);
    bool table_same = true;
    for (std::size_t i = 1; table_same && i <= path.k; i += 7)
        for (std::size_t j = i + 1; table_same && j <= path.k; j += 11)
            table_same = table_serial.cost(i, j) == table_parallel.cost(i, j);
    std::printf("segment cost table  k=%zu\n", path.k);
    std::printf("  serial   %.3fs\n  parallel %.3fs  (entries identical: %s)\n\n", t_table_serial,
                t_table_parallel, table_same ? "yes" : "no");

    Scenario study_sc = sc;
    study_sc.n = 400;
    StudyOptions opts;
    opts.replications = 24;
    opts.jobs = 1;
    t0 = std::chrono::steady_clock::now();
    const auto r1 = run_estimator_comparison(study_sc, opts);
    const double t_jobs1 = seconds_since(t0);
    opts.jobs = par::max_threads();
    t0 = std::chrono::steady_clock::now();
    const auto rn = run_estimator_comparison(study_sc, opts);
    const double t_jobsn = seconds_since(t0);
    std::printf("estimator comparison study  n=%zu reps=%d\n", study_sc.n, opts.replications);
    std::printf("  jobs=1  %.3fs\n  jobs=%d  %.3fs  (results identical: %s)\n", t_jobs1,
                par::max_threads(), t_jobsn,
                r1.pl_mean == rn.pl_mean && r1.ls_mean == rn.ls_mean ? "yes" : "no");
    return 0;
}
