#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "coxcp/score_process.hpp"
#include "coxcp/simulation.hpp"

namespace coxcp {

struct StudyOptions {
    int replications = 100;
    double alpha = 0.10;              // coverage studies
    int jobs = 0;                     // 0 = library default thread count
    std::size_t min_events_per_side = 5;
    double h = 0.15;                  // minimum segment fraction
    KMode k_mode = KMode::observed;
    double epsilon = 0.05;            // deterministic k mode
};

// Replications run in parallel over per-replication RNG streams; each slot
// is aggregated serially afterwards, so results do not depend on the worker
// count. Failed replications are counted and left out of the statistics.

struct CoverageStudyResult {
    int replications = 0;
    int failures = 0;
    double level_percent = 0.0;  // % of usable replications excluding gamma0
    double mc_std_error = 0.0;   // percentage points
};

CoverageStudyResult run_coverage_study(const Scenario& scenario, const StudyOptions& opts);

struct EstimatorComparisonResult {
    int replications = 0;
    int failures = 0;
    double pl_mean = 0.0, pl_sd = 0.0, pl_mc_se = 0.0;
    double ls_mean = 0.0, ls_sd = 0.0, ls_mc_se = 0.0;
};

EstimatorComparisonResult run_estimator_comparison(const Scenario& scenario,
                                                   const StudyOptions& opts);

struct MultiPrecisionResult {
    int replications = 0;
    int failures = 0;
    std::vector<double> mean, sd, mc_se; // one entry per changepoint
};

MultiPrecisionResult run_multi_precision_study(const Scenario& scenario, const StudyOptions& opts);

// Least-squares changepoint estimate: score path on the usable event grid,
// then RSS-optimal segmentation into K pieces. Shared by the comparison
// study, the precision study, and the detect command.
std::vector<double> ls_changepoints(const SurvivalSample& sample, int K, const StudyOptions& opts);

namespace par {
int max_threads();
void set_threads(int n);
} // namespace par

} // namespace coxcp
