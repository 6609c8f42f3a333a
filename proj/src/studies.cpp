#include "coxcp/studies.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coxcp/errors.hpp"
#include "coxcp/segmentation.hpp"
#include "coxcp/single_changepoint.hpp"

namespace coxcp {

namespace par {
int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}
void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}
} // namespace par

namespace {

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
    MeanSd out;
    const double n = static_cast<double>(xs.size());
    if (xs.empty()) return out;
    for (double x : xs) out.mean += x;
    out.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.sd = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

int resolve_jobs(const StudyOptions& opts) { return opts.jobs > 0 ? opts.jobs : par::max_threads(); }

} // namespace

std::vector<double> ls_changepoints(const SurvivalSample& sample, int K, const StudyOptions& opts) {
    const std::size_t requested = choose_k(sample, opts.k_mode, opts.epsilon);
    const std::size_t k = usable_k(sample, requested);
    if (k < 2) throw NumericalError("score path grid degenerates before two usable failures");
    const ScorePath path = standardized_score_path(sample, k);
    const SegmentationResult seg = detect_changepoints(path, K, opts.h);
    return seg.breakpoint_times;
}

CoverageStudyResult run_coverage_study(const Scenario& scenario, const StudyOptions& opts) {
    if (scenario.beta0.cutpoints().size() != 1)
        throw std::invalid_argument("coverage study needs a single-changepoint scenario");
    const Scenario sc = calibrated(scenario);
    const double gamma0 = sc.beta0.cutpoints()[0];
    const int reps = opts.replications;

    std::vector<int> outcome(reps, -1); // 1 = excluded, 0 = covered, -1 = failed
    const int jobs = resolve_jobs(opts);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (int r = 0; r < reps; ++r) {
        try {
            const SurvivalSample sample = generate_dataset(sc, static_cast<std::uint64_t>(r));
            const ProfilePath profile = profile_fit_serial(sample, opts.min_events_per_side);
            const ChangepointRegion region = confidence_region(profile, opts.alpha);
            outcome[r] = region_covers(sample, region, gamma0) ? 0 : 1;
        } catch (const std::exception&) {
            outcome[r] = -1;
        }
    }

    CoverageStudyResult res;
    res.replications = reps;
    int usable = 0, excluded = 0;
    for (int r = 0; r < reps; ++r) {
        if (outcome[r] < 0) {
            ++res.failures;
            continue;
        }
        ++usable;
        excluded += outcome[r];
    }
    if (usable == 0) throw NumericalError("coverage study: every replication failed");
    const double p = static_cast<double>(excluded) / static_cast<double>(usable);
    res.level_percent = 100.0 * p;
    res.mc_std_error = 100.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(usable));
    return res;
}

EstimatorComparisonResult run_estimator_comparison(const Scenario& scenario,
                                                   const StudyOptions& opts) {
    if (scenario.beta0.cutpoints().size() != 1)
        throw std::invalid_argument("estimator comparison needs a single-changepoint scenario");
    const Scenario sc = calibrated(scenario);
    const int reps = opts.replications;

    std::vector<double> pl(reps), ls(reps);
    std::vector<char> ok(reps, 0);
    const int jobs = resolve_jobs(opts);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (int r = 0; r < reps; ++r) {
        try {
            const SurvivalSample sample = generate_dataset(sc, static_cast<std::uint64_t>(r));
            pl[r] = estimate_single_changepoint(
                        profile_fit_serial(sample, opts.min_events_per_side))
                        .gamma_hat;
            ls[r] = ls_changepoints(sample, 2, opts).at(0);
            ok[r] = 1;
        } catch (const std::exception&) {
            ok[r] = 0;
        }
    }

    EstimatorComparisonResult res;
    res.replications = reps;
    std::vector<double> pls, lss;
    for (int r = 0; r < reps; ++r) {
        if (!ok[r]) {
            ++res.failures;
            continue;
        }
        pls.push_back(pl[r]);
        lss.push_back(ls[r]);
    }
    if (pls.empty()) throw NumericalError("estimator comparison: every replication failed");
    const MeanSd mp = mean_sd(pls), ml = mean_sd(lss);
    res.pl_mean = mp.mean;
    res.pl_sd = mp.sd;
    res.pl_mc_se = mp.sd / std::sqrt(static_cast<double>(pls.size()));
    res.ls_mean = ml.mean;
    res.ls_sd = ml.sd;
    res.ls_mc_se = ml.sd / std::sqrt(static_cast<double>(lss.size()));
    return res;
}

MultiPrecisionResult run_multi_precision_study(const Scenario& scenario, const StudyOptions& opts) {
    const std::size_t n_cp = scenario.beta0.cutpoints().size();
    if (n_cp < 2) throw std::invalid_argument("precision study needs at least 3 segments");
    const Scenario sc = calibrated(scenario);
    const int reps = opts.replications;
    const int K = static_cast<int>(n_cp) + 1;

    std::vector<std::vector<double>> est(reps);
    const int jobs = resolve_jobs(opts);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (int r = 0; r < reps; ++r) {
        try {
            const SurvivalSample sample = generate_dataset(sc, static_cast<std::uint64_t>(r));
            est[r] = ls_changepoints(sample, K, opts);
        } catch (const std::exception&) {
            est[r].clear();
        }
    }

    MultiPrecisionResult res;
    res.replications = reps;
    std::vector<std::vector<double>> per_cp(n_cp);
    for (int r = 0; r < reps; ++r) {
        if (est[r].size() != n_cp) {
            ++res.failures;
            continue;
        }
        for (std::size_t j = 0; j < n_cp; ++j) per_cp[j].push_back(est[r][j]);
    }
    if (per_cp[0].empty()) throw NumericalError("precision study: every replication failed");
    for (std::size_t j = 0; j < n_cp; ++j) {
        const MeanSd ms = mean_sd(per_cp[j]);
        res.mean.push_back(ms.mean);
        res.sd.push_back(ms.sd);
        res.mc_se.push_back(ms.sd / std::sqrt(static_cast<double>(per_cp[j].size())));
    }
    return res;
}

} // namespace coxcp
