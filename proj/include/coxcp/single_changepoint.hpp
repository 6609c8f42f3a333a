#pragma once
#include <cstddef>
#include <vector>

#include "coxcp/cox_fit.hpp"
#include "coxcp/survival_data.hpp"

namespace coxcp {

// One candidate changepoint gamma (a failure time) with both-side fits:
// beta1 on (0, gamma], beta2 on (gamma, inf), the split log likelihood
// L1 + L2, the null informations V1/V2 and the standardized statistics
// S_i = sqrt(n * V_i) * beta_i. `ok` is false when either side's Newton
// run diverged or degenerated; such candidates stay in the path but take
// no part in argmax or sup computations.
struct ProfileCandidate {
    double gamma = 0.0;
    double beta1 = 0.0, beta2 = 0.0;
    double se1 = 0.0, se2 = 0.0;
    double loglik = 0.0;
    double v1 = 0.0, v2 = 0.0;
    double s1 = 0.0, s2 = 0.0;
    bool ok = false;
};

struct ProfilePath {
    std::vector<ProfileCandidate> candidates;
    double full_information = 0.0; // information(0, full window)
    std::size_t n = 0;
};

// Profiles every distinct failure time leaving at least min_events_per_side
// events on each side. Candidates are independent; the default entry point
// runs them across OpenMP threads, the _serial variant is the reference
// implementation (identical output, kept for tests and benchmarks).
ProfilePath profile_fit(const SurvivalSample& sample, std::size_t min_events_per_side = 5);
ProfilePath profile_fit_serial(const SurvivalSample& sample, std::size_t min_events_per_side = 5);

struct SingleCpFit {
    double gamma_hat = 0.0;
    double beta1 = 0.0, beta2 = 0.0;
    double se1 = 0.0, se2 = 0.0;
    double loglik = 0.0;
};

// argmax of L1 + L2 over usable candidates, ties toward the smallest gamma.
SingleCpFit estimate_single_changepoint(const ProfilePath& profile);
SingleCpFit estimate_single_changepoint(const SurvivalSample& sample,
                                        std::size_t min_events_per_side = 5);

enum class SupStatistic { m1, m2 };

struct ChangepointRegion {
    double alpha = 0.0;
    SupStatistic statistic = SupStatistic::m1;
    double m_value = 0.0;
    double threshold = 0.0;      // m_value^2 - upper-alpha chi^2_1 quantile
    std::vector<double> members; // candidate gammas with S(gamma)^2 > threshold
    double hull_lo = 0.0, hull_hi = 0.0;
};

// Davies-type confidence region. The statistic follows the larger fitted
// coefficient at the likelihood argmax: M1 = sup S1 when beta1 > beta2,
// M2 = sup S2 otherwise.
ChangepointRegion confidence_region(const ProfilePath& profile, double alpha);
ChangepointRegion confidence_region(const SurvivalSample& sample, double alpha,
                                    std::size_t min_events_per_side = 5);

// Upper-alpha quantile of chi^2 with one degree of freedom.
double chi_squared_upper_quantile(double alpha);

// S_1 or S_2 evaluated directly at an arbitrary gamma (not necessarily a
// candidate); used to decide whether a region covers a given time.
double statistic_at(const SurvivalSample& sample, double gamma, SupStatistic which);
bool region_covers(const SurvivalSample& sample, const ChangepointRegion& region, double gamma0);

} // namespace coxcp
