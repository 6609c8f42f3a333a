#include "coxcp/single_changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "coxcp/errors.hpp"

namespace coxcp {

namespace {

struct CandidateSpec {
    double gamma;
    std::size_t events_left; // events with X_i <= gamma
};

// Distinct failure times with at least m events on each side.
std::vector<CandidateSpec> candidate_times(const SurvivalSample& sample, std::size_t m) {
    const auto& events = sample.event_positions();
    const std::size_t k = events.size();
    std::vector<CandidateSpec> out;
    std::size_t r = 0;
    while (r < k) {
        const double t = sample.time(events[r]);
        std::size_t r_end = r + 1;
        while (r_end < k && sample.time(events[r_end]) == t) ++r_end;
        // r_end = number of events with X_i <= t
        if (r_end >= m && k - r_end >= m) out.push_back({t, r_end});
        r = r_end;
    }
    return out;
}

// Null information prefix: v(0, x) accumulated over failures in time order.
std::vector<double> null_variance_prefix(const SurvivalSample& sample) {
    RiskSuffixSums ws;
    ws.rebuild(sample, 0.0);
    const auto& events = sample.event_positions();
    std::vector<double> prefix(events.size() + 1, 0.0);
    for (std::size_t r = 0; r < events.size(); ++r)
        prefix[r + 1] = prefix[r] + ws.variance(sample.risk_start(events[r]));
    return prefix;
}

void fit_candidate(const SurvivalSample& sample, const CandidateSpec& spec,
                   const std::vector<double>& vprefix, ProfileCandidate& cand) {
    const double n = static_cast<double>(sample.size());
    const std::size_t k = sample.n_events();
    cand.gamma = spec.gamma;
    cand.v1 = vprefix[spec.events_left] / n;
    cand.v2 = (vprefix[k] - vprefix[spec.events_left]) / n;
    try {
        const CoxFit left = fit_cox(sample, TimeWindow::left_of(spec.gamma));
        const CoxFit right = fit_cox(sample, TimeWindow::right_of(spec.gamma));
        cand.beta1 = left.beta_hat;
        cand.beta2 = right.beta_hat;
        cand.se1 = left.std_err;
        cand.se2 = right.std_err;
        cand.loglik = left.loglik + right.loglik;
        cand.s1 = std::sqrt(n * cand.v1) * cand.beta1;
        cand.s2 = std::sqrt(n * cand.v2) * cand.beta2;
        cand.ok = left.converged && right.converged;
    } catch (const NumericalError&) {
        cand.ok = false;
    }
}

ProfilePath profile_fit_impl(const SurvivalSample& sample, std::size_t m, bool parallel) {
    if (m < 1) throw std::invalid_argument("min_events_per_side must be >= 1");
    if (sample.n_events() < 2 * m)
        throw DataError("too few events: need at least " + std::to_string(2 * m));

    const auto specs = candidate_times(sample, m);
    if (specs.empty()) throw DataError("no admissible changepoint candidates");
    const auto vprefix = null_variance_prefix(sample);

    ProfilePath path;
    path.n = sample.size();
    path.full_information = vprefix[sample.n_events()] / static_cast<double>(sample.size());
    path.candidates.resize(specs.size());

    const auto count = static_cast<std::ptrdiff_t>(specs.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < count; ++i)
            fit_candidate(sample, specs[static_cast<std::size_t>(i)], vprefix,
                          path.candidates[static_cast<std::size_t>(i)]);
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i)
            fit_candidate(sample, specs[static_cast<std::size_t>(i)], vprefix,
                          path.candidates[static_cast<std::size_t>(i)]);
    }
    return path;
}

const ProfileCandidate& best_candidate(const ProfilePath& profile) {
    const ProfileCandidate* best = nullptr;
    for (const auto& c : profile.candidates) {
        if (!c.ok) continue;
        if (best == nullptr || c.loglik > best->loglik) best = &c;
    }
    if (best == nullptr) throw NumericalError("every changepoint candidate failed to fit");
    return *best;
}

} // namespace

ProfilePath profile_fit(const SurvivalSample& sample, std::size_t min_events_per_side) {
    return profile_fit_impl(sample, min_events_per_side, true);
}

ProfilePath profile_fit_serial(const SurvivalSample& sample, std::size_t min_events_per_side) {
    return profile_fit_impl(sample, min_events_per_side, false);
}

SingleCpFit estimate_single_changepoint(const ProfilePath& profile) {
    const ProfileCandidate& best = best_candidate(profile);
    return {best.gamma, best.beta1, best.beta2, best.se1, best.se2, best.loglik};
}

SingleCpFit estimate_single_changepoint(const SurvivalSample& sample, std::size_t min_events_per_side) {
    return estimate_single_changepoint(profile_fit(sample, min_events_per_side));
}

double chi_squared_upper_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    static const boost::math::chi_squared_distribution<double> chi1(1.0);
    return boost::math::quantile(chi1, 1.0 - alpha);
}

ChangepointRegion confidence_region(const ProfilePath& profile, double alpha) {
    const ProfileCandidate& best = best_candidate(profile);

    ChangepointRegion region;
    region.alpha = alpha;
    region.statistic = best.beta1 > best.beta2 ? SupStatistic::m1 : SupStatistic::m2;

    double m = -std::numeric_limits<double>::infinity();
    for (const auto& c : profile.candidates) {
        if (!c.ok) continue;
        m = std::max(m, region.statistic == SupStatistic::m1 ? c.s1 : c.s2);
    }
    region.m_value = m;
    region.threshold = m * m - chi_squared_upper_quantile(alpha);

    for (const auto& c : profile.candidates) {
        if (!c.ok) continue;
        const double s = region.statistic == SupStatistic::m1 ? c.s1 : c.s2;
        if (s * s > region.threshold) region.members.push_back(c.gamma);
    }
    if (region.members.empty())
        throw NumericalError("confidence region is empty; the sup statistic maximizer must belong");
    region.hull_lo = region.members.front();
    region.hull_hi = region.members.back();
    return region;
}

ChangepointRegion confidence_region(const SurvivalSample& sample, double alpha,
                                    std::size_t min_events_per_side) {
    return confidence_region(profile_fit(sample, min_events_per_side), alpha);
}

double statistic_at(const SurvivalSample& sample, double gamma, SupStatistic which) {
    const TimeWindow window =
        which == SupStatistic::m1 ? TimeWindow::left_of(gamma) : TimeWindow::right_of(gamma);
    const CoxFit fit = fit_cox(sample, window);
    if (!fit.converged) throw NumericalError("side fit at gamma did not converge");
    const double vi = information(sample, 0.0, window);
    return std::sqrt(static_cast<double>(sample.size()) * vi) * fit.beta_hat;
}

bool region_covers(const SurvivalSample& sample, const ChangepointRegion& region, double gamma0) {
    const double s = statistic_at(sample, gamma0, region.statistic);
    return s * s > region.threshold;
}

} // namespace coxcp
