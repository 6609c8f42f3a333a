#include "coxcp/score_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coxcp/errors.hpp"
#include "coxcp/risk_sets.hpp"

namespace coxcp {

namespace {
constexpr double kVarianceFloor = 1e-12;
}

std::size_t choose_k(const SurvivalSample& sample, KMode mode, double epsilon) {
    const std::size_t khat = sample.n_events();
    if (khat < 2) throw DataError("need at least 2 events to build the rescaled grid");
    if (mode == KMode::observed) return khat;
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const double n = static_cast<double>(sample.size());
    const double alpha_hat = static_cast<double>(khat) / n;
    // Guard the floor against values sitting a few ulp below an integer.
    const double raw = std::floor(n * (alpha_hat - epsilon) + 1e-9);
    auto k = static_cast<long long>(raw);
    k = std::max<long long>(2, std::min<long long>(k, static_cast<long long>(khat)));
    return static_cast<std::size_t>(k);
}

RescaledSample rescale_times(const SurvivalSample& sample, std::size_t k) {
    if (k < 2) throw std::invalid_argument("rescale_times: k must be >= 2");
    const std::size_t n = sample.size();
    RescaledSample out;
    out.k = k;
    out.phi.resize(n);
    out.event_times.reserve(sample.n_events());
    for (std::size_t pos : sample.event_positions()) out.event_times.push_back(sample.time(pos));

    // nbar[i] = number of failures with X_j <= X_i; events get phi = nbar/k,
    // the j-th of g censorings sharing a nbar value gets (nbar*g + j) / (g*k).
    std::vector<std::size_t> nbar(n);
    std::size_t events_so_far = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sample.status(i)) {
            ++events_so_far;
            nbar[i] = events_so_far;
        } else {
            // ties: an event at the same time precedes, so it is counted.
            nbar[i] = events_so_far;
        }
    }
    const double dk = static_cast<double>(k);
    std::size_t i = 0;
    std::size_t event_rank = 0;
    while (i < n) {
        if (sample.status(i)) {
            ++event_rank;
            out.phi[i] = static_cast<double>(event_rank) / dk;
            ++i;
            continue;
        }
        // run of consecutive censorings sharing this nbar value; the gap
        // opener (previous failure, or the grid origin when none) counts as
        // one group member, so the run spreads evenly across (m/k, (m+1)/k)
        std::size_t j = i;
        while (j < n && !sample.status(j) && nbar[j] == nbar[i]) ++j;
        const std::size_t run = j - i;
        const double group = static_cast<double>(run + 1);
        const double m = static_cast<double>(nbar[i]);
        for (std::size_t r = 0; r < run; ++r) {
            const double before = static_cast<double>(r + 1);
            out.phi[i + r] = (m * group + before) / (group * dk);
        }
        i = j;
    }
    return out;
}

ScorePath standardized_score_path(const SurvivalSample& sample, std::size_t k) {
    if (k < 2) throw std::invalid_argument("standardized_score_path: k must be >= 2");
    if (k > sample.n_events())
        throw std::invalid_argument("standardized_score_path: k exceeds the number of events");

    RiskSuffixSums ws;
    ws.rebuild(sample, 0.0);
    const double c = ws.center();
    const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));

    ScorePath path;
    path.k = k;
    path.values.resize(k + 1);
    path.event_times.resize(k + 1);
    path.values[0] = 0.0;
    path.event_times[0] = std::numeric_limits<double>::quiet_NaN();

    const auto& events = sample.event_positions();
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t pos = events[r];
        const std::size_t rs = sample.risk_start(pos);
        const double v = ws.variance(rs);
        if (!(v > kVarianceFloor))
            throw NumericalError("degenerate risk-set variance at failure " + std::to_string(r + 1) +
                                 " (t=" + std::to_string(sample.time(pos)) + ")");
        const double incr = inv_sqrt_k * (sample.covariate(pos) - c - ws.mean_centered(rs)) / std::sqrt(v);
        path.values[r + 1] = path.values[r] + incr;
        path.event_times[r + 1] = sample.time(pos);
    }
    return path;
}

std::size_t usable_k(const SurvivalSample& sample, std::size_t k_max) {
    RiskSuffixSums ws;
    ws.rebuild(sample, 0.0);
    const auto& events = sample.event_positions();
    const std::size_t cap = std::min(k_max, events.size());
    std::size_t k = 0;
    while (k < cap) {
        const double v = ws.variance(sample.risk_start(events[k]));
        if (!(v > kVarianceFloor)) break;
        ++k;
    }
    return k;
}

double interpolate(const ScorePath& path, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("interpolate: t must lie in [0, 1]");
    const double x = t * static_cast<double>(path.k);
    const auto lo = static_cast<std::size_t>(std::floor(x));
    if (lo >= path.k) return path.values[path.k];
    const double frac = x - static_cast<double>(lo);
    return path.values[lo] + frac * (path.values[lo + 1] - path.values[lo]);
}

} // namespace coxcp
