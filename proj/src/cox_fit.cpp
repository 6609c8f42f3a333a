#include "coxcp/cox_fit.hpp"

#include <algorithm>
#include <cmath>

#include "coxcp/errors.hpp"

namespace coxcp {

namespace {

// Sorted-position range [first, last) of the events inside the window.
std::pair<std::size_t, std::size_t> event_range(const SurvivalSample& sample, TimeWindow w) {
    const auto& events = sample.event_positions();
    const auto cmp_lo = [&](std::size_t pos, double t) { return sample.time(pos) <= t; };
    const auto cmp_hi = [&](double t, std::size_t pos) { return t < sample.time(pos); };
    const std::size_t first = static_cast<std::size_t>(
        std::lower_bound(events.begin(), events.end(), w.lo, cmp_lo) - events.begin());
    const std::size_t last = static_cast<std::size_t>(
        std::upper_bound(events.begin(), events.end(), w.hi, cmp_hi) - events.begin());
    return {first, std::max(first, last)};
}

} // namespace

LikelihoodDerivatives likelihood_derivatives(const SurvivalSample& sample, double beta,
                                             TimeWindow window, RiskSuffixSums& ws) {
    ws.rebuild(sample, beta);
    const auto& events = sample.event_positions();
    const auto [first, last] = event_range(sample, window);
    const double c = ws.center();

    double ll = 0.0, sc = 0.0, inf = 0.0;
    for (std::size_t r = first; r < last; ++r) {
        const std::size_t pos = events[r];
        const std::size_t rs = sample.risk_start(pos);
        const double zc = sample.covariate(pos) - c;
        const double e = ws.mean_centered(rs);
        ll += beta * zc - std::log(ws.sum_w(rs));
        sc += zc - e;
        inf += ws.variance(rs);
    }
    const double dn = static_cast<double>(sample.size());
    return {ll / dn, sc / dn, inf / dn, last - first};
}

LikelihoodDerivatives likelihood_derivatives(const SurvivalSample& sample, double beta,
                                             TimeWindow window) {
    RiskSuffixSums ws;
    return likelihood_derivatives(sample, beta, window, ws);
}

double log_partial_likelihood(const SurvivalSample& sample, double beta, TimeWindow window) {
    return likelihood_derivatives(sample, beta, window).loglik;
}

double score(const SurvivalSample& sample, double beta, TimeWindow window) {
    return likelihood_derivatives(sample, beta, window).score;
}

double information(const SurvivalSample& sample, double beta, TimeWindow window) {
    return likelihood_derivatives(sample, beta, window).information;
}

CoxFit fit_cox(const SurvivalSample& sample, TimeWindow window, const NewtonOptions& opts) {
    RiskSuffixSums ws;
    CoxFit fit;

    LikelihoodDerivatives d = likelihood_derivatives(sample, 0.0, window, ws);
    if (d.n_events == 0) throw DataError("window contains no events");
    fit.n_events_in_window = d.n_events;
    if (d.information <= 0.0)
        throw NumericalError("degenerate fit: no covariate variation at the window's event times");

    double beta = 0.0;
    bool diverged = false;
    while (fit.iterations < opts.max_iterations) {
        if (std::fabs(d.score) <= opts.score_tol) {
            fit.converged = true;
            break;
        }
        if (!(d.information > 0.0) || !std::isfinite(d.score)) {
            diverged = true;
            break;
        }
        double step = d.score / d.information;
        double candidate = beta + step;
        LikelihoodDerivatives dc = likelihood_derivatives(sample, candidate, window, ws);
        int halvings = 0;
        while ((!std::isfinite(dc.loglik) || dc.loglik < d.loglik) && halvings < 40) {
            step *= 0.5;
            candidate = beta + step;
            dc = likelihood_derivatives(sample, candidate, window, ws);
            ++halvings;
        }
        beta = candidate;
        d = dc;
        ++fit.iterations;
        if (std::fabs(beta) > opts.beta_bound) {
            diverged = true;
            break;
        }
    }
    if (!fit.converged && !diverged && std::fabs(d.score) <= opts.score_tol) fit.converged = true;

    fit.beta_hat = beta;
    fit.loglik = d.loglik;
    if (d.information > 0.0)
        fit.std_err = 1.0 / std::sqrt(static_cast<double>(sample.size()) * d.information);
    return fit;
}

} // namespace coxcp
