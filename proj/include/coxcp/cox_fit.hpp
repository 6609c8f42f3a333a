#pragma once
#include <cstddef>
#include <limits>

#include "coxcp/risk_sets.hpp"
#include "coxcp/survival_data.hpp"

namespace coxcp {

// Half-open-on-the-left time window: selects events with lo < X_i <= hi.
// (0, gamma] holds the events with X_i <= gamma and (gamma, inf) the rest,
// so the two windows split the log partial likelihood at gamma.
struct TimeWindow {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    static TimeWindow full() { return {}; }
    static TimeWindow left_of(double gamma) { return {0.0, gamma}; }
    static TimeWindow right_of(double gamma) {
        return {gamma, std::numeric_limits<double>::infinity()};
    }

    bool contains(double x) const { return x > lo && x <= hi; }
};

struct LikelihoodDerivatives {
    double loglik;      // (1/n) sum over window events of beta*z_i - log(n*s0)
    double score;       // (1/n) sum of z_i - e(beta, x_i)
    double information; // (1/n) sum of v(beta, x_i)
    std::size_t n_events;
};

// One O(n) pass; ws is rebuilt at the requested beta.
LikelihoodDerivatives likelihood_derivatives(const SurvivalSample& sample, double beta,
                                             TimeWindow window, RiskSuffixSums& ws);
LikelihoodDerivatives likelihood_derivatives(const SurvivalSample& sample, double beta,
                                             TimeWindow window);

double log_partial_likelihood(const SurvivalSample& sample, double beta, TimeWindow window);
double score(const SurvivalSample& sample, double beta, TimeWindow window);
double information(const SurvivalSample& sample, double beta, TimeWindow window);

struct NewtonOptions {
    double score_tol = 1e-8;
    int max_iterations = 50;
    double beta_bound = 50.0; // |beta| beyond this is treated as divergence
};

struct CoxFit {
    double beta_hat = 0.0;
    double std_err = std::numeric_limits<double>::quiet_NaN();
    double loglik = 0.0;
    std::size_t n_events_in_window = 0;
    int iterations = 0;
    bool converged = false;
};

// Newton-Raphson from beta = 0 with step-halving on likelihood decrease.
// Divergence (|beta| past the bound, or a vanishing information mid-run)
// leaves converged = false with the last iterate. A window whose events
// carry no covariate variation at all raises NumericalError; an event-free
// window raises DataError.
CoxFit fit_cox(const SurvivalSample& sample, TimeWindow window, const NewtonOptions& opts = {});

} // namespace coxcp
