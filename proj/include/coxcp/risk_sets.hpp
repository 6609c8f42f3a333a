#pragma once
#include <cstddef>
#include <vector>

#include "coxcp/survival_data.hpp"

namespace coxcp {

// Values of S^(0), S^(1), S^(2) at one (beta, t), each (1/n) sum over the
// risk set {j : X_j >= t} of exp(beta*Z_j) * Z_j^r, with the conditional
// mean e = s1/s0 and variance v = s2/s0 - (s1/s0)^2 they induce.
struct RiskAggregates {
    double s0, s1, s2;
    double e;
    double v;
};

// Direct O(n) evaluation. Throws DataError when the risk set at t is empty.
RiskAggregates risk_aggregates(const SurvivalSample& sample, double beta, double t);

// Suffix sums of centred exponential weights over the sorted sample,
// rebuilt once per beta and shared by every event-time evaluation: a full
// likelihood/score/information pass costs O(n) regardless of how many
// events it touches. Centring z at the sample midrange keeps exp() in
// range without changing e - z_center, v, or the log partial likelihood.
class RiskSuffixSums {
public:
    RiskSuffixSums() = default;

    void rebuild(const SurvivalSample& sample, double beta);

    // All quantities below are for the risk set starting at sorted index rs
    // (= sample.risk_start(i) for an evaluation at time_[i]).
    double sum_w(std::size_t rs) const { return sw_[rs]; }
    double mean_centered(std::size_t rs) const { return swz_[rs] / sw_[rs]; }
    double variance(std::size_t rs) const {
        const double e = swz_[rs] / sw_[rs];
        const double v = swz2_[rs] / sw_[rs] - e * e;
        return v > 0.0 ? v : 0.0;
    }

    double center() const { return center_; }

private:
    std::vector<double> sw_, swz_, swz2_;
    double center_ = 0.0;
};

} // namespace coxcp
