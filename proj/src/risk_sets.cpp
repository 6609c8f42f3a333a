#include "coxcp/risk_sets.hpp"

#include <cmath>
#include <string>

#include "coxcp/errors.hpp"

namespace coxcp {

RiskAggregates risk_aggregates(const SurvivalSample& sample, double beta, double t) {
    const std::size_t n = sample.size();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    std::size_t at_risk = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (sample.time(j) < t) continue;
        const double z = sample.covariate(j);
        const double w = std::exp(beta * z);
        s0 += w;
        s1 += w * z;
        s2 += w * z * z;
        ++at_risk;
    }
    if (at_risk == 0) throw DataError("empty risk set at t=" + std::to_string(t));
    const double dn = static_cast<double>(n);
    RiskAggregates agg;
    agg.s0 = s0 / dn;
    agg.s1 = s1 / dn;
    agg.s2 = s2 / dn;
    agg.e = agg.s1 / agg.s0;
    agg.v = agg.s2 / agg.s0 - agg.e * agg.e;
    if (agg.v < 0.0) agg.v = 0.0;
    return agg;
}

void RiskSuffixSums::rebuild(const SurvivalSample& sample, double beta) {
    const std::size_t n = sample.size();
    center_ = sample.covariate_center();
    sw_.resize(n + 1);
    swz_.resize(n + 1);
    swz2_.resize(n + 1);
    sw_[n] = swz_[n] = swz2_[n] = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        const double zc = sample.covariate(i) - center_;
        const double w = std::exp(beta * zc);
        sw_[i] = sw_[i + 1] + w;
        swz_[i] = swz_[i + 1] + w * zc;
        swz2_[i] = swz2_[i + 1] + w * zc * zc;
    }
}

} // namespace coxcp
