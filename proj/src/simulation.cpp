#include "coxcp/simulation.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "coxcp/errors.hpp"

namespace coxcp {

CovariateDist CovariateDist::bernoulli(double p) {
    CovariateDist d;
    d.kind = CovariateKind::bernoulli;
    d.p = p;
    return d;
}
CovariateDist CovariateDist::uniform() { return {}; }
CovariateDist CovariateDist::normal(double mean, double var) {
    CovariateDist d;
    d.kind = CovariateKind::normal;
    d.mean = mean;
    d.var = var;
    return d;
}
CovariateDist CovariateDist::exponential(double rate) {
    CovariateDist d;
    d.kind = CovariateKind::exponential;
    d.rate = rate;
    return d;
}

double cumulative_hazard(double t, double z, const StepFunction& beta0, double lambda0) {
    if (t <= 0.0) return 0.0;
    const auto& cuts = beta0.cutpoints();
    const auto& vals = beta0.values();
    double h = 0.0;
    double lo = 0.0;
    for (std::size_t j = 0; j < cuts.size(); ++j) {
        const double hi = std::min(cuts[j], t);
        if (hi > lo) h += lambda0 * std::exp(vals[j] * z) * (hi - lo);
        if (t <= cuts[j]) return h;
        lo = cuts[j];
    }
    h += lambda0 * std::exp(vals.back() * z) * (t - lo);
    return h;
}

double draw_event_time(double z, const StepFunction& beta0, double lambda0, double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("draw_event_time: u must lie in (0, 1)");
    const double target = -std::log(u);
    const auto& cuts = beta0.cutpoints();
    const auto& vals = beta0.values();
    double acc = 0.0;
    double lo = 0.0;
    for (std::size_t j = 0; j < cuts.size(); ++j) {
        const double rate = lambda0 * std::exp(vals[j] * z);
        const double acc_end = acc + rate * (cuts[j] - lo);
        if (target <= acc_end) return lo + (target - acc) / rate;
        acc = acc_end;
        lo = cuts[j];
    }
    const double rate = lambda0 * std::exp(vals.back() * z);
    return lo + (target - acc) / rate;
}

std::mt19937_64 replication_rng(std::uint64_t seed, std::uint64_t replication) {
    auto mix = [](std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    };
    return std::mt19937_64(mix(mix(seed) + replication));
}

double draw_uniform(std::mt19937_64& rng) {
    double u;
    do {
        u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    } while (u <= 0.0);
    return u;
}

double draw_covariate(const CovariateDist& dist, std::mt19937_64& rng) {
    switch (dist.kind) {
        case CovariateKind::bernoulli:
            return draw_uniform(rng) < dist.p ? 1.0 : 0.0;
        case CovariateKind::uniform01:
            return draw_uniform(rng);
        case CovariateKind::normal: {
            const double u1 = draw_uniform(rng);
            const double u2 = draw_uniform(rng);
            const double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            return dist.mean + std::sqrt(dist.var) * g;
        }
        case CovariateKind::exponential:
            return -std::log(draw_uniform(rng)) / dist.rate;
    }
    throw std::logic_error("unknown covariate kind");
}

namespace {

double draw_censoring(CensoringKind kind, double parameter, std::mt19937_64& rng) {
    switch (kind) {
        case CensoringKind::none:
            return std::numeric_limits<double>::infinity();
        case CensoringKind::uniform:
            return parameter * draw_uniform(rng);
        case CensoringKind::exponential:
            return -std::log(draw_uniform(rng)) / parameter;
    }
    throw std::logic_error("unknown censoring kind");
}

constexpr std::uint64_t kCalibrationSeed = 0x5CA1AB1EULL;

} // namespace

double calibrate_censoring(const Scenario& scenario, double target_fraction,
                           std::size_t pilot_size) {
    if (!(target_fraction > 0.0 && target_fraction < 1.0))
        throw std::invalid_argument("calibration target must lie in (0, 1)");
    if (scenario.censoring == CensoringKind::none)
        throw std::invalid_argument("cannot calibrate a scenario without censoring");

    // Common pilot draws reused across parameter values keep the censored
    // fraction monotone in the parameter.
    std::mt19937_64 rng = replication_rng(kCalibrationSeed, 0);
    std::vector<double> event_time(pilot_size), cens_u(pilot_size);
    for (std::size_t i = 0; i < pilot_size; ++i) {
        const double z = draw_covariate(scenario.covariate, rng);
        event_time[i] = draw_event_time(z, scenario.beta0, scenario.lambda0, draw_uniform(rng));
        cens_u[i] = draw_uniform(rng);
    }
    const bool exponential = scenario.censoring == CensoringKind::exponential;
    const auto fraction = [&](double parameter) {
        std::size_t censored = 0;
        for (std::size_t i = 0; i < pilot_size; ++i) {
            const double c = exponential ? -std::log(cens_u[i]) / parameter : parameter * cens_u[i];
            if (event_time[i] > c) ++censored;
        }
        return static_cast<double>(censored) / static_cast<double>(pilot_size);
    };
    // exponential rate: fraction increases with the parameter;
    // uniform upper end: fraction decreases with it.
    const double direction = exponential ? 1.0 : -1.0;
    double lo = 1e-8, hi = 1e8;
    if (direction * (fraction(lo) - target_fraction) > 0.0 ||
        direction * (fraction(hi) - target_fraction) < 0.0)
        throw NumericalError("censoring target unreachable within the parameter bracket");

    double mid = 0.0;
    for (int step = 0; step < 60; ++step) {
        mid = std::sqrt(lo * hi); // geometric bisection over several decades
        const double f = fraction(mid);
        if (std::fabs(f - target_fraction) <= 0.005) return mid;
        if (direction * (f - target_fraction) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    throw NumericalError("censoring calibration did not reach the target after 60 bisection steps");
}

Scenario calibrated(Scenario scenario) {
    if (scenario.target_fraction.has_value()) {
        const double target = *scenario.target_fraction;
        if (target == 0.0) {
            scenario.censoring = CensoringKind::none;
            scenario.censoring_parameter = 0.0;
        } else {
            scenario.censoring_parameter = calibrate_censoring(scenario, target);
        }
        scenario.target_fraction.reset();
    }
    return scenario;
}

SurvivalSample generate_dataset(const Scenario& scenario) { return generate_dataset(scenario, 0); }

SurvivalSample generate_dataset(const Scenario& scenario, std::uint64_t replication) {
    if (scenario.n == 0) throw std::invalid_argument("scenario sample size is zero");
    if (scenario.target_fraction.has_value())
        throw std::invalid_argument("scenario still carries an uncalibrated censoring target");
    std::mt19937_64 rng = replication_rng(scenario.seed, replication);
    std::vector<SurvivalRecord> records;
    records.reserve(scenario.n);
    for (std::size_t i = 0; i < scenario.n; ++i) {
        const double z = draw_covariate(scenario.covariate, rng);
        const double t = draw_event_time(z, scenario.beta0, scenario.lambda0, draw_uniform(rng));
        const double c = draw_censoring(scenario.censoring, scenario.censoring_parameter, rng);
        records.push_back({std::min(t, c), t <= c ? 1 : 0, z});
    }
    return SurvivalSample(std::move(records));
}

Scenario paper_scenario(int id) {
    Scenario s;
    s.covariate = CovariateDist::uniform();
    s.lambda0 = 1.0;
    s.n = 1000;
    s.seed = 1;
    switch (id) {
        case 1:
            s.beta0 = StepFunction({0.5}, {0.5, 0.0});
            s.censoring = CensoringKind::uniform;
            break;
        case 2:
            s.beta0 = StepFunction({0.4}, {1.0, 0.0});
            s.censoring = CensoringKind::uniform;
            break;
        case 3:
            s.beta0 = StepFunction({0.3}, {1.5, 0.0});
            s.censoring = CensoringKind::uniform;
            break;
        case 4:
            s.beta0 = StepFunction({0.2}, {2.0, 0.0});
            s.censoring = CensoringKind::uniform;
            break;
        case 5:
            s.beta0 = StepFunction({0.2, 0.6}, {1.0, 0.0, -1.0});
            s.censoring = CensoringKind::exponential;
            break;
        case 6:
            s.beta0 = StepFunction({0.5, 1.1, 2.4}, {-1.0, 0.0, 0.5, 1.0});
            s.censoring = CensoringKind::exponential;
            break;
        case 7:
            s.beta0 = StepFunction({0.1, 0.2, 0.3, 0.6}, {2.0, 0.0, -1.0, 0.0, 1.5});
            s.censoring = CensoringKind::exponential;
            break;
        default:
            throw std::invalid_argument("unknown scenario id " + std::to_string(id));
    }
    s.target_fraction = 0.30;
    return s;
}

Scenario coverage_grid_scenario(CovariateKind covariate, std::size_t n, double censoring_pct,
                                double gamma0) {
    Scenario s;
    s.beta0 = StepFunction({gamma0}, {1.0, 0.0});
    s.lambda0 = 1.0;
    s.n = n;
    s.seed = 1;
    switch (covariate) {
        case CovariateKind::bernoulli:
            s.covariate = CovariateDist::bernoulli(0.5);
            break;
        case CovariateKind::uniform01:
            s.covariate = CovariateDist::uniform();
            break;
        case CovariateKind::normal:
            s.covariate = CovariateDist::normal(0.5, 0.25);
            break;
        case CovariateKind::exponential:
            s.covariate = CovariateDist::exponential(0.5);
            break;
    }
    if (censoring_pct > 0.0) {
        s.censoring = CensoringKind::exponential;
        s.target_fraction = censoring_pct / 100.0;
    }
    return s;
}

} // namespace coxcp
