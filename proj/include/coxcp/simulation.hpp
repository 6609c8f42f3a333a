#pragma once
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "coxcp/step_function.hpp"
#include "coxcp/survival_data.hpp"

namespace coxcp {

enum class CovariateKind { bernoulli, uniform01, normal, exponential };

struct CovariateDist {
    CovariateKind kind = CovariateKind::uniform01;
    double p = 0.5;     // bernoulli
    double mean = 0.5;  // normal
    double var = 0.25;  // normal
    double rate = 0.5;  // exponential

    static CovariateDist bernoulli(double p = 0.5);
    static CovariateDist uniform();
    static CovariateDist normal(double mean = 0.5, double var = 0.25);
    static CovariateDist exponential(double rate = 0.5);
};

enum class CensoringKind { none, uniform, exponential };

// Hazard lambda0 * exp(beta0(t) * z) for the failure time; censoring is
// either off, uniform on (0, parameter], or exponential with the given
// rate. When target_fraction is set the parameter is calibrated before any
// dataset is drawn.
struct Scenario {
    StepFunction beta0 = StepFunction::constant(0.0);
    double lambda0 = 1.0;
    CovariateDist covariate;
    CensoringKind censoring = CensoringKind::none;
    double censoring_parameter = 0.0;
    std::optional<double> target_fraction;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

// Unique t with integrated hazard H(t | z) = -log(u); the cumulative hazard
// is piecewise linear in t, so each segment inverts in closed form.
double draw_event_time(double z, const StepFunction& beta0, double lambda0, double u);
double cumulative_hazard(double t, double z, const StepFunction& beta0, double lambda0);

// Bisection on the censoring parameter against a pilot Monte Carlo with a
// fixed calibration seed (common draws across parameter values), until the
// pilot censored fraction is within 0.005 of the target.
double calibrate_censoring(const Scenario& scenario, double target_fraction,
                           std::size_t pilot_size = 100000);

// Returns the scenario with target_fraction resolved into a parameter.
Scenario calibrated(Scenario scenario);

// Counter-based stream: replication r of master seed s always produces the
// same engine, whatever thread picks it up.
std::mt19937_64 replication_rng(std::uint64_t seed, std::uint64_t replication);

SurvivalSample generate_dataset(const Scenario& scenario);
SurvivalSample generate_dataset(const Scenario& scenario, std::uint64_t replication);

// Uniform draw in (0, 1); never returns 0.
double draw_uniform(std::mt19937_64& rng);
double draw_covariate(const CovariateDist& dist, std::mt19937_64& rng);

// Preset catalog: ids 1-7 are the single- and multiple-changepoint designs
// of the simulation study (uniform covariate; 30% uniform censoring for
// 1-4, 30% exponential censoring for 5-7; n = 1000).
Scenario paper_scenario(int id);

// One cell of the coverage grids: beta0 = 1{t <= gamma0}, exponential
// censoring calibrated to the requested percentage.
Scenario coverage_grid_scenario(CovariateKind covariate, std::size_t n, double censoring_pct,
                                double gamma0);

} // namespace coxcp
