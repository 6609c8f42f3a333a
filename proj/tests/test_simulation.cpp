#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "coxcp/errors.hpp"
#include "coxcp/simulation.hpp"

using namespace coxcp;

TEST_CASE("draw_event_time: covariate off gives a unit exponential") {
    const StepFunction beta = StepFunction({0.3}, {2.0, 0.0});
    CHECK(draw_event_time(0.0, beta, 1.0, std::exp(-1.3)) == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("draw_event_time: constant beta rescales the exponential") {
    const StepFunction beta = StepFunction::constant(0.8);
    const double u = 0.37, z = 1.4;
    const double expected = -std::log(u) * std::exp(-0.8 * z);
    CHECK(draw_event_time(z, beta, 1.0, u) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("draw_event_time: hand inversion inside the first segment") {
    const StepFunction beta = StepFunction({0.1}, {3.0, 0.0});
    const double u = std::exp(-0.05); // target cumulative hazard 0.05
    CHECK(draw_event_time(1.0, beta, 1.0, u) ==
          doctest::Approx(0.05 * std::exp(-3.0)).epsilon(1e-10));
}

TEST_CASE("cumulative hazard of a drawn time returns the target exactly") {
    std::mt19937_64 rng = replication_rng(99, 0);
    const StepFunction beta = StepFunction({0.2, 0.5, 1.0}, {1.5, -0.5, 0.0, 2.0});
    for (int i = 0; i < 10000; ++i) {
        const double z = draw_uniform(rng) * 3.0 - 1.0;
        const double u = draw_uniform(rng);
        const double t = draw_event_time(z, beta, 0.7, u);
        CHECK(std::fabs(cumulative_hazard(t, z, beta, 0.7) + std::log(u)) <= 1e-10);
    }
}

TEST_CASE("null generator passes a KS test against the unit exponential") {
    const std::size_t n = 10000;
    int pass = 0;
    const int seeds = 100;
    for (int seed = 0; seed < seeds; ++seed) {
        std::mt19937_64 rng = replication_rng(1234, static_cast<std::uint64_t>(seed));
        std::vector<double> t(n);
        for (auto& x : t) x = draw_event_time(draw_uniform(rng), StepFunction::constant(0.0), 1.0,
                                              draw_uniform(rng));
        std::sort(t.begin(), t.end());
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = 1.0 - std::exp(-t[i]);
            d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
            d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        }
        if (d < 1.36 / std::sqrt(static_cast<double>(n))) ++pass;
    }
    CHECK(pass >= 95);
}

TEST_CASE("calibrate_censoring: analytic exponential case") {
    // with z = 0 and lambda0 = 1, P(censored) = mu / (1 + mu), so 0.5 -> mu = 1
    Scenario sc;
    sc.beta0 = StepFunction::constant(0.0);
    sc.covariate = CovariateDist::bernoulli(0.0); // z identically 0
    sc.censoring = CensoringKind::exponential;
    sc.n = 100;
    const double mu = calibrate_censoring(sc, 0.5);
    CHECK(mu == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("calibrated scenario hits the target censoring fraction in full runs") {
    Scenario sc = paper_scenario(1); // uniform censoring, target 30%
    sc.n = 1000;
    sc = calibrated(sc);
    double total = 0.0;
    for (int r = 0; r < 20; ++r) {
        const SurvivalSample s = generate_dataset(sc, static_cast<std::uint64_t>(r));
        total += 1.0 - static_cast<double>(s.n_events()) / static_cast<double>(s.size());
    }
    CHECK(total / 20.0 == doctest::Approx(0.30).epsilon(0.07));
}

TEST_CASE("target 0 disables censoring") {
    Scenario sc = paper_scenario(5);
    sc.target_fraction = 0.0;
    sc = calibrated(sc);
    CHECK(sc.censoring == CensoringKind::none);
    const SurvivalSample s = generate_dataset(sc, 0);
    CHECK(s.n_events() == s.size());
}

TEST_CASE("unreachable target raises") {
    // failure hazard so large that even the fastest censoring in the
    // bracket cannot reach a 50% censored fraction
    Scenario sc;
    sc.beta0 = StepFunction::constant(0.0);
    sc.lambda0 = 1e9;
    sc.covariate = CovariateDist::bernoulli(0.0);
    sc.censoring = CensoringKind::exponential;
    sc.n = 10;
    CHECK_THROWS_AS(calibrate_censoring(sc, 0.5, 20000), NumericalError);
}

TEST_CASE("same seed and replication give identical datasets") {
    Scenario sc = paper_scenario(3);
    sc.target_fraction.reset();
    sc.censoring_parameter = 0.4;
    const SurvivalSample a = generate_dataset(sc, 7);
    const SurvivalSample b = generate_dataset(sc, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.time(i) == b.time(i));
        CHECK(a.status(i) == b.status(i));
        CHECK(a.covariate(i) == b.covariate(i));
    }
    const SurvivalSample c = generate_dataset(sc, 8);
    bool all_equal = a.size() == c.size();
    if (all_equal)
        for (std::size_t i = 0; i < a.size(); ++i) all_equal = all_equal && a.time(i) == c.time(i);
    CHECK_FALSE(all_equal);
}

TEST_CASE("covariate draws follow the requested families") {
    std::mt19937_64 rng = replication_rng(5, 5);
    double bern_sum = 0, unif_min = 1, unif_max = 0, norm_sum = 0, norm_ss = 0, exp_sum = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        bern_sum += draw_covariate(CovariateDist::bernoulli(0.5), rng);
        const double u = draw_covariate(CovariateDist::uniform(), rng);
        unif_min = std::min(unif_min, u);
        unif_max = std::max(unif_max, u);
        const double g = draw_covariate(CovariateDist::normal(0.5, 0.25), rng);
        norm_sum += g;
        norm_ss += g * g;
        exp_sum += draw_covariate(CovariateDist::exponential(0.5), rng);
    }
    CHECK(bern_sum / n == doctest::Approx(0.5).epsilon(0.05));
    CHECK(unif_min >= 0.0);
    CHECK(unif_max <= 1.0);
    CHECK(norm_sum / n == doctest::Approx(0.5).epsilon(0.05));
    CHECK(norm_ss / n - (norm_sum / n) * (norm_sum / n) == doctest::Approx(0.25).epsilon(0.08));
    CHECK(exp_sum / n == doctest::Approx(2.0).epsilon(0.08));
}

TEST_CASE("scenario catalog covers the simulation designs") {
    for (int id = 1; id <= 7; ++id) {
        const Scenario sc = paper_scenario(id);
        CHECK(sc.n == 1000);
        CHECK(sc.target_fraction.has_value());
    }
    CHECK(paper_scenario(5).beta0.cutpoints() == std::vector<double>{0.2, 0.6});
    CHECK(paper_scenario(6).beta0.cutpoints() == std::vector<double>{0.5, 1.1, 2.4});
    CHECK(paper_scenario(6).beta0.values() == std::vector<double>{-1.0, 0.0, 0.5, 1.0});
    CHECK(paper_scenario(7).beta0.cutpoints() == std::vector<double>{0.1, 0.2, 0.3, 0.6});
    CHECK(paper_scenario(7).beta0.values() == std::vector<double>{2.0, 0.0, -1.0, 0.0, 1.5});
    CHECK_THROWS_AS(paper_scenario(8), std::invalid_argument);

    const Scenario grid = coverage_grid_scenario(CovariateKind::bernoulli, 500, 0.0, 0.5);
    CHECK(grid.n == 500);
    CHECK(grid.censoring == CensoringKind::none);
    CHECK(grid.beta0.cutpoints() == std::vector<double>{0.5});
}
