#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coxcp/reports.hpp"
#include "coxcp/simulation.hpp"
#include "coxcp/studies.hpp"

using namespace coxcp;

namespace {

Scenario small_single_cp(double beta1, double gamma0, double censoring) {
    Scenario sc;
    sc.beta0 = StepFunction({gamma0}, {beta1, 0.0});
    sc.covariate = CovariateDist::uniform();
    sc.n = 250;
    sc.seed = 11;
    if (censoring > 0.0) {
        sc.censoring = CensoringKind::exponential;
        sc.target_fraction = censoring;
    }
    return sc;
}

} // namespace

TEST_CASE("study results are identical across worker counts") {
    const Scenario sc = small_single_cp(2.0, 0.3, 0.0);
    StudyOptions o1;
    o1.replications = 12;
    o1.jobs = 1;
    StudyOptions o4 = o1;
    o4.jobs = 4;

    const auto c1 = run_coverage_study(sc, o1);
    const auto c4 = run_coverage_study(sc, o4);
    CHECK(c1.level_percent == c4.level_percent);
    CHECK(c1.failures == c4.failures);

    const auto e1 = run_estimator_comparison(sc, o1);
    const auto e4 = run_estimator_comparison(sc, o4);
    CHECK(e1.pl_mean == e4.pl_mean);
    CHECK(e1.pl_sd == e4.pl_sd);
    CHECK(e1.ls_mean == e4.ls_mean);
    CHECK(e1.ls_sd == e4.ls_sd);

    Scenario multi = paper_scenario(5);
    multi.n = 250;
    multi.target_fraction = 0.0;
    const auto m1 = run_multi_precision_study(multi, o1);
    const auto m4 = run_multi_precision_study(multi, o4);
    CHECK(m1.mean == m4.mean);
    CHECK(m1.sd == m4.sd);
}

TEST_CASE("coverage study at a huge alpha rejects almost every replication") {
    const Scenario sc = small_single_cp(1.0, 0.5, 0.0);
    StudyOptions opts;
    opts.replications = 20;
    opts.alpha = 0.999;
    const auto res = run_coverage_study(sc, opts);
    CHECK(res.level_percent >= 80.0); // threshold -> M^2: the region collapses
}

TEST_CASE("coverage study reports MC standard error of a proportion") {
    const Scenario sc = small_single_cp(1.5, 0.4, 0.0);
    StudyOptions opts;
    opts.replications = 25;
    const auto res = run_coverage_study(sc, opts);
    const double p = res.level_percent / 100.0;
    const int usable = res.replications - res.failures;
    CHECK(res.mc_std_error ==
          doctest::Approx(100.0 * std::sqrt(p * (1.0 - p) / usable)).epsilon(1e-12));
}

TEST_CASE("coverage study refuses a multi-changepoint scenario") {
    Scenario sc = paper_scenario(5);
    StudyOptions opts;
    CHECK_THROWS_AS(run_coverage_study(sc, opts), std::invalid_argument);
}

TEST_CASE("null scenario: both estimators give broad changepoint distributions") {
    Scenario sc;
    sc.beta0 = StepFunction({0.5}, {0.0, 0.0}); // no effect anywhere
    sc.covariate = CovariateDist::uniform();
    sc.n = 250;
    sc.seed = 19;
    StudyOptions opts;
    opts.replications = 30;
    const auto res = run_estimator_comparison(sc, opts);
    // the observed spread should cover a sizeable part of the event range
    CHECK(res.pl_sd > 0.05);
    CHECK(res.ls_sd > 0.02);
}

TEST_CASE("multi precision study tracks each changepoint") {
    Scenario sc = paper_scenario(5);
    sc.n = 400;
    sc.target_fraction = 0.0;
    StudyOptions opts;
    opts.replications = 20;
    const auto res = run_multi_precision_study(sc, opts);
    REQUIRE(res.mean.size() == 2);
    CHECK(res.mean[0] > 0.05);
    CHECK(res.mean[0] < 0.6);
    CHECK(res.mean[1] > res.mean[0]);
    for (std::size_t j = 0; j < 2; ++j)
        CHECK(res.mc_se[j] == doctest::Approx(res.sd[j] / std::sqrt(20.0)).epsilon(1e-9));
}

TEST_CASE("study JSON reports carry the headline numbers") {
    const Scenario sc = small_single_cp(2.0, 0.3, 0.0);
    StudyOptions opts;
    opts.replications = 8;
    const auto cov = run_coverage_study(sc, opts);
    const auto j = to_json(cov);
    CHECK(j.at("study") == "coverage");
    CHECK(j.at("replications") == 8);
    CHECK(j.at("level_percent").get<double>() == cov.level_percent);

    const auto cmp = run_estimator_comparison(sc, opts);
    const auto jc = to_json(cmp);
    CHECK(jc.at("pl").at("mean").get<double>() == cmp.pl_mean);
    CHECK(jc.at("ls").at("sd").get<double>() == cmp.ls_sd);
}

TEST_CASE("scenario json round trip") {
    Scenario sc = paper_scenario(7);
    sc.seed = 99;
    const auto j = scenario_to_json(sc);
    const Scenario back = scenario_from_json(j);
    CHECK(back.beta0.cutpoints() == sc.beta0.cutpoints());
    CHECK(back.beta0.values() == sc.beta0.values());
    CHECK(back.n == sc.n);
    CHECK(back.seed == 99);
    CHECK(back.censoring == CensoringKind::exponential);
    REQUIRE(back.target_fraction.has_value());
    CHECK(*back.target_fraction == 0.30);
}
