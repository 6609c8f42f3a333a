#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "coxcp/errors.hpp"
#include "coxcp/risk_sets.hpp"
#include "coxcp/survival_data.hpp"
#include "test_helpers.hpp"

using namespace coxcp;
using coxcp::testing::make_sample;

TEST_CASE("load_sample parses a single row") {
    std::istringstream in("time,status,covariate\n1.0,1,0.5");
    const SurvivalSample s = load_sample(in);
    CHECK(s.size() == 1);
    CHECK(s.n_events() == 1);
    CHECK(s.time(0) == 1.0);
    CHECK(s.covariate(0) == 0.5);
}

TEST_CASE("load_sample counts events and censorings") {
    std::istringstream in("time,status,covariate\n1,1,0\n2,0,1\n3,1,1\n");
    const SurvivalSample s = load_sample(in);
    CHECK(s.size() == 3);
    CHECK(s.n_events() == 2);
    const Diagnostics d = diagnose(s);
    CHECK(d.n_events == 2);
    CHECK(d.censoring_fraction == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("load_sample reports the offending line") {
    std::istringstream in("time,status,covariate\nabc,1,0\n");
    CHECK_THROWS_WITH_AS(load_sample(in), doctest::Contains("line 2"), DataError);
}

TEST_CASE("load_sample rejects bad inputs") {
    SUBCASE("zero events") {
        std::istringstream in("time,status,covariate\n1,0,0.5\n2,0,0.1\n");
        CHECK_THROWS_AS(load_sample(in), DataError);
    }
    SUBCASE("negative time") {
        std::istringstream in("time,status,covariate\n-1,1,0.5\n");
        CHECK_THROWS_AS(load_sample(in), DataError);
    }
    SUBCASE("extra columns") {
        std::istringstream in("time,status,covariate,age\n1,1,0.5,33\n");
        CHECK_THROWS_AS(load_sample(in), DataError);
    }
    SUBCASE("bad status") {
        std::istringstream in("time,status,covariate\n1,2,0.5\n");
        CHECK_THROWS_AS(load_sample(in), DataError);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(load_sample_file("/nonexistent.csv"), DataError); }
}

TEST_CASE("comment lines and blank lines are skipped") {
    std::istringstream in("# generated\ntime,status,covariate\n# a comment\n1,1,0\n\n2,1,1\n");
    const SurvivalSample s = load_sample(in);
    CHECK(s.size() == 2);
}

TEST_CASE("ties sort events before censorings and keep both at risk") {
    const SurvivalSample s = make_sample({2.0, 2.0, 1.0}, {0, 1, 1}, {1.0, 2.0, 3.0});
    // sorted: (1,event), (2,event), (2,censored)
    CHECK(s.time(0) == 1.0);
    CHECK(s.status(1) == 1);
    CHECK(s.status(2) == 0);
    // risk set of the event at t=2 includes the subject censored at t=2
    const RiskAggregates agg = risk_aggregates(s, 0.0, 2.0);
    CHECK(agg.s0 == doctest::Approx(2.0 / 3.0));
    CHECK(s.risk_start(2) == 1);
}

TEST_CASE("risk aggregates at beta=0 match hand sums") {
    const SurvivalSample s = make_sample({1, 2, 3}, {1, 1, 1}, {0.0, 1.0, 1.0});
    const RiskAggregates agg = risk_aggregates(s, 0.0, 0.5);
    CHECK(agg.s0 == doctest::Approx(1.0));
    CHECK(agg.s1 == doctest::Approx(2.0 / 3.0));
    CHECK(agg.s2 == doctest::Approx(2.0 / 3.0));
    CHECK(agg.e == doctest::Approx(2.0 / 3.0));
    CHECK(agg.v == doctest::Approx(2.0 / 9.0));
}

TEST_CASE("degenerate risk set has e=z and v=0") {
    const SurvivalSample s = make_sample({1, 5}, {1, 1}, {0.2, 0.7});
    const RiskAggregates agg = risk_aggregates(s, 0.0, 4.0); // only the z=0.7 subject remains
    CHECK(agg.e == doctest::Approx(0.7));
    CHECK(agg.v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("weighted mean at beta=log 2") {
    const SurvivalSample s = make_sample({1, 2}, {1, 1}, {0.0, 1.0});
    const RiskAggregates agg = risk_aggregates(s, std::log(2.0), 0.5);
    CHECK(agg.s1 / agg.s0 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("empty risk set raises") {
    const SurvivalSample s = make_sample({1, 2}, {1, 1}, {0.0, 1.0});
    CHECK_THROWS_AS(risk_aggregates(s, 0.0, 10.0), DataError);
}

TEST_CASE("s0 at beta=0 equals the at-risk fraction exactly and is nonincreasing") {
    const SurvivalSample s =
        make_sample({0.5, 1.5, 1.5, 2.5, 4.0}, {1, 1, 0, 1, 0}, {0.1, -0.3, 0.9, 0.4, -0.2});
    double prev = 2.0;
    for (double t : {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
        std::size_t at_risk = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s.time(i) >= t) ++at_risk;
        const RiskAggregates agg = risk_aggregates(s, 0.0, t);
        CHECK(agg.s0 == static_cast<double>(at_risk) / 5.0);
        CHECK(agg.s0 <= prev);
        prev = agg.s0;
    }
}

TEST_CASE("v is nonnegative and vanishes only for constant at-risk covariates") {
    const SurvivalSample s = make_sample({1, 2, 3, 4}, {1, 1, 1, 1}, {0.3, 0.3, 0.9, 0.9});
    for (double beta : {-1.5, 0.0, 2.0}) {
        for (double t : {0.5, 1.5, 2.5, 3.5}) {
            const RiskAggregates agg = risk_aggregates(s, beta, t);
            CHECK(agg.v >= 0.0);
        }
        // after t=2.5 only the two z=0.9 subjects remain
        CHECK(risk_aggregates(s, beta, 2.5).v == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(risk_aggregates(s, beta, 1.5).v > 1e-3);
    }
}

TEST_CASE("diagnose flags a degenerate last event") {
    const SurvivalSample good = make_sample({1, 2, 3}, {1, 1, 0}, {0.0, 1.0, 0.5});
    CHECK_FALSE(diagnose(good).degenerate_variance_warning);

    const SurvivalSample bad = make_sample({1, 2, 3}, {1, 0, 1}, {0.0, 1.0, 0.5});
    const Diagnostics d = diagnose(bad); // last event alone at risk
    CHECK(d.min_event_variance == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.degenerate_variance_warning);
}

TEST_CASE("diagnose reports the covariate bound") {
    const SurvivalSample s = make_sample({1, 2, 3}, {1, 1, 1}, {0.0, 1.0, -1.0});
    CHECK(diagnose(s).covariate_bound == 1.0);
}
