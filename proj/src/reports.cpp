#include "coxcp/reports.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "coxcp/errors.hpp"

namespace coxcp {

using nlohmann::json;

namespace {

json finite_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, x);
    return buf;
}

} // namespace

json to_json(const CoxFit& fit) {
    return json{{"beta_hat", fit.beta_hat},
                {"std_err", finite_or_null(fit.std_err)},
                {"loglik", fit.loglik},
                {"n_events_in_window", fit.n_events_in_window},
                {"iterations", fit.iterations},
                {"converged", fit.converged}};
}

json to_json(const SingleCpFit& fit, const ChangepointRegion& region) {
    return json{{"gamma_hat", fit.gamma_hat},
                {"beta1", fit.beta1},
                {"beta2", fit.beta2},
                {"se1", finite_or_null(fit.se1)},
                {"se2", finite_or_null(fit.se2)},
                {"loglik", fit.loglik},
                {"alpha", region.alpha},
                {"statistic", region.statistic == SupStatistic::m1 ? "M1" : "M2"},
                {"m_value", region.m_value},
                {"threshold", region.threshold},
                {"hull", json::array({region.hull_lo, region.hull_hi})},
                {"members", region.members}};
}

json to_json(const MultiCpFit& fit, const SegmentationResult& seg) {
    json breakpoints = json::array();
    for (std::size_t j = 0; j < seg.breakpoint_indices.size(); ++j)
        breakpoints.push_back(
            json{{"index", seg.breakpoint_indices[j]}, {"time", seg.breakpoint_times[j]}});
    json segments = json::array();
    for (std::size_t j = 0; j < fit.segment_fits.size(); ++j) {
        const double lo = j == 0 ? 0.0 : fit.changepoints[j - 1];
        const bool last = j + 1 == fit.segment_fits.size();
        json window = json::array();
        window.push_back(lo);
        window.push_back(last ? json(nullptr) : json(fit.changepoints[j]));
        segments.push_back(json{{"beta", fit.segment_fits[j].beta_hat},
                                {"se", finite_or_null(fit.segment_fits[j].std_err)},
                                {"window", window}});
    }
    return json{{"K", seg.K},
                {"breakpoints", breakpoints},
                {"segments", segments},
                {"total_rss", seg.total_rss}};
}

json to_json(const CoverageStudyResult& res) {
    return json{{"study", "coverage"},
                {"replications", res.replications},
                {"failures", res.failures},
                {"level_percent", res.level_percent},
                {"mc_std_error", res.mc_std_error}};
}

json to_json(const EstimatorComparisonResult& res) {
    return json{{"study", "comparison"},
                {"replications", res.replications},
                {"failures", res.failures},
                {"pl", json{{"mean", res.pl_mean}, {"sd", res.pl_sd}, {"mc_std_error", res.pl_mc_se}}},
                {"ls", json{{"mean", res.ls_mean}, {"sd", res.ls_sd}, {"mc_std_error", res.ls_mc_se}}}};
}

json to_json(const MultiPrecisionResult& res) {
    json cps = json::array();
    for (std::size_t j = 0; j < res.mean.size(); ++j)
        cps.push_back(json{{"mean", res.mean[j]}, {"sd", res.sd[j]}, {"mc_std_error", res.mc_se[j]}});
    return json{{"study", "multi-precision"},
                {"replications", res.replications},
                {"failures", res.failures},
                {"changepoints", cps}};
}

void write_score_path_csv(std::ostream& out, const ScorePath& path) {
    out.precision(17);
    out << "index,t,u,event_time\n";
    for (std::size_t i = 0; i <= path.k; ++i) {
        out << i << ',' << path.grid_t(i) << ',' << path.values[i] << ',';
        if (i > 0) out << path.event_times[i];
        out << '\n';
    }
}

void write_score_path_csv(std::ostream& out, const ScorePath& path, const SegmentationResult& seg) {
    out.precision(17);
    out << "index,t,u,event_time";
    for (int j = 1; j <= seg.K; ++j) out << ",fit_" << j;
    out << '\n';
    for (std::size_t i = 0; i <= path.k; ++i) {
        out << i << ',' << path.grid_t(i) << ',' << path.values[i] << ',';
        if (i > 0) out << path.event_times[i];
        std::size_t start = 1;
        for (std::size_t s = 0; s < seg.lines.size(); ++s) {
            const std::size_t end =
                s + 1 < seg.lines.size() ? seg.breakpoint_indices[s] : path.k;
            out << ',';
            if (i >= start && i <= end)
                out << seg.lines[s].intercept + seg.lines[s].slope * static_cast<double>(i);
            start = end + 1;
        }
        out << '\n';
    }
}

std::string coverage_table(const Scenario& scenario, const CoverageStudyResult& res) {
    std::ostringstream os;
    os << "Empirical level of the changepoint confidence region (%)\n";
    os << "  n      reps   failures   level    mc se\n";
    char line[128];
    std::snprintf(line, sizeof(line), "  %-6zu %-6d %-10d %-8.1f %-6.2f\n", scenario.n,
                  res.replications, res.failures, res.level_percent, res.mc_std_error);
    os << line;
    return os.str();
}

std::string comparison_table(const Scenario& scenario, const EstimatorComparisonResult& res) {
    std::ostringstream os;
    os << "Changepoint estimation: partial likelihood vs least squares\n";
    os << "  n      reps   PL              LS\n";
    char line[160];
    std::snprintf(line, sizeof(line), "  %-6zu %-6d %.3f (%.3f)   %.3f (%.3f)\n", scenario.n,
                  res.replications, res.pl_mean, res.pl_sd, res.ls_mean, res.ls_sd);
    os << line;
    return os.str();
}

std::string precision_table(const Scenario& scenario, const MultiPrecisionResult& res) {
    std::ostringstream os;
    os << "Least-squares changepoint estimates, mean (sd)\n  n      reps  ";
    for (std::size_t j = 0; j < res.mean.size(); ++j) os << "  gamma_" << (j + 1) << "       ";
    os << '\n';
    char cell[64];
    std::snprintf(cell, sizeof(cell), "  %-6zu %-6d", scenario.n, res.replications);
    os << cell;
    for (std::size_t j = 0; j < res.mean.size(); ++j) {
        std::snprintf(cell, sizeof(cell), "  %.3f (%.3f)", res.mean[j], res.sd[j]);
        os << cell;
    }
    os << '\n';
    return os.str();
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    if (!j.contains("beta0") || !j.contains("n"))
        throw DataError("scenario json needs at least 'beta0' and 'n'");
    const auto& b = j.at("beta0");
    s.beta0 = StepFunction(b.at("cutpoints").get<std::vector<double>>(),
                           b.at("values").get<std::vector<double>>());
    s.n = j.at("n").get<std::size_t>();
    s.lambda0 = j.value("baseline", 1.0);
    s.seed = j.value("seed", std::uint64_t{1});

    if (j.contains("covariate")) {
        const auto& c = j.at("covariate");
        const std::string dist = c.at("dist").get<std::string>();
        if (dist == "bernoulli")
            s.covariate = CovariateDist::bernoulli(c.value("p", 0.5));
        else if (dist == "uniform")
            s.covariate = CovariateDist::uniform();
        else if (dist == "normal")
            s.covariate = CovariateDist::normal(c.value("mean", 0.5), c.value("var", 0.25));
        else if (dist == "exponential")
            s.covariate = CovariateDist::exponential(c.value("rate", 0.5));
        else
            throw DataError("unknown covariate dist '" + dist + "'");
    }

    if (j.contains("censoring")) {
        const auto& c = j.at("censoring");
        const std::string kind = c.at("kind").get<std::string>();
        if (kind == "none") {
            s.censoring = CensoringKind::none;
        } else if (kind == "uniform" || kind == "exponential") {
            s.censoring = kind == "uniform" ? CensoringKind::uniform : CensoringKind::exponential;
            if (c.contains("target_fraction"))
                s.target_fraction = c.at("target_fraction").get<double>();
            else if (c.contains("parameter"))
                s.censoring_parameter = c.at("parameter").get<double>();
            else
                throw DataError("censoring needs 'target_fraction' or 'parameter'");
        } else {
            throw DataError("unknown censoring kind '" + kind + "'");
        }
    }
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["beta0"] = json{{"cutpoints", s.beta0.cutpoints()}, {"values", s.beta0.values()}};
    j["n"] = s.n;
    j["baseline"] = s.lambda0;
    j["seed"] = s.seed;
    json cov;
    switch (s.covariate.kind) {
        case CovariateKind::bernoulli:
            cov = json{{"dist", "bernoulli"}, {"p", s.covariate.p}};
            break;
        case CovariateKind::uniform01:
            cov = json{{"dist", "uniform"}};
            break;
        case CovariateKind::normal:
            cov = json{{"dist", "normal"}, {"mean", s.covariate.mean}, {"var", s.covariate.var}};
            break;
        case CovariateKind::exponential:
            cov = json{{"dist", "exponential"}, {"rate", s.covariate.rate}};
            break;
    }
    j["covariate"] = cov;
    json cen;
    if (s.censoring == CensoringKind::none) {
        cen = json{{"kind", "none"}};
    } else {
        cen = json{{"kind", s.censoring == CensoringKind::uniform ? "uniform" : "exponential"}};
        if (s.target_fraction.has_value())
            cen["target_fraction"] = *s.target_fraction;
        else
            cen["parameter"] = s.censoring_parameter;
    }
    j["censoring"] = cen;
    return j;
}

} // namespace coxcp
