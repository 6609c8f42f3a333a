#pragma once
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "coxcp/cox_fit.hpp"
#include "coxcp/score_process.hpp"
#include "coxcp/segmentation.hpp"
#include "coxcp/simulation.hpp"
#include "coxcp/single_changepoint.hpp"
#include "coxcp/studies.hpp"

namespace coxcp {

nlohmann::json to_json(const CoxFit& fit);
nlohmann::json to_json(const SingleCpFit& fit, const ChangepointRegion& region);
nlohmann::json to_json(const MultiCpFit& fit, const SegmentationResult& seg);
nlohmann::json to_json(const CoverageStudyResult& res);
nlohmann::json to_json(const EstimatorComparisonResult& res);
nlohmann::json to_json(const MultiPrecisionResult& res);

// index,t,u,event_time rows; event_time is empty on the origin row. With a
// segmentation attached, one fitted-line column per segment follows.
void write_score_path_csv(std::ostream& out, const ScorePath& path);
void write_score_path_csv(std::ostream& out, const ScorePath& path, const SegmentationResult& seg);

// Aligned text tables in the style of the simulation writeups.
std::string coverage_table(const Scenario& scenario, const CoverageStudyResult& res);
std::string comparison_table(const Scenario& scenario, const EstimatorComparisonResult& res);
std::string precision_table(const Scenario& scenario, const MultiPrecisionResult& res);

// Scenario JSON: {"n":..., "seed":..., "beta0":{"cutpoints":[...],"values":[...]},
//  "baseline":..., "covariate":{"dist":...}, "censoring":{"kind":...}}
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& scenario);

} // namespace coxcp
