#pragma once
#include <cstddef>
#include <vector>

#include "coxcp/cox_fit.hpp"
#include "coxcp/score_process.hpp"
#include "coxcp/step_function.hpp"

namespace coxcp {

// O(1) least-squares cost of fitting one line (own intercept and slope) to
// the score-path values at event indices i..j, backed by prefix sums over
// the k event points. cost(i, j) is deterministic and shared by the DP,
// the public segment_rss operation, and the brute-force oracle in tests.
class SegmentCostTable {
public:
    explicit SegmentCostTable(const ScorePath& path, bool parallel = true, bool build_cache = true);

    // 1-based inclusive event-index range; needs j - i + 1 >= 2 points.
    double cost(std::size_t i, std::size_t j) const;
    std::size_t points() const { return n_; }

private:
    double cost_from_sums(std::size_t i, std::size_t j) const;

    std::size_t n_ = 0;
    std::vector<double> py_, pyy_, pxy_; // prefix sums of y, y^2, x*y (x = index)
    std::vector<double> cache_;          // dense cache when k is moderate
    bool cached_ = false;
};

// RSS of the ordinary least-squares line through path values at event
// indices i..j (1-based, inclusive).
double segment_rss(const ScorePath& path, std::size_t i, std::size_t j);

struct SegmentLine {
    double intercept;
    double slope;
};

struct SegmentationResult {
    int K = 0;
    std::vector<std::size_t> breakpoint_indices; // last event index of each segment but the final
    std::vector<double> breakpoint_times;        // original failure times at those indices
    double total_rss = 0.0;
    std::vector<SegmentLine> lines;
};

// Exact global RSS minimizer over all admissible placements of K segments
// (dynamic programming over the cost table), each segment at least
// max(2, ceil(h*(k+1))) points long. Ties resolve to the lexicographically
// smallest breakpoint vector.
SegmentationResult detect_changepoints(const ScorePath& path, int K, double h = 0.15);

// Grid index -> original failure time.
std::vector<double> map_breakpoints_to_time(const SegmentationResult& result,
                                            const RescaledSample& rescaled);

struct MultiCpFit {
    std::vector<double> changepoints;
    std::vector<CoxFit> segment_fits;

    StepFunction step_estimate() const;
};

// Per-segment Cox fits over the windows the changepoints induce.
MultiCpFit fit_multi_model(const SurvivalSample& sample, const std::vector<double>& changepoints);

} // namespace coxcp
