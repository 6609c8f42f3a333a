#pragma once
#include <cstddef>
#include <vector>

#include "coxcp/survival_data.hpp"

namespace coxcp {

enum class KMode { observed, deterministic };

// Grid size for the rescaled time axis. `observed` uses every event;
// `deterministic` uses floor(n * (khat/n - epsilon)) clipped to [2, khat].
std::size_t choose_k(const SurvivalSample& sample, KMode mode, double epsilon = 0.05);

// Time-scale change phi: the r-th failure maps to r/k and censored times
// spread evenly through the gap between the surrounding failures, keeping
// the original ordering. Censorings past the k-th failure land above 1 and
// take no part in the score path.
struct RescaledSample {
    std::size_t k = 0;
    std::vector<double> phi;         // per sorted record of the sample
    std::vector<double> event_times; // all failure times in order; [r] is the (r+1)-th
};

RescaledSample rescale_times(const SurvivalSample& sample, std::size_t k);

// Standardized score process U*(0, i/k) on the event grid. values[i] adds
// (1/sqrt(k)) * v^{-1/2} * (z - e) at the i-th failure, with e and v taken
// from the original-scale risk set (phi preserves order, so risk sets
// coincide). Requires v > 0 at each of the first k failures.
struct ScorePath {
    std::size_t k = 0;
    std::vector<double> values;      // size k+1, values[0] = 0
    std::vector<double> event_times; // size k+1; [0] is NaN (grid origin)

    double grid_t(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(k); }
};

ScorePath standardized_score_path(const SurvivalSample& sample, std::size_t k);

// Largest usable grid size <= k_max: the count of leading failures whose
// risk-set variance stays positive. At 0% censoring the final failure has a
// singleton risk set, so detection pipelines run on the grid cut just
// before the first degenerate event.
std::size_t usable_k(const SurvivalSample& sample, std::size_t k_max);

// Linear interpolation between grid values; t must lie in [0, 1].
double interpolate(const ScorePath& path, double t);

} // namespace coxcp
