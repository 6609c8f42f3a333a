#include "coxcp/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coxcp/errors.hpp"

namespace coxcp {

namespace {
// Largest point count for which the dense (i, j) cache is materialized.
constexpr std::size_t kDenseCacheLimit = 2048;
} // namespace

SegmentCostTable::SegmentCostTable(const ScorePath& path, bool parallel, bool build_cache)
    : n_(path.k) {
    py_.assign(n_ + 1, 0.0);
    pyy_.assign(n_ + 1, 0.0);
    pxy_.assign(n_ + 1, 0.0);
    for (std::size_t i = 1; i <= n_; ++i) {
        const double y = path.values[i];
        const double x = static_cast<double>(i);
        py_[i] = py_[i - 1] + y;
        pyy_[i] = pyy_[i - 1] + y * y;
        pxy_[i] = pxy_[i - 1] + x * y;
    }
    if (build_cache && n_ <= kDenseCacheLimit) {
        cache_.assign(n_ * n_, 0.0);
        const auto count = static_cast<std::ptrdiff_t>(n_);
        if (parallel) {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 1; i <= count; ++i)
                for (std::size_t j = static_cast<std::size_t>(i); j <= n_; ++j)
                    cache_[(static_cast<std::size_t>(i) - 1) * n_ + (j - 1)] =
                        cost_from_sums(static_cast<std::size_t>(i), j);
        } else {
            for (std::ptrdiff_t i = 1; i <= count; ++i)
                for (std::size_t j = static_cast<std::size_t>(i); j <= n_; ++j)
                    cache_[(static_cast<std::size_t>(i) - 1) * n_ + (j - 1)] =
                        cost_from_sums(static_cast<std::size_t>(i), j);
        }
        cached_ = true;
    }
}

double SegmentCostTable::cost_from_sums(std::size_t i, std::size_t j) const {
    const double m = static_cast<double>(j - i + 1);
    if (m < 2.0) return 0.0;
    const double a = static_cast<double>(i), b = static_cast<double>(j);
    // exact integer sums for the abscissa
    const double sx = 0.5 * (a + b) * m;
    const double sxx = (b * (b + 1.0) * (2.0 * b + 1.0) - (a - 1.0) * a * (2.0 * a - 1.0)) / 6.0;
    const double sy = py_[j] - py_[i - 1];
    const double syy = pyy_[j] - pyy_[i - 1];
    const double sxy = pxy_[j] - pxy_[i - 1];
    const double sxx_c = sxx - sx * sx / m;
    const double sxy_c = sxy - sx * sy / m;
    const double syy_c = syy - sy * sy / m;
    const double rss = syy_c - sxy_c * sxy_c / sxx_c;
    return rss > 0.0 ? rss : 0.0;
}

double SegmentCostTable::cost(std::size_t i, std::size_t j) const {
    if (cached_) return cache_[(i - 1) * n_ + (j - 1)];
    return cost_from_sums(i, j);
}

double segment_rss(const ScorePath& path, std::size_t i, std::size_t j) {
    if (i < 1 || j > path.k || i > j) throw std::invalid_argument("segment_rss: bad index range");
    if (j - i + 1 < 2) throw DataError("segment_rss: need at least 2 points");
    // prefix sums only; identical arithmetic to the table the DP uses
    SegmentCostTable table(path, false, false);
    return table.cost(i, j);
}

SegmentationResult detect_changepoints(const ScorePath& path, int K, double h) {
    if (K < 2) throw std::invalid_argument("detect_changepoints: K must be >= 2");
    if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("detect_changepoints: h must lie in (0, 1)");
    const std::size_t pts = path.k;
    const std::size_t seg = static_cast<std::size_t>(K);
    const std::size_t min_len = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(h * static_cast<double>(pts + 1))));
    if (seg * min_len > pts)
        throw DataError("segmentation infeasible: " + std::to_string(pts) + " points cannot hold " +
                        std::to_string(K) + " segments of at least " + std::to_string(min_len));

    const SegmentCostTable table(path);
    const double inf = std::numeric_limits<double>::infinity();

    // opt[m][s]: least total RSS splitting points s..pts into m segments;
    // choice[m][s]: smallest end index of the first segment attaining it.
    std::vector<std::vector<double>> opt(seg + 1, std::vector<double>(pts + 2, inf));
    std::vector<std::vector<std::size_t>> choice(seg + 1, std::vector<std::size_t>(pts + 2, 0));

    for (std::size_t s = 1; s + min_len - 1 <= pts; ++s) opt[1][s] = table.cost(s, pts);

    for (std::size_t m = 2; m <= seg; ++m) {
        // segments after the first need (m-1)*min_len points
        for (std::size_t s = 1; s + m * min_len - 1 <= pts; ++s) {
            double best = inf;
            std::size_t best_e = 0;
            const std::size_t e_lo = s + min_len - 1;
            const std::size_t e_hi = pts - (m - 1) * min_len;
            for (std::size_t e = e_lo; e <= e_hi; ++e) {
                const double total = table.cost(s, e) + opt[m - 1][e + 1];
                if (total < best) {
                    best = total;
                    best_e = e;
                }
            }
            opt[m][s] = best;
            choice[m][s] = best_e;
        }
    }

    SegmentationResult result;
    result.K = K;
    result.total_rss = opt[seg][1];
    std::size_t s = 1;
    for (std::size_t m = seg; m >= 2; --m) {
        const std::size_t e = choice[m][s];
        result.breakpoint_indices.push_back(e);
        result.breakpoint_times.push_back(path.event_times[e]);
        s = e + 1;
    }

    // per-segment OLS lines for reporting and plot output
    std::size_t start = 1;
    for (std::size_t m = 0; m < seg; ++m) {
        const std::size_t end = m + 1 < seg ? result.breakpoint_indices[m] : pts;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double len = static_cast<double>(end - start + 1);
        for (std::size_t i = start; i <= end; ++i) {
            const double x = static_cast<double>(i), y = path.values[i];
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = sxx - sx * sx / len;
        const double slope = denom > 0.0 ? (sxy - sx * sy / len) / denom : 0.0;
        result.lines.push_back({sy / len - slope * sx / len, slope});
        start = end + 1;
    }
    return result;
}

std::vector<double> map_breakpoints_to_time(const SegmentationResult& result,
                                            const RescaledSample& rescaled) {
    std::vector<double> times;
    times.reserve(result.breakpoint_indices.size());
    for (std::size_t idx : result.breakpoint_indices) {
        if (idx < 1 || idx > rescaled.event_times.size())
            throw std::invalid_argument("breakpoint index outside the event grid");
        times.push_back(rescaled.event_times[idx - 1]);
    }
    return times;
}

StepFunction MultiCpFit::step_estimate() const {
    std::vector<double> values;
    values.reserve(segment_fits.size());
    for (const auto& f : segment_fits) values.push_back(f.beta_hat);
    return StepFunction(changepoints, values);
}

MultiCpFit fit_multi_model(const SurvivalSample& sample, const std::vector<double>& changepoints) {
    double prev = 0.0;
    for (double g : changepoints) {
        if (!(g > prev)) throw std::invalid_argument("changepoints must be strictly increasing and positive");
        prev = g;
    }
    MultiCpFit fit;
    fit.changepoints = changepoints;
    const std::size_t segments = changepoints.size() + 1;
    for (std::size_t j = 0; j < segments; ++j) {
        TimeWindow w;
        w.lo = j == 0 ? 0.0 : changepoints[j - 1];
        w.hi = j + 1 < segments ? changepoints[j] : std::numeric_limits<double>::infinity();
        fit.segment_fits.push_back(fit_cox(sample, w));
    }
    return fit;
}

} // namespace coxcp
