#pragma once
#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace coxcp {

// Piecewise-constant log hazard-ratio beta(t). Evaluation is left-closed:
// beta(t) = values[j] for cutpoints[j-1] < t <= cutpoints[j], with the
// implicit boundaries cutpoint[-1] = 0 and cutpoint[K-1] = +inf.
class StepFunction {
public:
    StepFunction(std::vector<double> cutpoints, std::vector<double> values)
        : cutpoints_(std::move(cutpoints)), values_(std::move(values)) {
        if (values_.empty() || values_.size() != cutpoints_.size() + 1)
            throw std::invalid_argument("StepFunction: need len(values) == len(cutpoints)+1");
        double prev = 0.0;
        for (double c : cutpoints_) {
            if (!(c > prev))
                throw std::invalid_argument("StepFunction: cutpoints must be strictly increasing and positive");
            prev = c;
        }
    }

    static StepFunction constant(double beta) { return StepFunction({}, {beta}); }

    double operator()(double t) const {
        auto it = std::lower_bound(cutpoints_.begin(), cutpoints_.end(), t);
        return values_[static_cast<std::size_t>(it - cutpoints_.begin())];
    }

    std::size_t segments() const { return values_.size(); }
    const std::vector<double>& cutpoints() const { return cutpoints_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> cutpoints_;
    std::vector<double> values_;
};

} // namespace coxcp
