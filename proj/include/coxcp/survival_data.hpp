#pragma once
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace coxcp {

struct SurvivalRecord {
    double time;
    int status; // 1 = event, 0 = censored
    double covariate;
};

// Observed triplets (X_i, Delta_i, Z_i), stored sorted by time with events
// before censorings at tied times. A subject censored at t therefore stays
// in the risk set {j : X_j >= t} of an event at t. Immutable after
// construction; every downstream operation reads the sorted arrays.
class SurvivalSample {
public:
    explicit SurvivalSample(std::vector<SurvivalRecord> records);

    std::size_t size() const { return time_.size(); }
    std::size_t n_events() const { return event_pos_.size(); }

    double time(std::size_t i) const { return time_[i]; }
    int status(std::size_t i) const { return status_[i]; }
    double covariate(std::size_t i) const { return z_[i]; }

    const std::vector<double>& times() const { return time_; }
    const std::vector<std::uint8_t>& statuses() const { return status_; }
    const std::vector<double>& covariates() const { return z_; }

    // Sorted positions of the events; event_positions()[r] is the (r+1)-th
    // failure in time order.
    const std::vector<std::size_t>& event_positions() const { return event_pos_; }

    // First sorted index of the tie group of time_[i]; the risk set at
    // time_[i] is the suffix [risk_start(i), size()).
    std::size_t risk_start(std::size_t i) const { return risk_start_[i]; }

    // Midrange of the covariate, used to centre exp(beta*z) computations.
    double covariate_center() const { return z_center_; }
    double covariate_bound() const { return z_bound_; }

private:
    std::vector<double> time_;
    std::vector<std::uint8_t> status_;
    std::vector<double> z_;
    std::vector<std::size_t> event_pos_;
    std::vector<std::size_t> risk_start_;
    double z_center_ = 0.0;
    double z_bound_ = 0.0;
};

// Reads CSV with header `time,status,covariate`. Lines starting with '#'
// are skipped. Throws DataError naming the offending line.
SurvivalSample load_sample(std::istream& in);
SurvivalSample load_sample_file(const std::string& path);

struct Diagnostics {
    double covariate_bound;     // max |z|
    double min_event_variance;  // min over event times of v(0, X_i)
    std::size_t n_events;
    double censoring_fraction;
    bool degenerate_variance_warning; // min_event_variance == 0
};

Diagnostics diagnose(const SurvivalSample& sample);

} // namespace coxcp
