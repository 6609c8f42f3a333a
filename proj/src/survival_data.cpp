#include "coxcp/survival_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "coxcp/errors.hpp"
#include "coxcp/risk_sets.hpp"

namespace coxcp {

SurvivalSample::SurvivalSample(std::vector<SurvivalRecord> records) {
    const std::size_t n = records.size();
    if (n == 0) throw DataError("sample is empty");
    for (const auto& r : records) {
        if (!std::isfinite(r.time)) throw DataError("non-finite observation time");
        if (r.time < 0.0) throw DataError("negative observation time");
        if (r.status != 0 && r.status != 1) throw DataError("status must be 0 or 1");
        if (!std::isfinite(r.covariate)) throw DataError("non-finite covariate");
    }
    std::sort(records.begin(), records.end(), [](const SurvivalRecord& a, const SurvivalRecord& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.status > b.status; // events before censorings at ties
    });

    time_.resize(n);
    status_.resize(n);
    z_.resize(n);
    risk_start_.resize(n);
    double zmin = records[0].covariate, zmax = records[0].covariate;
    for (std::size_t i = 0; i < n; ++i) {
        time_[i] = records[i].time;
        status_[i] = static_cast<std::uint8_t>(records[i].status);
        z_[i] = records[i].covariate;
        zmin = std::min(zmin, z_[i]);
        zmax = std::max(zmax, z_[i]);
        if (status_[i]) event_pos_.push_back(i);
        risk_start_[i] = (i > 0 && time_[i] == time_[i - 1]) ? risk_start_[i - 1] : i;
    }
    if (event_pos_.empty()) throw DataError("sample contains no events");
    z_center_ = 0.5 * (zmin + zmax);
    z_bound_ = std::max(std::fabs(zmin), std::fabs(zmax));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, std::size_t line_no, const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": cannot parse " + what + " from '" + s + "'");
    }
}

} // namespace

SurvivalSample load_sample(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<SurvivalRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_csv_line(t);
        if (!header_seen) {
            if (fields.size() != 3 || trimmed(fields[0]) != "time" || trimmed(fields[1]) != "status" ||
                trimmed(fields[2]) != "covariate")
                throw DataError("line " + std::to_string(line_no) +
                                ": expected header 'time,status,covariate'" +
                                (fields.size() > 3 ? " (extra columns: the covariate must be scalar)" : ""));
            header_seen = true;
            continue;
        }
        if (fields.size() != 3)
            throw DataError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                            std::to_string(fields.size()) +
                            (fields.size() > 3 ? " (the covariate must be scalar)" : ""));
        SurvivalRecord r;
        r.time = parse_real(trimmed(fields[0]), line_no, "time");
        const std::string st = trimmed(fields[1]);
        if (st == "0")
            r.status = 0;
        else if (st == "1")
            r.status = 1;
        else
            throw DataError("line " + std::to_string(line_no) + ": status must be 0 or 1, got '" + st + "'");
        r.covariate = parse_real(trimmed(fields[2]), line_no, "covariate");
        if (r.time < 0.0) throw DataError("line " + std::to_string(line_no) + ": negative time");
        if (!std::isfinite(r.time)) throw DataError("line " + std::to_string(line_no) + ": non-finite time");
        records.push_back(r);
    }
    if (!header_seen) throw DataError("missing header 'time,status,covariate'");
    if (records.empty()) throw DataError("no data rows");
    return SurvivalSample(std::move(records));
}

SurvivalSample load_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    return load_sample(in);
}

Diagnostics diagnose(const SurvivalSample& sample) {
    Diagnostics d{};
    d.covariate_bound = sample.covariate_bound();
    d.n_events = sample.n_events();
    d.censoring_fraction =
        1.0 - static_cast<double>(sample.n_events()) / static_cast<double>(sample.size());
    double vmin = std::numeric_limits<double>::infinity();
    for (std::size_t pos : sample.event_positions()) {
        const RiskAggregates agg = risk_aggregates(sample, 0.0, sample.time(pos));
        vmin = std::min(vmin, agg.v);
    }
    d.min_event_variance = vmin;
    d.degenerate_variance_warning = !(vmin > 0.0);
    return d;
}

} // namespace coxcp
