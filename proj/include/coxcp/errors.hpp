#pragma once
#include <stdexcept>
#include <string>

namespace coxcp {

// Malformed or insufficient input: bad CSV rows, empty event windows,
// infeasible segmentation requests. CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure on valid input: degenerate covariates, diverging
// Newton iterations, unreachable censoring targets. CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace coxcp
