#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>

namespace anchored {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Bad arguments: dimension mismatch, parameters outside their admissible range.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Floating point failure: NaN/Inf, divergence, singular systems, non-convergence.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, std::optional<long> step = std::nullopt,
                          std::optional<double> estimate = std::nullopt)
        : std::runtime_error(what), step_(step), estimate_(estimate) {}

    std::optional<long> step() const { return step_; }
    std::optional<double> estimate() const { return estimate_; }

private:
    std::optional<long> step_;
    std::optional<double> estimate_;
};

/// Missing trace data (snapshots, reference values) required by a diagnostic.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace anchored
