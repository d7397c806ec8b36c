#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gripsim {

/// Invalid physical configuration (geometry, detector, model parameters).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed scenario / measurement / table input. Carries a field path
/// so CLI diagnostics can point at the offending entry.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& field, const std::string& msg)
        : std::runtime_error(field + ": " + msg), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Fit did not reach the configured residual cap.
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(const std::string& msg, std::vector<double> residuals)
        : std::runtime_error(msg), per_point_residuals_(std::move(residuals)) {}
    const std::vector<double>& per_point_residuals() const { return per_point_residuals_; }

private:
    std::vector<double> per_point_residuals_;
};

/// Command not legal in the current pneumatic phase.
class RejectedCommandError : public std::runtime_error {
public:
    explicit RejectedCommandError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gripsim
