#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace tempsde {

/// Malformed or inconsistent input data. Carries the 1-based CSV line number
/// when the problem is tied to a row (0 otherwise).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An estimator could not produce a valid parameter from otherwise valid data.
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& what, std::string stage = {})
        : std::runtime_error(stage.empty() ? what : stage + ": " + what),
          stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Log-ratio estimators (mean reversion of temperature and of volatility)
/// fail when the lag-one ratio leaves (0, 1). The ratio is kept for
/// diagnostics.
class RatioDomainError : public EstimationError {
public:
    RatioDomainError(const std::string& what, double ratio)
        : EstimationError(what + " (ratio = " + std::to_string(ratio) + ")"), ratio_(ratio) {}

    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

} // namespace tempsde
