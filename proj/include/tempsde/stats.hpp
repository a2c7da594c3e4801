#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace tempsde {

/// Sample summary of one variable. Skewness and excess kurtosis use the
/// biased central moments m2, m3, m4 and are empty when m2 == 0.
struct DescriptiveSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0; // n - 1 denominator
    std::optional<double> skewness;
    std::optional<double> excess_kurtosis;
    double min = 0.0;
    double max = 0.0;
};

DescriptiveSummary describe(std::span<const double> values);

/// Composite-hypothesis Anderson-Darling normality test (mean and sd
/// estimated from the sample).
struct NormalityTestResult {
    std::size_t n = 0;
    double a_squared = 0.0;          // raw A^2
    double a_squared_adjusted = 0.0; // A^2 (1 + 0.75/n + 2.25/n^2)
    double p_value = 1.0;
    bool reject_at_5pct = false;
};

inline constexpr std::size_t kAndersonDarlingMinSize = 8;

/// Throws std::invalid_argument for n < 8 or zero variance.
NormalityTestResult anderson_darling_normal(std::span<const double> values);

/// Upper-tail p-value of the adjusted statistic; piecewise exponential fit of
/// D'Agostino and Stephens (1986), clamped to [0, 1].
double anderson_darling_p_value(double a_squared_adjusted) noexcept;

/// "< 0.001" below the resolution of the p-value approximation, otherwise
/// four decimals.
std::string format_p_value(double p);

double rmse(std::span<const double> obs, std::span<const double> pred);
/// Percent. Throws std::domain_error when an observation is zero.
double mape(std::span<const double> obs, std::span<const double> pred);
/// Throws std::domain_error for constant observations.
double r_squared(std::span<const double> obs, std::span<const double> pred);

struct FitMetrics {
    double rmse = 0.0;
    double mape_pct = 0.0;
    double r_squared = 0.0;
};

} // namespace tempsde
