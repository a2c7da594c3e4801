#pragma once

#include "tempsde/series.hpp"

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace tempsde {

/// Seasonal mean  a + b t + c sin(2 pi t / 365 + psi), t in days.
struct SeasonalMeanParams {
    double a_t = 0.0;   // mean level, C
    double b_t = 0.0;   // trend, C/day
    double c_t = 0.0;   // amplitude, C, >= 0
    double psi = 0.0;   // phase, radians in (-pi, pi]
    double r_squared_fit = 0.0; // NaN for constant input
};

/// Coefficients of the linearised regression
///   y = beta0 + beta1 t + beta2 sin(2 pi t/365) + beta3 cos(2 pi t/365).
struct OlsSolution {
    std::array<double, 4> beta{};
    double residual_sum_squares = 0.0;
};

/// Least squares on [1, t, sin, cos] with t = 0..n-1, via column-pivoted
/// Householder QR. Throws EstimationError for n < 5 or a rank-deficient
/// design.
OlsSolution solve_seasonal_ols(std::span<const double> values);

/// Amplitude and phase from (beta2, beta3) = (c cos psi, c sin psi), with
/// c >= 0 in every quadrant. Throws std::domain_error when both are zero.
std::pair<double, double> recover_amplitude_phase(double beta2, double beta3);

SeasonalMeanParams fit_seasonal_mean(std::span<const double> values);
SeasonalMeanParams fit_seasonal_mean(const TemperatureSeries& series);

double evaluate_seasonal_mean(const SeasonalMeanParams& params, double t) noexcept;

/// T~(0), ..., T~(n-1).
std::vector<double> seasonal_mean_path(const SeasonalMeanParams& params, std::size_t n);

/// r_t = T(t) - T~(t) for every record.
std::vector<double> residuals(std::span<const double> values, const SeasonalMeanParams& params);
std::vector<double> residuals(const TemperatureSeries& series, const SeasonalMeanParams& params);

} // namespace tempsde
