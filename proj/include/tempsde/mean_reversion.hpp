#pragma once

#include "tempsde/seasonal.hpp"
#include "tempsde/series.hpp"
#include "tempsde/volatility.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tempsde {

struct MeanReversionEstimate {
    double kappa_t = 0.0;     // per day
    double g_at_kappa = 0.0;  // estimating function at kappa_t
    double g_scale = 0.0;     // sum of |terms| of the estimating function
    double ratio = 0.0;       // e^{-kappa_t}, the weighted lag-one ratio
    std::size_t n_terms = 0;
};

/// E[T(j) | T(j-1)] = T~(j) + (T(j-1) - T~(j-1)) e^{-kappa}, one-day step.
double conditional_mean(const SeasonalMeanParams& seasonal, double kappa, double t_prev_temp,
                        double t_prev);

struct EstimatingFunctionValue {
    double value = 0.0;
    double scale = 0.0; // sum of absolute terms
};

/// G(kappa) = sum_j w[j-1] r[j-1] (r[j] - r[j-1] e^{-kappa}), with w the
/// inverse squared volatility of each day.
EstimatingFunctionValue estimating_function(std::span<const double> residuals,
                                            std::span<const double> inverse_variance,
                                            double kappa);

/// Closed-form zero of G: -ln( sum w r[j-1] r[j] / sum w r[j-1]^2 ).
/// Throws RatioDomainError when the ratio is not in (0, 1).
MeanReversionEstimate estimate_kappa_from_residuals(std::span<const double> residuals,
                                                    std::span<const double> inverse_variance);

/// Per-day 1/sigma^2 of the day's calendar month. Throws EstimationError
/// (stage "kappa_t weighting") for a month with zero volatility.
std::vector<double> daily_inverse_variance(const TemperatureSeries& series,
                                           const MonthlyVolatilitySeries& vols);

MeanReversionEstimate estimate_kappa(const TemperatureSeries& series,
                                     const SeasonalMeanParams& seasonal,
                                     const MonthlyVolatilitySeries& vols);

} // namespace tempsde
