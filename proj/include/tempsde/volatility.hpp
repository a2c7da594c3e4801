#pragma once

#include "tempsde/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tempsde {

struct MonthlyVolatility {
    int year = 0;
    int month = 0;
    double sigma = 0.0;       // C per sqrt(day)
    std::size_t n_days = 0;   // observations in the month

    bool operator==(const MonthlyVolatility&) const = default;
};

/// One entry per calendar month covered by a series, in order.
struct MonthlyVolatilitySeries {
    std::vector<MonthlyVolatility> entries;

    std::size_t size() const noexcept { return entries.size(); }
    bool empty() const noexcept { return entries.empty(); }
    std::vector<double> sigmas() const;

    bool operator==(const MonthlyVolatilitySeries&) const = default;
};

/// Long-run level, volatility of volatility, and reversion speed of the
/// monthly volatility process. Time unit is one month.
struct VolatilityModelParams {
    double sigma_bar = 0.0;   // C / sqrt(day)
    double sigma_sigma = 0.0; // per sqrt(month)
    double kappa_sigma = 0.0; // per month
};

/// Position of each record's calendar month in the series' month sequence
/// (0 for the first month, incremented at every month change).
std::vector<std::size_t> month_ordinals(const TemperatureSeries& series);

/// Per-month realised volatility: sigma^2(m) = sum of squared day-to-day
/// increments whose endpoints both fall in month m, divided by the number of
/// such increments. Throws InputError for a month with fewer than two days.
MonthlyVolatilitySeries monthly_quadratic_variation(const TemperatureSeries& series);

/// Mean of the monthly sigmas.
double estimate_sigma_bar(std::span<const double> sigmas);
/// sqrt of the mean squared month-to-month increment (n - 1 increments).
double estimate_sigma_sigma(std::span<const double> sigmas);
/// -ln( sum d[j-1] d[j] / sum d[j-1]^2 ), d = sigma - sigma_bar.
/// Throws RatioDomainError when the ratio is not in (0, 1).
double estimate_kappa_sigma(std::span<const double> sigmas, double sigma_bar);

inline double estimate_sigma_bar(const MonthlyVolatilitySeries& v) {
    return estimate_sigma_bar(v.sigmas());
}
inline double estimate_sigma_sigma(const MonthlyVolatilitySeries& v) {
    return estimate_sigma_sigma(v.sigmas());
}
inline double estimate_kappa_sigma(const MonthlyVolatilitySeries& v, double sigma_bar) {
    return estimate_kappa_sigma(v.sigmas(), sigma_bar);
}

VolatilityModelParams estimate_volatility_model(const MonthlyVolatilitySeries& vols);

} // namespace tempsde
