#include "tempsde/volatility.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tempsde {

std::vector<double> MonthlyVolatilitySeries::sigmas() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.sigma);
    return out;
}

std::vector<std::size_t> month_ordinals(const TemperatureSeries& series) {
    std::vector<std::size_t> out(series.size());
    std::size_t ordinal = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i > 0 && (series[i].date.month != series[i - 1].date.month ||
                      series[i].date.year != series[i - 1].date.year))
            ++ordinal;
        out[i] = ordinal;
    }
    return out;
}

MonthlyVolatilitySeries monthly_quadratic_variation(const TemperatureSeries& series) {
    MonthlyVolatilitySeries out;
    std::size_t i = 0;
    while (i < series.size()) {
        const int year = series[i].date.year;
        const int month = series[i].date.month;
        std::size_t j = i + 1;
        double qv = 0.0;
        while (j < series.size() && series[j].date.year == year && series[j].date.month == month) {
            const double inc = series[j].temp - series[j - 1].temp;
            qv += inc * inc;
            ++j;
        }
        const std::size_t days = j - i;
        if (days < 2)
            throw InputError("month " + std::to_string(year) + "-" + std::to_string(month) +
                             " has fewer than 2 observations");
        out.entries.push_back({year, month, std::sqrt(qv / static_cast<double>(days - 1)), days});
        i = j;
    }
    return out;
}

double estimate_sigma_bar(std::span<const double> sigmas) {
    if (sigmas.empty()) throw std::invalid_argument("sigma_bar: no monthly volatilities");
    double s = 0.0;
    for (double v : sigmas) s += v;
    return s / static_cast<double>(sigmas.size());
}

double estimate_sigma_sigma(std::span<const double> sigmas) {
    if (sigmas.size() < 2) throw std::invalid_argument("sigma_sigma: need at least 2 months");
    double qv = 0.0;
    for (std::size_t h = 1; h < sigmas.size(); ++h) {
        const double inc = sigmas[h] - sigmas[h - 1];
        qv += inc * inc;
    }
    return std::sqrt(qv / static_cast<double>(sigmas.size() - 1));
}

double estimate_kappa_sigma(std::span<const double> sigmas, double sigma_bar) {
    if (sigmas.size() < 3) throw std::invalid_argument("kappa_sigma: need at least 3 months");
    double num = 0.0, den = 0.0;
    for (std::size_t j = 1; j < sigmas.size(); ++j) {
        const double prev = sigmas[j - 1] - sigma_bar;
        num += prev * (sigmas[j] - sigma_bar);
        den += prev * prev;
    }
    if (den == 0.0) throw EstimationError("volatility deviations are all zero", "kappa_sigma");
    const double ratio = num / den;
    if (ratio <= 0.0)
        throw RatioDomainError("kappa_sigma: non-positive lag-one ratio, log undefined", ratio);
    if (ratio >= 1.0) throw RatioDomainError("kappa_sigma: volatility not mean-reverting", ratio);
    return -std::log(ratio);
}

VolatilityModelParams estimate_volatility_model(const MonthlyVolatilitySeries& vols) {
    const auto s = vols.sigmas();
    VolatilityModelParams p;
    p.sigma_bar = estimate_sigma_bar(s);
    p.sigma_sigma = estimate_sigma_sigma(s);
    p.kappa_sigma = estimate_kappa_sigma(s, p.sigma_bar);
    return p;
}

} // namespace tempsde
