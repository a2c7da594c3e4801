#include "tempsde/mean_reversion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tempsde {

double conditional_mean(const SeasonalMeanParams& seasonal, double kappa, double t_prev_temp,
                        double t_prev) {
    return evaluate_seasonal_mean(seasonal, t_prev + 1.0) +
           (t_prev_temp - evaluate_seasonal_mean(seasonal, t_prev)) * std::exp(-kappa);
}

EstimatingFunctionValue estimating_function(std::span<const double> r,
                                            std::span<const double> w, double kappa) {
    if (r.size() != w.size()) throw std::invalid_argument("residual/weight length mismatch");
    const double decay = std::exp(-kappa);
    EstimatingFunctionValue g;
    for (std::size_t j = 1; j < r.size(); ++j) {
        const double lead = w[j - 1] * r[j - 1] * r[j];
        const double lag = w[j - 1] * r[j - 1] * r[j - 1] * decay;
        g.value += lead - lag;
        g.scale += std::abs(lead) + std::abs(lag);
    }
    return g;
}

MeanReversionEstimate estimate_kappa_from_residuals(std::span<const double> r,
                                                    std::span<const double> w) {
    if (r.size() != w.size()) throw std::invalid_argument("residual/weight length mismatch");
    if (r.size() < 3) throw std::invalid_argument("kappa_t: need at least 3 observations");

    double num = 0.0, den = 0.0;
    for (std::size_t j = 1; j < r.size(); ++j) {
        num += w[j - 1] * r[j - 1] * r[j];
        den += w[j - 1] * r[j - 1] * r[j - 1];
    }
    if (den == 0.0) throw EstimationError("residuals are all zero", "kappa_t");
    const double ratio = num / den;
    if (ratio <= 0.0)
        throw RatioDomainError("kappa_t: non-positive lag-one ratio, residuals anti-persistent",
                               ratio);
    if (ratio >= 1.0) throw RatioDomainError("kappa_t: residuals not mean-reverting", ratio);

    MeanReversionEstimate est;
    est.kappa_t = -std::log(ratio);
    est.ratio = ratio;
    est.n_terms = r.size() - 1;
    const auto g = estimating_function(r, w, est.kappa_t);
    est.g_at_kappa = g.value;
    est.g_scale = g.scale;
    return est;
}

std::vector<double> daily_inverse_variance(const TemperatureSeries& series,
                                           const MonthlyVolatilitySeries& vols) {
    const auto months = month_ordinals(series);
    if (!months.empty() && months.back() + 1 != vols.size())
        throw std::invalid_argument("monthly volatility series does not match the series span");

    std::vector<double> w(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& m = vols.entries[months[i]];
        if (!(m.sigma > 0.0))
            throw EstimationError("zero volatility in month " + std::to_string(m.year) + "-" +
                                      std::to_string(m.month),
                                  "kappa_t weighting");
        w[i] = 1.0 / (m.sigma * m.sigma);
    }
    return w;
}

MeanReversionEstimate estimate_kappa(const TemperatureSeries& series,
                                     const SeasonalMeanParams& seasonal,
                                     const MonthlyVolatilitySeries& vols) {
    const auto w = daily_inverse_variance(series, vols);
    const auto r = residuals(series, seasonal);
    return estimate_kappa_from_residuals(r, w);
}

} // namespace tempsde
