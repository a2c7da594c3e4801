#include "tempsde/seasonal.hpp"

#include "tempsde/stats.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tempsde {

OlsSolution solve_seasonal_ols(std::span<const double> values) {
    const auto n = static_cast<Eigen::Index>(values.size());
    if (n < 5)
        throw EstimationError("need at least 5 observations, got " + std::to_string(n),
                              "seasonal_mean");

    Eigen::MatrixXd design(n, 4);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto [s, c] = seasonal_basis(static_cast<double>(i));
        design(i, 0) = 1.0;
        design(i, 1) = static_cast<double>(i);
        design(i, 2) = s;
        design(i, 3) = c;
        y(i) = values[static_cast<std::size_t>(i)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-12);
    if (qr.rank() < 4) throw EstimationError("rank-deficient seasonal design", "seasonal_mean");

    const Eigen::Vector4d beta = qr.solve(y);
    OlsSolution sol;
    for (int k = 0; k < 4; ++k) sol.beta[static_cast<std::size_t>(k)] = beta(k);
    sol.residual_sum_squares = (y - design * beta).squaredNorm();
    return sol;
}

std::pair<double, double> recover_amplitude_phase(double beta2, double beta3) {
    if (beta2 == 0.0 && beta3 == 0.0)
        throw std::domain_error("amplitude undefined: both harmonic coefficients are zero");
    // atan2 already lands in [-pi, pi]; fold -pi onto pi.
    double psi = std::atan2(beta3, beta2);
    if (psi <= -std::numbers::pi) psi += 2.0 * std::numbers::pi;
    return {std::hypot(beta2, beta3), psi};
}

SeasonalMeanParams fit_seasonal_mean(std::span<const double> values) {
    const OlsSolution sol = solve_seasonal_ols(values);

    SeasonalMeanParams p;
    p.a_t = sol.beta[0];
    p.b_t = sol.beta[1];
    if (sol.beta[2] != 0.0 || sol.beta[3] != 0.0)
        std::tie(p.c_t, p.psi) = recover_amplitude_phase(sol.beta[2], sol.beta[3]);

    const auto fitted = seasonal_mean_path(p, values.size());
    try {
        p.r_squared_fit = r_squared(values, fitted);
    } catch (const std::domain_error&) {
        // constant input: the fit is exact but R^2 is 0/0
        p.r_squared_fit = std::numeric_limits<double>::quiet_NaN();
    }
    return p;
}

SeasonalMeanParams fit_seasonal_mean(const TemperatureSeries& series) {
    if (!series.is_contiguous_no_leap())
        throw InputError("seasonal fit requires a contiguous leap-stripped series");
    const auto temps = series.temperatures();
    return fit_seasonal_mean(temps);
}

double evaluate_seasonal_mean(const SeasonalMeanParams& p, double t) noexcept {
    return p.a_t + p.b_t * t + p.c_t * std::sin(2.0 * std::numbers::pi * t / 365.0 + p.psi);
}

std::vector<double> seasonal_mean_path(const SeasonalMeanParams& params, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t)
        out[t] = evaluate_seasonal_mean(params, static_cast<double>(t));
    return out;
}

std::vector<double> residuals(std::span<const double> values, const SeasonalMeanParams& params) {
    std::vector<double> out(values.size());
    for (std::size_t t = 0; t < values.size(); ++t)
        out[t] = values[t] - evaluate_seasonal_mean(params, static_cast<double>(t));
    return out;
}

std::vector<double> residuals(const TemperatureSeries& series, const SeasonalMeanParams& params) {
    const auto temps = series.temperatures();
    return residuals(temps, params);
}

} // namespace tempsde
