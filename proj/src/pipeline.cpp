#include "tempsde/pipeline.hpp"

#include <stdexcept>
#include <utility>

namespace tempsde {

namespace {

template <typename Fn>
auto run_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const InputError&) {
        throw;
    } catch (const RatioDomainError& e) {
        throw RatioDomainError(stage + ": " + e.what(), e.ratio());
    } catch (const EstimationError& e) {
        if (!e.stage().empty()) throw;
        throw EstimationError(e.what(), stage);
    } catch (const std::invalid_argument& e) {
        throw EstimationError(e.what(), stage);
    } catch (const std::domain_error& e) {
        throw EstimationError(e.what(), stage);
    }
}

} // namespace

std::optional<NormalityTestResult> try_normality(std::span<const double> values) {
    if (values.size() < kAndersonDarlingMinSize) return std::nullopt;
    try {
        return anderson_darling_normal(values);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

FitReport fit_full_model(const TemperatureSeries& series, std::size_t leap_days_removed) {
    if (series.empty()) throw InputError("empty series");
    if (!series.is_contiguous_no_leap())
        throw InputError("series must be contiguous and leap-stripped before fitting");
    const auto months = month_ordinals(series);
    if (months.back() + 1 < kMinFitMonths)
        throw InputError("series spans " + std::to_string(months.back() + 1) +
                         " months; fitting needs at least " + std::to_string(kMinFitMonths));

    FitReport rep;
    rep.meta.n_obs = series.size();
    rep.meta.start = series[0].date;
    rep.meta.end = series[series.size() - 1].date;
    rep.meta.leap_days_removed = leap_days_removed;

    const auto temps = series.temperatures();
    rep.temperature_summary = describe(temps);
    rep.temperature_normality = try_normality(temps);
    if (series.has_precip()) {
        const auto precip = series.precipitation();
        rep.precipitation_summary = describe(precip);
    }

    rep.seasonal = run_stage("seasonal_mean", [&] { return fit_seasonal_mean(temps); });
    const auto resid = residuals(temps, rep.seasonal);
    rep.residual_normality = try_normality(resid);

    rep.monthly_vol =
        run_stage("monthly_volatility", [&] { return monthly_quadratic_variation(series); });
    const auto sigmas = rep.monthly_vol.sigmas();
    rep.volatility.sigma_bar = run_stage("sigma_bar", [&] { return estimate_sigma_bar(sigmas); });
    rep.volatility.sigma_sigma =
        run_stage("sigma_sigma", [&] { return estimate_sigma_sigma(sigmas); });

    // kappa_t before kappa_sigma so a zero-volatility month is reported as a
    // weighting failure rather than as degenerate volatility deviations.
    const auto weights = run_stage("kappa_t weighting",
                                   [&] { return daily_inverse_variance(series, rep.monthly_vol); });
    rep.kappa = run_stage("kappa_t", [&] { return estimate_kappa_from_residuals(resid, weights); });
    rep.volatility.kappa_sigma = run_stage(
        "kappa_sigma", [&] { return estimate_kappa_sigma(sigmas, rep.volatility.sigma_bar); });
    return rep;
}

EvaluationResult evaluate_model_detailed(const TemperatureSeries& series, const FitReport& report,
                                         const EvaluationOptions& options) {
    if (series.empty()) throw InputError("empty series");
    if (options.n_paths < 2) throw std::invalid_argument("evaluation needs at least two paths");

    SimulationConfig cfg;
    cfg.n_paths = options.n_paths;
    cfg.n_days = series.size();
    cfg.master_seed = options.seed;
    cfg.constant_vol_override = options.constant_vol_override;
    if (!options.start_on_mean) cfg.t0_temp = series[0].temp;
    cfg.month_of_day = month_ordinals(series);

    const auto moments =
        simulate_moments(report.seasonal, report.kappa.kappa_t, report.volatility, cfg);

    const auto obs = series.temperatures();
    EvaluationResult res;
    res.metrics.rmse = rmse(obs, moments.mean_path);
    res.metrics.mape_pct = mape(obs, moments.mean_path);
    res.metrics.r_squared = r_squared(obs, moments.mean_path);
    res.mean_path = moments.mean_path;
    return res;
}

FitMetrics evaluate_model(const TemperatureSeries& series, const FitReport& report,
                          const EvaluationOptions& options) {
    return evaluate_model_detailed(series, report, options).metrics;
}

} // namespace tempsde
