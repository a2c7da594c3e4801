#pragma once

#include "tempsde/mean_reversion.hpp"
#include "tempsde/seasonal.hpp"
#include "tempsde/series.hpp"
#include "tempsde/simulator.hpp"
#include "tempsde/stats.hpp"
#include "tempsde/volatility.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace tempsde {

inline constexpr int kReportSchemaVersion = 1;

struct ReportMeta {
    std::size_t n_obs = 0;
    CalendarDay start;
    CalendarDay end;
    std::size_t leap_days_removed = 0;
    int schema_version = kReportSchemaVersion;
    std::optional<std::uint64_t> evaluation_seed;
    std::optional<std::size_t> evaluation_paths;
};

struct FitReport {
    SeasonalMeanParams seasonal;
    MeanReversionEstimate kappa;
    VolatilityModelParams volatility;
    MonthlyVolatilitySeries monthly_vol;
    std::optional<FitMetrics> metrics; // only after evaluate_model

    DescriptiveSummary temperature_summary;
    std::optional<DescriptiveSummary> precipitation_summary;
    // Absent when the sample is too small or constant.
    std::optional<NormalityTestResult> temperature_normality;
    std::optional<NormalityTestResult> residual_normality;

    ReportMeta meta;

    /// Share of a deviation removed in one day, 1 - e^{-kappa_t}.
    double daily_adjustment_fraction() const { return 1.0 - std::exp(-kappa.kappa_t); }
};

inline constexpr std::size_t kMinFitMonths = 24;

/// Estimates every model parameter from a contiguous leap-stripped series:
/// seasonal mean, residuals, monthly volatilities, sigma_bar and
/// sigma_sigma, kappa_t, kappa_sigma. Estimation failures are rethrown as
/// EstimationError labelled with the failing stage.
FitReport fit_full_model(const TemperatureSeries& series, std::size_t leap_days_removed = 0);

/// Summary and normality test of one variable; the test is skipped for
/// samples it cannot handle.
std::optional<NormalityTestResult> try_normality(std::span<const double> values);

struct EvaluationOptions {
    std::size_t n_paths = 1000;
    std::uint64_t seed = 0;
    std::optional<double> constant_vol_override;
    bool start_on_mean = false; // T(0) = T~(0) instead of the first observation
};

/// Ensemble mean path over the series' calendar versus the observations.
struct EvaluationResult {
    FitMetrics metrics;
    std::vector<double> mean_path;
};

EvaluationResult evaluate_model_detailed(const TemperatureSeries& series, const FitReport& report,
                                         const EvaluationOptions& options);
FitMetrics evaluate_model(const TemperatureSeries& series, const FitReport& report,
                          const EvaluationOptions& options);

} // namespace tempsde
