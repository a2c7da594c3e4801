#pragma once

#include "tempsde/seasonal.hpp"
#include "tempsde/series.hpp"
#include "tempsde/volatility.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tempsde {

/// Lower bound applied to simulated monthly volatilities.
inline constexpr double kVolatilityFloor = 1e-6;
/// Month length used when no calendar is supplied.
inline constexpr std::size_t kBlockMonthDays = 30;

struct SimulationConfig {
    std::size_t n_paths = 1000;
    std::size_t n_days = 365;
    std::uint64_t master_seed = 0;
    std::optional<double> t0_temp;               // default: seasonal mean at t = 0
    std::optional<double> sigma0;                // default: sigma_bar
    std::optional<double> constant_vol_override; // skip the volatility process
    /// Month ordinal of each simulated day (non-decreasing, starting at 0).
    /// Empty means consecutive 30-day blocks.
    std::vector<std::size_t> month_of_day;
};

/// Row-major n_paths x n_days matrix of temperatures plus column summaries.
struct SimulatedEnsemble {
    std::size_t n_paths = 0;
    std::size_t n_days = 0;
    std::vector<double> paths;
    std::vector<double> mean_path;
    std::vector<double> cross_path_sd; // empty when n_paths < 2
    std::uint64_t vol_updates = 0;     // monthly volatility draws
    std::uint64_t vol_floor_hits = 0;  // draws clamped to kVolatilityFloor

    std::span<const double> path(std::size_t p) const {
        return {paths.data() + p * n_days, n_days};
    }
    double at(std::size_t p, std::size_t day) const { return paths[p * n_days + day]; }
};

/// Euler-Maruyama monthly volatility path: sigma(0) = sigma0 (default
/// sigma_bar), then sigma(n) = sigma(n-1) + kappa_sigma (sigma_bar -
/// sigma(n-1)) + sigma_sigma Z, floored at kVolatilityFloor.
std::vector<double> simulate_volatility_months(const VolatilityModelParams& vol,
                                               std::size_t n_months, std::uint64_t seed,
                                               std::optional<double> sigma0 = std::nullopt);

/// Monte Carlo ensemble, paths distributed over OpenMP threads. Each path p
/// draws from PathRng(master_seed, p), so the result is bit-identical to
/// simulate_paths_serial() for any thread count.
///
/// Daily step, in deviation form d = T - T~:
///   T(j+1) = T~(j+1) + (1 - kappa) d(j) + sigma(month of j) Z_j
SimulatedEnsemble simulate_paths(const SeasonalMeanParams& seasonal, double kappa_t,
                                 const VolatilityModelParams& vol, const SimulationConfig& config);

/// Single-threaded reference of simulate_paths().
SimulatedEnsemble simulate_paths_serial(const SeasonalMeanParams& seasonal, double kappa_t,
                                        const VolatilityModelParams& vol,
                                        const SimulationConfig& config);

struct EnsembleSummary {
    std::vector<double> mean_path;
    std::vector<double> cross_path_sd;
};

/// Column mean (summed in path order) and sample sd. Throws
/// std::invalid_argument for fewer than two paths.
EnsembleSummary ensemble_summary(const SimulatedEnsemble& ensemble);

/// Per-day quantile (linear interpolation between order statistics).
std::vector<double> ensemble_quantile(const SimulatedEnsemble& ensemble, double q);

/// Mean and sd per day without keeping the path matrix; paths run in
/// batches. mean_path is bit-identical to the kept-path ensemble's.
struct EnsembleMoments {
    std::size_t n_paths = 0;
    std::vector<double> mean_path;
    std::vector<double> cross_path_sd;
    std::uint64_t vol_updates = 0;
    std::uint64_t vol_floor_hits = 0;
};

EnsembleMoments simulate_moments(const SeasonalMeanParams& seasonal, double kappa_t,
                                 const VolatilityModelParams& vol, const SimulationConfig& config,
                                 std::size_t batch_paths = 512);

/// One path on a 365-day calendar from January 1 of start_year, starting at
/// T~(0) with calendar months driving the volatility switch.
TemperatureSeries generate_synthetic_series(const SeasonalMeanParams& seasonal, double kappa_t,
                                            const VolatilityModelParams& vol, int start_year,
                                            int n_years, std::uint64_t seed,
                                            std::optional<double> constant_vol_override = {});

/// Month ordinals of a leap-free calendar starting at `first`.
std::vector<std::size_t> calendar_month_ordinals(CalendarDay first, std::size_t n_days);

} // namespace tempsde
