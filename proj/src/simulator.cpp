#include "tempsde/simulator.hpp"

#include "tempsde/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace tempsde {

namespace {

double next_volatility(double prev, const VolatilityModelParams& vol, double z, bool& floored) {
    const double next = prev + vol.kappa_sigma * (vol.sigma_bar - prev) + vol.sigma_sigma * z;
    floored = next < kVolatilityFloor;
    return floored ? kVolatilityFloor : next;
}

void validate(double kappa_t, const VolatilityModelParams& vol, const SimulationConfig& cfg) {
    if (cfg.n_paths < 1) throw std::invalid_argument("simulation needs at least one path");
    if (cfg.n_days < 1) throw std::invalid_argument("simulation needs at least one day");
    if (!(kappa_t > 0.0)) throw std::invalid_argument("kappa_t must be positive");
    if (cfg.constant_vol_override) {
        if (!(*cfg.constant_vol_override >= 0.0))
            throw std::invalid_argument("constant volatility override must be >= 0");
        return;
    }
    if (!(vol.sigma_bar > 0.0)) throw std::invalid_argument("sigma_bar must be positive");
    if (vol.sigma_sigma < 0.0) throw std::invalid_argument("sigma_sigma must be >= 0");
    if (!(vol.kappa_sigma > 0.0)) throw std::invalid_argument("kappa_sigma must be positive");
    if (cfg.sigma0 && !(*cfg.sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be positive");
    if (!cfg.month_of_day.empty() && cfg.month_of_day.size() < cfg.n_days)
        throw std::invalid_argument("month_of_day shorter than n_days");
}

// Everything one path needs; shared read-only by all workers.
class PathKernel {
public:
    PathKernel(const SeasonalMeanParams& seasonal, double kappa_t,
               const VolatilityModelParams& vol, const SimulationConfig& cfg)
        : vol_(vol), cfg_(cfg), decay_(1.0 - kappa_t),
          mean_(seasonal_mean_path(seasonal, cfg.n_days)) {
        t0_ = cfg.t0_temp.value_or(mean_[0]);
        sigma0_ = cfg.sigma0.value_or(vol.sigma_bar);
    }

    std::size_t month_of(std::size_t day) const {
        return cfg_.month_of_day.empty() ? day / kBlockMonthDays : cfg_.month_of_day[day];
    }

    struct Counters {
        std::uint64_t updates = 0;
        std::uint64_t floor_hits = 0;
    };

    void run(std::size_t p, double* out, Counters& counters) const {
        PathRng rng(cfg_.master_seed, p);
        const bool constant = cfg_.constant_vol_override.has_value();
        double sigma = constant ? *cfg_.constant_vol_override : sigma0_;

        double dev = t0_ - mean_[0];
        out[0] = t0_;
        for (std::size_t j = 0; j + 1 < cfg_.n_days; ++j) {
            if (!constant && j > 0 && month_of(j) != month_of(j - 1)) {
                bool floored = false;
                sigma = next_volatility(sigma, vol_, rng.normal(), floored);
                ++counters.updates;
                counters.floor_hits += floored;
            }
            dev = decay_ * dev + sigma * rng.normal();
            out[j + 1] = mean_[j + 1] + dev;
        }
    }

private:
    const VolatilityModelParams& vol_;
    const SimulationConfig& cfg_;
    double decay_;
    std::vector<double> mean_;
    double t0_ = 0.0;
    double sigma0_ = 0.0;
};

SimulatedEnsemble allocate(const SimulationConfig& cfg) {
    SimulatedEnsemble e;
    e.n_paths = cfg.n_paths;
    e.n_days = cfg.n_days;
    e.paths.resize(cfg.n_paths * cfg.n_days);
    return e;
}

void attach_summary(SimulatedEnsemble& e) {
    if (e.n_paths >= 2) {
        auto s = ensemble_summary(e);
        e.mean_path = std::move(s.mean_path);
        e.cross_path_sd = std::move(s.cross_path_sd);
    } else {
        e.mean_path = e.paths;
    }
}

// Column sums in path order, so the result does not depend on the split of
// days over threads.
double column_mean(const double* data, std::size_t n_paths, std::size_t stride, std::size_t day) {
    double s = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) s += data[p * stride + day];
    return s / static_cast<double>(n_paths);
}

} // namespace

std::vector<double> simulate_volatility_months(const VolatilityModelParams& vol,
                                               std::size_t n_months, std::uint64_t seed,
                                               std::optional<double> sigma0) {
    if (n_months < 1) throw std::invalid_argument("need at least one month");
    PathRng rng(seed, 0);
    std::vector<double> out(n_months);
    out[0] = sigma0.value_or(vol.sigma_bar);
    for (std::size_t n = 1; n < n_months; ++n) {
        bool floored = false;
        out[n] = next_volatility(out[n - 1], vol, rng.normal(), floored);
    }
    return out;
}

SimulatedEnsemble simulate_paths(const SeasonalMeanParams& seasonal, double kappa_t,
                                 const VolatilityModelParams& vol, const SimulationConfig& cfg) {
    validate(kappa_t, vol, cfg);
    const PathKernel kernel(seasonal, kappa_t, vol, cfg);
    SimulatedEnsemble e = allocate(cfg);

    const auto n_paths = static_cast<std::int64_t>(cfg.n_paths);
    std::uint64_t updates = 0, floor_hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : updates, floor_hits)
    for (std::int64_t p = 0; p < n_paths; ++p) {
        PathKernel::Counters c;
        kernel.run(static_cast<std::size_t>(p), e.paths.data() + p * cfg.n_days, c);
        updates += c.updates;
        floor_hits += c.floor_hits;
    }
    e.vol_updates = updates;
    e.vol_floor_hits = floor_hits;
    attach_summary(e);
    return e;
}

SimulatedEnsemble simulate_paths_serial(const SeasonalMeanParams& seasonal, double kappa_t,
                                        const VolatilityModelParams& vol,
                                        const SimulationConfig& cfg) {
    validate(kappa_t, vol, cfg);
    const PathKernel kernel(seasonal, kappa_t, vol, cfg);
    SimulatedEnsemble e = allocate(cfg);

    PathKernel::Counters c;
    for (std::size_t p = 0; p < cfg.n_paths; ++p)
        kernel.run(p, e.paths.data() + p * cfg.n_days, c);
    e.vol_updates = c.updates;
    e.vol_floor_hits = c.floor_hits;
    attach_summary(e);
    return e;
}

EnsembleSummary ensemble_summary(const SimulatedEnsemble& e) {
    if (e.n_paths < 2) throw std::invalid_argument("cross-path sd needs at least two paths");
    EnsembleSummary s;
    s.mean_path.resize(e.n_days);
    s.cross_path_sd.resize(e.n_days);

    const auto n_days = static_cast<std::int64_t>(e.n_days);
#pragma omp parallel for schedule(static)
    for (std::int64_t d = 0; d < n_days; ++d) {
        const auto day = static_cast<std::size_t>(d);
        const double mean = column_mean(e.paths.data(), e.n_paths, e.n_days, day);
        double ss = 0.0;
        for (std::size_t p = 0; p < e.n_paths; ++p) {
            const double dx = e.at(p, day) - mean;
            ss += dx * dx;
        }
        s.mean_path[day] = mean;
        s.cross_path_sd[day] = std::sqrt(ss / static_cast<double>(e.n_paths - 1));
    }
    return s;
}

std::vector<double> ensemble_quantile(const SimulatedEnsemble& e, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile outside [0, 1]");
    std::vector<double> out(e.n_days);
    const auto n_days = static_cast<std::int64_t>(e.n_days);
#pragma omp parallel
    {
        std::vector<double> column(e.n_paths);
#pragma omp for schedule(static)
        for (std::int64_t d = 0; d < n_days; ++d) {
            const auto day = static_cast<std::size_t>(d);
            for (std::size_t p = 0; p < e.n_paths; ++p) column[p] = e.at(p, day);
            std::sort(column.begin(), column.end());
            const double h = q * static_cast<double>(e.n_paths - 1);
            const auto lo = static_cast<std::size_t>(std::floor(h));
            const std::size_t hi = std::min(lo + 1, e.n_paths - 1);
            out[day] = column[lo] + (h - static_cast<double>(lo)) * (column[hi] - column[lo]);
        }
    }
    return out;
}

EnsembleMoments simulate_moments(const SeasonalMeanParams& seasonal, double kappa_t,
                                 const VolatilityModelParams& vol, const SimulationConfig& cfg,
                                 std::size_t batch_paths) {
    validate(kappa_t, vol, cfg);
    if (cfg.n_paths < 2) throw std::invalid_argument("moments need at least two paths");
    batch_paths = std::max<std::size_t>(batch_paths, 1);
    const PathKernel kernel(seasonal, kappa_t, vol, cfg);
    const std::size_t n_days = cfg.n_days;

    // Per-day sums of x and of (x - x_path0)^2 shifted by the first path's
    // value, accumulated in global path order.
    std::vector<double> sum(n_days, 0.0), shift(n_days, 0.0), sum_sq(n_days, 0.0),
        sum_shifted(n_days, 0.0);
    std::vector<double> buffer(batch_paths * n_days);
    EnsembleMoments m;
    m.n_paths = cfg.n_paths;

    for (std::size_t first = 0; first < cfg.n_paths; first += batch_paths) {
        const std::size_t count = std::min(batch_paths, cfg.n_paths - first);
        std::uint64_t updates = 0, floor_hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : updates, floor_hits)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(count); ++b) {
            PathKernel::Counters c;
            kernel.run(first + static_cast<std::size_t>(b), buffer.data() + b * n_days, c);
            updates += c.updates;
            floor_hits += c.floor_hits;
        }
        m.vol_updates += updates;
        m.vol_floor_hits += floor_hits;

        if (first == 0)
            for (std::size_t d = 0; d < n_days; ++d) shift[d] = buffer[d];
#pragma omp parallel for schedule(static)
        for (std::int64_t dd = 0; dd < static_cast<std::int64_t>(n_days); ++dd) {
            const auto d = static_cast<std::size_t>(dd);
            for (std::size_t b = 0; b < count; ++b) {
                const double x = buffer[b * n_days + d];
                sum[d] += x;
                sum_shifted[d] += x - shift[d];
                sum_sq[d] += (x - shift[d]) * (x - shift[d]);
            }
        }
    }

    const double n = static_cast<double>(cfg.n_paths);
    m.mean_path.resize(n_days);
    m.cross_path_sd.resize(n_days);
    for (std::size_t d = 0; d < n_days; ++d) {
        m.mean_path[d] = sum[d] / n;
        const double ss = sum_sq[d] - sum_shifted[d] * sum_shifted[d] / n;
        m.cross_path_sd[d] = std::sqrt(std::max(ss, 0.0) / (n - 1.0));
    }
    return m;
}

std::vector<std::size_t> calendar_month_ordinals(CalendarDay first, std::size_t n_days) {
    std::vector<std::size_t> out(n_days);
    CalendarDay day = first;
    std::size_t ordinal = 0;
    for (std::size_t i = 0; i < n_days; ++i) {
        if (i > 0) {
            const CalendarDay next = day.next_no_leap();
            if (next.month != day.month) ++ordinal;
            day = next;
        }
        out[i] = ordinal;
    }
    return out;
}

TemperatureSeries generate_synthetic_series(const SeasonalMeanParams& seasonal, double kappa_t,
                                            const VolatilityModelParams& vol, int start_year,
                                            int n_years, std::uint64_t seed,
                                            std::optional<double> constant_vol_override) {
    if (n_years < 1) throw std::invalid_argument("need at least one year");
    const CalendarDay first{start_year, 1, 1};

    SimulationConfig cfg;
    cfg.n_paths = 1;
    cfg.n_days = static_cast<std::size_t>(n_years) * 365;
    cfg.master_seed = seed;
    cfg.constant_vol_override = constant_vol_override;
    cfg.month_of_day = calendar_month_ordinals(first, cfg.n_days);

    const auto ens = simulate_paths_serial(seasonal, kappa_t, vol, cfg);

    std::vector<DailyRecord> records(cfg.n_days);
    CalendarDay day = first;
    for (std::size_t i = 0; i < cfg.n_days; ++i) {
        if (i > 0) day = day.next_no_leap();
        records[i].date = day;
        records[i].temp = ens.paths[i];
    }
    return TemperatureSeries(std::move(records));
}

} // namespace tempsde
