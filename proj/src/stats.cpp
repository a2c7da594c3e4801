#include "tempsde/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace tempsde {

namespace {

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// log Phi(z) and log(1 - Phi(z)) without cancellation in the far tails.
double log_normal_cdf(double z) { return std::log(0.5 * std::erfc(-z / std::sqrt(2.0))); }
double log_normal_sf(double z) { return std::log(0.5 * std::erfc(z / std::sqrt(2.0))); }

void check_pair(std::span<const double> obs, std::span<const double> pred) {
    if (obs.size() != pred.size())
        throw std::invalid_argument("observed and predicted lengths differ");
    if (obs.empty()) throw std::invalid_argument("empty sequences");
}

} // namespace

DescriptiveSummary describe(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("describe: empty input");

    DescriptiveSummary s;
    s.n = values.size();
    s.mean = mean_of(values);

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    const std::size_t mid = s.n / 2;
    s.median = (s.n % 2) ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : values) {
        const double d = x - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double n = static_cast<double>(s.n);
    s.sd = s.n > 1 ? std::sqrt(m2 / (n - 1.0)) : 0.0;
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 > 0.0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return s;
}

double anderson_darling_p_value(double a) noexcept {
    double p;
    if (a >= 0.6)
        p = std::exp(1.2937 - 5.709 * a + 0.0186 * a * a);
    else if (a >= 0.34)
        p = std::exp(0.9177 - 4.279 * a - 1.38 * a * a);
    else if (a >= 0.2)
        p = 1.0 - std::exp(-8.318 + 42.796 * a - 59.938 * a * a);
    else
        p = 1.0 - std::exp(-13.436 + 101.14 * a - 223.73 * a * a);
    return std::clamp(p, 0.0, 1.0);
}

NormalityTestResult anderson_darling_normal(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < kAndersonDarlingMinSize)
        throw std::invalid_argument("Anderson-Darling needs at least 8 observations");

    std::vector<double> y(values.begin(), values.end());
    std::sort(y.begin(), y.end());
    const double mu = mean_of(y);
    double ss = 0.0;
    for (double x : y) ss += (x - mu) * (x - mu);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) throw std::invalid_argument("Anderson-Darling: zero variance");

    const double nd = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = (y[i] - mu) / sd;
        const double hi = (y[n - 1 - i] - mu) / sd;
        acc += (2.0 * static_cast<double>(i) + 1.0) * (log_normal_cdf(lo) + log_normal_sf(hi));
    }

    NormalityTestResult r;
    r.n = n;
    r.a_squared = -nd - acc / nd;
    r.a_squared_adjusted = r.a_squared * (1.0 + 0.75 / nd + 2.25 / (nd * nd));
    r.p_value = anderson_darling_p_value(r.a_squared_adjusted);
    r.reject_at_5pct = r.p_value < 0.05;
    return r;
}

std::string format_p_value(double p) {
    if (p < 0.001) return "< 0.001";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", p);
    return buf;
}

double rmse(std::span<const double> obs, std::span<const double> pred) {
    check_pair(obs, pred);
    double ss = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) ss += (obs[i] - pred[i]) * (obs[i] - pred[i]);
    return std::sqrt(ss / static_cast<double>(obs.size()));
}

double mape(std::span<const double> obs, std::span<const double> pred) {
    check_pair(obs, pred);
    double acc = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (obs[i] == 0.0)
            throw std::domain_error("MAPE undefined: observation " + std::to_string(i) +
                                    " is zero (use RMSE or R^2 instead)");
        acc += std::abs(obs[i] - pred[i]) / std::abs(obs[i]);
    }
    return 100.0 * acc / static_cast<double>(obs.size());
}

double r_squared(std::span<const double> obs, std::span<const double> pred) {
    check_pair(obs, pred);
    if (obs.size() < 2) throw std::invalid_argument("R^2 needs at least two observations");
    const double mu = mean_of(obs);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        ss_res += (obs[i] - pred[i]) * (obs[i] - pred[i]);
        ss_tot += (obs[i] - mu) * (obs[i] - mu);
    }
    if (ss_tot == 0.0) throw std::domain_error("R^2 undefined for constant observations");
    return 1.0 - ss_res / ss_tot;
}

} // namespace tempsde
