#include "tempsde/seasonal.hpp"
#include "tempsde/stats.hpp"

#include "normal_equations_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace tempsde;

TEST_CASE("noiseless seasonal series is recovered exactly") {
    std::vector<double> y(730);
    for (std::size_t t = 0; t < y.size(); ++t)
        y[t] = 2.0 + std::sin(2.0 * std::numbers::pi * t / 365.0);
    const auto p = fit_seasonal_mean(y);
    CHECK(std::abs(p.a_t - 2.0) <= 1e-10);
    CHECK(std::abs(p.b_t) <= 1e-10);
    CHECK(std::abs(p.c_t - 1.0) <= 1e-10);
    CHECK(std::abs(p.psi) <= 1e-10);
    CHECK(std::abs(p.r_squared_fit - 1.0) <= 1e-10);
}

TEST_CASE("QR solution agrees with the normal-equations oracle") {
    std::mt19937_64 gen(99);
    std::normal_distribution<double> noise(0.0, 1.2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> y(1000 + 97 * rep);
        const double a = 20 + 5 * u(gen), b = 1e-4 * u(gen), c = 1 + u(gen), psi = 3 * u(gen);
        for (std::size_t t = 0; t < y.size(); ++t)
            y[t] = a + b * t + c * std::sin(2 * std::numbers::pi * t / 365.0 + psi) + noise(gen);

        const auto qr = solve_seasonal_ols(y);
        const auto ne = testing::normal_equations_seasonal(y);
        for (int k = 0; k < 4; ++k)
            CHECK(qr.beta[k] == doctest::Approx(ne[k]).epsilon(1e-8).scale(1.0));

        // Residuals orthogonal to every regressor.
        double g[4] = {0, 0, 0, 0}, scale[4] = {0, 0, 0, 0};
        for (std::size_t t = 0; t < y.size(); ++t) {
            const auto [s, c2] = seasonal_basis(static_cast<double>(t));
            const double x[4] = {1.0, static_cast<double>(t), s, c2};
            const double r = y[t] - (qr.beta[0] + qr.beta[1] * t + qr.beta[2] * s + qr.beta[3] * c2);
            for (int k = 0; k < 4; ++k) {
                g[k] += r * x[k];
                scale[k] += std::abs(y[t] * x[k]);
            }
        }
        for (int k = 0; k < 4; ++k) CHECK(std::abs(g[k]) <= 1e-6 * scale[k]);
    }
}

TEST_CASE("recover_amplitude_phase") {
    auto [c1, p1] = recover_amplitude_phase(1.0, 0.0);
    CHECK(c1 == 1.0);
    CHECK(p1 == 0.0);

    auto [c2, p2] = recover_amplitude_phase(1.509, 0.886);
    CHECK(c2 == doctest::Approx(1.7498791387).epsilon(1e-9));
    CHECK(p2 == doctest::Approx(0.5309127789).epsilon(1e-9));

    auto [c3, p3] = recover_amplitude_phase(-1.0, 0.0);
    CHECK(c3 == 1.0);
    CHECK(p3 == doctest::Approx(std::numbers::pi).epsilon(1e-15));

    CHECK_THROWS_AS(recover_amplitude_phase(0.0, 0.0), std::domain_error);

    // c >= 0 and (c cos psi, c sin psi) reproduces the inputs in every quadrant.
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double b2 = u(gen), b3 = u(gen);
        auto [c, psi] = recover_amplitude_phase(b2, b3);
        CHECK(c >= 0.0);
        CHECK(psi > -std::numbers::pi);
        CHECK(psi <= std::numbers::pi);
        CHECK(std::abs(c * std::cos(psi) - b2) <= 1e-10);
        CHECK(std::abs(c * std::sin(psi) - b3) <= 1e-10);
    }
}

TEST_CASE("evaluate_seasonal_mean") {
    const SeasonalMeanParams ref{26.4, -7.58e-5, 1.75, 0.531, 0.0};
    CHECK(evaluate_seasonal_mean(ref, 0) == doctest::Approx(27.2861928169).epsilon(1e-10));
    CHECK(evaluate_seasonal_mean({}, 123.0) == 0.0);
    CHECK(evaluate_seasonal_mean({10, 1, 0, 0, 0}, 5) == 15.0);

    for (int t = 0; t < 3000; t += 37) {
        const double diff = evaluate_seasonal_mean(ref, t + 365) - evaluate_seasonal_mean(ref, t);
        CHECK(diff == doctest::Approx(365 * ref.b_t).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("residuals") {
    const SeasonalMeanParams p{20.0, 1e-3, 2.0, -0.4, 0.0};
    const auto exact = seasonal_mean_path(p, 400);
    for (double r : residuals(exact, p)) CHECK(r == 0.0);

    auto shifted = exact;
    for (auto& v : shifted) v += 0.5;
    for (double r : residuals(shifted, p)) CHECK(r == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 gen(8);
    std::normal_distribution<double> noise(0.0, 1.5);
    auto noisy = exact;
    for (auto& v : noisy) v += noise(gen);
    const auto fitted = fit_seasonal_mean(noisy);
    double mean = 0.0;
    for (double r : residuals(noisy, fitted)) mean += r;
    CHECK(std::abs(mean / noisy.size()) <= 1e-9);
}

TEST_CASE("fit invariances") {
    std::mt19937_64 gen(21);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> y(2000);
    for (std::size_t t = 0; t < y.size(); ++t)
        y[t] = 25 + 1.5 * std::sin(2 * std::numbers::pi * t / 365.0 + 0.6) + noise(gen);
    const auto base = fit_seasonal_mean(y);

    auto shifted = y;
    for (auto& v : shifted) v += 7.25;
    const auto moved = fit_seasonal_mean(shifted);
    CHECK(moved.a_t == doctest::Approx(base.a_t + 7.25).epsilon(1e-9).scale(1.0));
    CHECK(std::abs(moved.b_t - base.b_t) <= 1e-9);
    CHECK(std::abs(moved.c_t - base.c_t) <= 1e-9);
    CHECK(std::abs(moved.psi - base.psi) <= 1e-9);

    CHECK(base.r_squared_fit == r_squared(y, seasonal_mean_path(base, y.size())));
}

TEST_CASE("seasonal fit preconditions") {
    CHECK_THROWS_AS(solve_seasonal_ols(std::vector<double>{1, 2, 3, 4}), EstimationError);
    const auto constant = fit_seasonal_mean(std::vector<double>(400, 25.0));
    CHECK(constant.a_t == doctest::Approx(25.0));
    CHECK(std::isnan(constant.r_squared_fit));
}
