#include <cmath>
#include <numeric>

#include "doctest.h"

#include "quench/errors.hpp"
#include "quench/noise.hpp"
#include "quench/oracles/oracles.hpp"
#include "quench/validation.hpp"

using namespace quench;

namespace {
double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }
double var(const std::vector<double>& v) {
    double m = mean(v), s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
}
}  // namespace

TEST_CASE("Brownian increments") {
    const int n = 100000;
    const double dt = 1e-4;
    auto x = bm_increments(n, dt, 42);
    CHECK(x.size() == n);
    CHECK(std::abs(mean(x)) <= 4.0 * std::sqrt(dt / n));
    CHECK(std::abs(var(x) / dt - 1.0) < 0.05);
    CHECK(bm_increments(n, dt, 42) == x);
    CHECK(bm_increments(n, dt, 43) != x);
}

TEST_CASE("fGN autocovariance formula") {
    for (double H : {0.55, 0.7, 0.95}) CHECK(fgn_autocovariance(0, 0.01, H) == doctest::Approx(std::pow(0.01, 2 * H)));
    for (int k = 1; k < 20; ++k) CHECK(fgn_autocovariance(k, 0.01, 0.5) == 0.0);
    CHECK(fgn_autocovariance(1, 1.0, 0.7) == doctest::Approx(std::pow(2.0, 0.4) - 1.0));
}

TEST_CASE("fGN lag-1 correlation at H = 0.7") {
    const int n = 1 << 14;
    const double H = 0.7;
    auto s = fgn_circulant(n, 1.0, H, 2024);
    REQUIRE(s.increments.size() == n);
    CHECK_FALSE(s.clipped);
    double rho_hat = oracle::empirical_autocovariance(s.increments, 1) / 1.0;
    double target = std::pow(2.0, 2 * H - 1) - 1.0;
    auto g = [H](int k) { return fgn_autocovariance(k, 1.0, H); };
    double se = std::sqrt(oracle::autocovariance_estimator_variance(g, n, 1));
    CHECK(std::abs(rho_hat - target) <= 3.0 * se);
}

TEST_CASE("fGN sampler agrees with the O(m^2) DFT version") {
    for (double H : {0.6, 0.85}) {
        auto a = fgn_circulant(100, 0.01, H, 9).increments;
        auto b = oracle::naive_fgn(100, 0.01, H, 9);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10).scale(1e-3));
    }
}

TEST_CASE("fGN covariance over many paths, lags 0..5") {
    for (double H : {0.6, 0.7, 0.9}) {
        auto c = validation::fgn_covariance(H, 1 << 14, 4);
        INFO(c.detail);
        CHECK(c.pass);
    }
    CHECK(validation::fgn_white_noise_limit().pass);
}

TEST_CASE("fGN self-similarity of the variance function") {
    // Var B^H_t = t^{2H}; compare t and 2t via a^{-H} B^H_{at}
    const int n = 256, paths = 4000;
    const double H = 0.75, dt = 1.0 / n;
    FgnSampler s(n, dt, H);
    std::vector<int> idx{25, 51, 76, 102, 128};
    std::vector<double> v1(idx.size()), v2(idx.size());
    for (int p = 0; p < paths; ++p) {
        auto x = s.sample(1000 + p).increments;
        std::vector<double> B(n + 1, 0.0);
        for (int i = 0; i < n; ++i) B[i + 1] = B[i] + x[i];
        for (std::size_t c = 0; c < idx.size(); ++c) {
            v1[c] += B[idx[c]] * B[idx[c]];
            double r = std::pow(2.0, -H) * B[2 * idx[c]];
            v2[c] += r * r;
        }
    }
    for (std::size_t c = 0; c < idx.size(); ++c) {
        double t = idx[c] * dt;
        double exact = std::pow(t, 2 * H);
        // sample variance of a chi-square(1) mean has relative SD sqrt(2/paths) ~ 2.2%
        CHECK(std::abs(v1[c] / paths / exact - 1.0) < 0.09);
        CHECK(std::abs(v2[c] / paths / exact - 1.0) < 0.09);
    }
}

TEST_CASE("covariance function") {
    CHECK(covariance_RH(1, 1, 0.7) == doctest::Approx(1.0));
    CHECK(covariance_RH(0.3, 0.0, 0.8) == 0.0);
    for (double t : {0.2, 0.7, 1.5})
        for (double s : {0.1, 0.9}) CHECK(covariance_RH(t, s, 0.5) == doctest::Approx(std::min(t, s)));
}

TEST_CASE("Volterra kernel") {
    CHECK(volterra_kernel(0.5, 0.5, 0.7) == 0.0);
    CHECK(volterra_kernel(0.3, 0.6, 0.7) == 0.0);
    CHECK(std::isinf(volterra_kernel(1.0, 0.0, 0.7)));
    CHECK(std::isfinite(volterra_kernel(1.0, 1e-8, 0.7)));
    CHECK(volterra_kernel(1.0, 0.5, 0.7) > 0.0);
    CHECK_THROWS_AS(volterra_kernel(-1.0, 0.5, 0.7), DomainError);
    CHECK_THROWS_AS(volterra_kernel(1.0, -0.5, 0.7), DomainError);
    CHECK(volterra_constant(0.7) > 0.0);
    CHECK(volterra_covariance(1.0, 0.5, 0.7) ==
          doctest::Approx(covariance_RH(1.0, 0.5, 0.7)).epsilon(1e-4));
    for (double H : {0.6, 0.8})
        for (double t : {0.25, 0.5, 0.75, 1.0})
            for (double s : {0.2, 0.4, 0.6, 0.8})
                CHECK(volterra_covariance(t, s, H) == doctest::Approx(covariance_RH(t, s, H)).epsilon(1e-3));
}

TEST_CASE("mixed path structure") {
    NoiseSpec spec;
    spec.n_steps = 50;
    spec.T = 0.5;
    auto p = mixed_path(spec, 3);
    CHECK(p.dB.size() == 50);
    CHECK(p.dBH.size() == 50);
    CHECK(p.N.size() == 51);
    CHECK(p.N[0] == 0.0);
    auto q = mixed_path(spec, 3);
    CHECK(p.N == q.N);
    CHECK(p.dBH == q.dBH);

    spec.kappa1 = spec.kappa2 = 0.0;
    auto z = mixed_path(spec, 3);
    for (double v : z.N) CHECK(v == 0.0);
}

TEST_CASE("mixed path terminal variance") {
    NoiseSpec spec;
    spec.n_steps = 64;
    spec.T = 1.0;
    spec.H = 0.7;
    spec.kappa1 = 1.0;
    spec.kappa2 = 1.0;
    FgnSampler fgn(spec.n_steps, spec.dt(), spec.H);
    const int paths = 10000;
    std::vector<double> NT(paths), BT(paths);
    for (int i = 0; i < paths; ++i) {
        auto p = mixed_path(spec, 500 + i, fgn);
        NT[i] = p.N.back();
        BT[i] = std::accumulate(p.dB.begin(), p.dB.end(), 0.0);
    }
    CHECK(std::abs(var(NT) / (1.0 + 1.0) - 1.0) < 0.05);
    CHECK(std::abs(var(BT) - 1.0) < 0.05);
}
