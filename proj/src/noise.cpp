#include "quench/noise.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <random>

#include <unsupported/Eigen/FFT>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "quench/errors.hpp"
#include "quench/format.hpp"
#include "quench/rng.hpp"

namespace quench {

namespace {

void check_hurst(double H) {
    if (!(H > 0.5 && H < 1.0))
        throw ParameterError("H must lie in (1/2, 1), got " + format_double(H));
}

std::vector<double> standard_normals(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> z(n);
    for (auto& v : z) v = nd(eng);
    return z;
}

}  // namespace

std::vector<double> bm_increments(int n_steps, double dt, std::uint64_t seed) {
    if (n_steps < 1 || !(dt > 0.0)) throw ParameterError("bm_increments needs n >= 1 and dt > 0");
    std::vector<double> z = standard_normals(static_cast<std::size_t>(n_steps), seed);
    const double sd = std::sqrt(dt);
    for (auto& v : z) v *= sd;
    return z;
}

double fgn_autocovariance(int k, double dt, double H) {
    const double h2 = 2.0 * H;
    double kk = std::abs(double(k));
    return 0.5 * std::pow(dt, h2) *
           (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(std::abs(kk - 1.0), h2));
}

FgnSampler::FgnSampler(int n_steps, double dt, double H) : n_(n_steps) {
    if (n_steps < 1 || !(dt > 0.0)) throw ParameterError("fGN sampler needs n >= 1 and dt > 0");
    if (!(H > 0.0 && H < 1.0)) throw ParameterError("H must lie in (0, 1)");
    const int m = 2 * n_steps;
    // First row of the circulant: gamma_0..gamma_n, gamma_{n-1}..gamma_1.
    std::vector<std::complex<double>> row(m);
    for (int k = 0; k <= n_steps; ++k) row[k] = fgn_autocovariance(k, dt, H);
    for (int k = n_steps + 1; k < m; ++k) row[k] = fgn_autocovariance(m - k, dt, H);
    std::vector<std::complex<double>> spec;
    Eigen::FFT<double> fft;
    fft.fwd(spec, row);
    scale_.resize(m);
    for (int k = 0; k < m; ++k) {
        double lam = spec[k].real();
        if (lam < 0.0) {
            // tiny negative values are rounding noise; report only real violations
            if (lam < -1e-12 * std::abs(spec[0].real())) clipped_ = true;
            lam = 0.0;
        }
        scale_[k] = std::sqrt(lam / m);
    }
}

FgnSample FgnSampler::sample(std::uint64_t seed) const {
    const int m = 2 * n_;
    std::vector<double> z = standard_normals(2 * static_cast<std::size_t>(m), seed);
    std::vector<std::complex<double>> w(m), out;
    for (int k = 0; k < m; ++k) w[k] = scale_[k] * std::complex<double>(z[k], z[m + k]);
    Eigen::FFT<double> fft;
    fft.fwd(out, w);
    FgnSample s;
    s.clipped = clipped_;
    s.increments.resize(n_);
    for (int j = 0; j < n_; ++j) s.increments[j] = out[j].real();
    return s;
}

FgnSample fgn_circulant(int n_steps, double dt, double H, std::uint64_t seed) {
    check_hurst(H);
    return FgnSampler(n_steps, dt, H).sample(seed);
}

double covariance_RH(double t, double s, double H) {
    if (t < 0.0 || s < 0.0) throw DomainError("covariance_RH needs t, s >= 0");
    const double h2 = 2.0 * H;
    return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2));
}

double volterra_constant(double H) {
    check_hurst(H);
    return std::sqrt(H * (2.0 * H - 1.0) / boost::math::beta(2.0 - 2.0 * H, H - 0.5));
}

double volterra_kernel(double t, double s, double H) {
    check_hurst(H);
    if (t < 0.0 || s < 0.0) throw DomainError("volterra_kernel needs t, s >= 0");
    if (t <= s) return 0.0;
    if (s == 0.0) return INFINITY;
    // sigma = s + u^{1/(H-1/2)} removes the (sigma-s)^{H-3/2} endpoint singularity
    const double e = H - 0.5;
    const double upper = std::pow(t - s, e);
    auto f = [&](double u) { return std::pow(s + std::pow(u, 1.0 / e), e); };
    double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, 0.0, upper, 15, 1e-13);
    return volterra_constant(H) * std::pow(s, -e) * integral / e;
}

double volterra_covariance(double t, double s, double H) {
    check_hurst(H);
    if (t < 0.0 || s < 0.0) throw DomainError("volterra_covariance needs t, s >= 0");
    double lo = std::min(t, s);
    if (lo == 0.0) return 0.0;
    // r = v^{1/(2-2H)} flattens the r^{1-2H} behaviour of the product at r = 0
    const double p = 1.0 / (2.0 - 2.0 * H);
    auto f = [&](double v) {
        if (v <= 0.0) return 0.0;
        double r = std::pow(v, p);
        // r underflows to 0 for the smallest abscissae; the integrand tends to a
        // finite constant there, so dropping those points costs nothing
        if (!(r > 0.0) || r >= lo) return 0.0;
        double jac = p * std::pow(v, p - 1.0);
        return volterra_kernel(t, r, H) * volterra_kernel(s, r, H) * jac;
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, 0.0, std::pow(lo, 1.0 / p), 1e-10);
}

NoisePath mixed_path(const NoiseSpec& spec, std::uint64_t seed, const FgnSampler& fgn) {
    spec.validate();
    if (fgn.n_steps() != spec.n_steps)
        throw DimensionError("fGN sampler length does not match the noise spec");
    NoisePath p;
    p.dt = spec.dt();
    p.n_steps = spec.n_steps;
    p.dB = bm_increments(spec.n_steps, p.dt, derive_seed(seed, 0));
    FgnSample h = fgn.sample(derive_seed(seed, 1));
    p.dBH = std::move(h.increments);
    p.embedding_warning = h.clipped;
    p.dN.resize(spec.n_steps);
    p.N.assign(spec.n_steps + 1, 0.0);
    for (int n = 0; n < spec.n_steps; ++n) {
        double t = n * p.dt;
        p.dN[n] = spec.a(t) * p.dB[n] + spec.b(t) * p.dBH[n];
        p.N[n + 1] = p.N[n] + p.dN[n];
    }
    return p;
}

NoisePath mixed_path(const NoiseSpec& spec, std::uint64_t seed) {
    spec.validate();
    FgnSampler fgn(spec.n_steps, spec.dt(), spec.H);
    return mixed_path(spec, seed, fgn);
}

void write_path_csv(const NoisePath& path, const std::string& file) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot open '" + file + "' for writing");
    out << "t,dB,dB_H,N\n";
    for (int n = 0; n <= path.n_steps; ++n) {
        out << format_double(path.t(n)) << ',';
        if (n < path.n_steps)
            out << format_double(path.dB[n]) << ',' << format_double(path.dBH[n]) << ',';
        else
            out << ",,";
        out << format_double(path.N[n]) << '\n';
    }
    if (!out) throw IoError("write failed for '" + file + "'");
}

}  // namespace quench
