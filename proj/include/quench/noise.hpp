#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quench/model.hpp"

namespace quench {

// i.i.d. Normal(0, dt) draws from std::mt19937_64 seeded with `seed`.
std::vector<double> bm_increments(int n_steps, double dt, std::uint64_t seed);

// Autocovariance of fractional Gaussian noise at lag k for step dt.
double fgn_autocovariance(int k, double dt, double H);

struct FgnSample {
    std::vector<double> increments;
    // Set when the circulant spectrum had negative entries that were clipped.
    bool clipped = false;
};

// Davies-Harte circulant embedding. Keeps the spectrum of the embedding so
// that many paths with the same (n, dt, H) share one setup.
class FgnSampler {
public:
    FgnSampler(int n_steps, double dt, double H);
    FgnSample sample(std::uint64_t seed) const;
    bool clipped() const { return clipped_; }
    int n_steps() const { return n_; }

private:
    int n_;
    std::vector<double> scale_;  // sqrt(lambda_k / m)
    bool clipped_ = false;
};

FgnSample fgn_circulant(int n_steps, double dt, double H, std::uint64_t seed);

double covariance_RH(double t, double s, double H);
double volterra_constant(double H);
// G^H(t, s); zero for t <= s and +inf at s = 0 < t, where the factor
// s^{1/2-H} blows up (the singularity is square integrable).
double volterra_kernel(double t, double s, double H);
// int_0^{min(t,s)} G(t,r) G(s,r) dr by quadrature; reproduces R_H(t, s).
double volterra_covariance(double t, double s, double H);

struct NoisePath {
    double dt = 0.0;
    int n_steps = 0;
    std::vector<double> dB;
    std::vector<double> dBH;
    std::vector<double> dN;  // a(t_n) dB_n + b(t_n) dBH_n
    std::vector<double> N;   // n_steps + 1 partial sums of dN, N[0] = 0
    bool embedding_warning = false;

    double t(int n) const { return n * dt; }
};

// Left-endpoint sums N_{t_{n+1}} = N_{t_n} + a(t_n) dB_n + b(t_n) dBH_n with
// independent drivers: dB from stream derive_seed(seed, 0), dBH from
// derive_seed(seed, 1).
NoisePath mixed_path(const NoiseSpec& spec, std::uint64_t seed);
NoisePath mixed_path(const NoiseSpec& spec, std::uint64_t seed, const FgnSampler& fgn);

// Columns t, dB, dB_H, N; the last row carries the terminal N only.
void write_path_csv(const NoisePath& path, const std::string& file);

}  // namespace quench
