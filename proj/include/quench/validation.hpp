#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quench::validation {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Operator vs the p.v.-quadrature oracle on (1-x^2)^alpha, |x| <= 0.75.
Check operator_oracle(int M, double alpha, double tol = 0.02);
// Oracle error decreases along M = 41, 81, 161.
Check operator_refinement(double alpha);
// Lags 0..5 of fGN against gamma(k), `paths` independent paths of length n.
Check fgn_covariance(double H, int n = 1 << 14, int paths = 8, double n_se = 4.0);
Check fgn_white_noise_limit();
// Inverse iteration vs Jacobi on the assembled matrix.
Check spectral_oracle(int M = 21, double alpha = 0.6, double tol = 1e-10);
Check rayleigh_minimum(int M = 21, double alpha = 0.6, int trials = 100);

struct BoundCheckConfig {
    int M = 21;
    double alpha = 0.6;
    double H = 0.7;
    double lambda = 5e-4;
    double gamma = 0.0;
    double kappa1 = 0.5, kappa2 = 0.5;
    double k = 1.0;
    double W1 = 2.0;
    double T = 1.0;
    int n_steps = 1000;
    long paths = 2000;
    std::uint64_t seed = 7;
};
struct BoundCheckResult {
    double w = 0, nu = 0, M_T = 0;
    double empirical = 0;  // fraction of paths with tau* <= T
    double tail = -1;      // -1 when w <= nu(T)
    double cheb_dependent = 0, cheb_independent = 0;
    long ordering_violations = 0;  // paths with tau_lower > tau*
    long crossings = 0;
};
BoundCheckResult bound_inequalities(const BoundCheckConfig& cfg);
std::vector<Check> bound_checks(const BoundCheckConfig& cfg);
Check gamma_closed_form();

// M = 5, N = 10 trajectories against the naive pipeline.
Check small_instance_oracle(int n_seeds = 20, double tol = 1e-12);

// Everything above; `quick` shrinks path counts.
std::vector<Check> run_suite(bool quick = false);

}  // namespace quench::validation
