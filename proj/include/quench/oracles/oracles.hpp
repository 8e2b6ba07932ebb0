#pragma once

// Reference implementations kept deliberately simple and independent of the
// production code paths. Used by the tests and the `validate` subcommand.

#include <cstdint>
#include <functional>
#include <vector>

namespace quench::oracle {

using Fn = std::function<double(double)>;
using Matrix = std::vector<std::vector<double>>;

// C_{1,alpha} p.v. int (u(x) - u(y)) |x-y|^{-1-2alpha} dy for u supported in
// [-1, 1], by adaptive quadrature of the symmetric second difference.
// `u2` is u'' and handles the r -> 0 end.
double pv_fractional_laplacian(const Fn& u, const Fn& u2, double x, double alpha);

// (1 - x^2)_+^alpha and its second derivative; (-Delta)^alpha of it is Gamma(2 alpha + 1).
double bump(double x, double alpha);
double bump_dd(double x, double alpha);

// Entry-by-entry assembly with plain loops and std::tgamma.
Matrix naive_operator(int M, double alpha, double rho, double kappa);

// Gaussian elimination with partial pivoting; solves A x = b.
std::vector<double> gauss_solve(Matrix A, std::vector<double> b);

// Cyclic Jacobi rotations: eigenvalues ascending, eigenvectors as columns.
void jacobi_eigen(Matrix A, std::vector<double>& values, Matrix& vectors);

// splitmix-keyed seed derivation, written out again.
std::uint64_t naive_derive_seed(std::uint64_t master, std::uint64_t index);

// fGN by circulant embedding with an O(m^2) real DFT.
std::vector<double> naive_fgn(int n, double dt, double H, std::uint64_t seed);

struct NaiveRun {
    std::vector<std::vector<double>> states;  // compliant states u(t_0), u(t_1), ...
    bool quenched = false;
    double T_q = -1.0;
};

// Whole pipeline for one realization: noise, operator, semi-implicit steps.
NaiveRun naive_trajectory(int M, int N, double T, double alpha, double H, double lambda,
                          double gamma, double kappa1, double kappa2, double c, double epsilon,
                          std::uint64_t seed);

// gamma_hat(k) = sum_j x_j x_{j+k} / (n - k), mean known to be zero.
double empirical_autocovariance(const std::vector<double>& x, int k);
// Exact variance of gamma_hat(k) for a zero-mean stationary Gaussian sequence
// with autocovariance `gamma`.
double autocovariance_estimator_variance(const std::function<double(int)>& gamma, int n, int k);

}  // namespace quench::oracle
