#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "quench/fractional_operator.hpp"
#include "quench/grid.hpp"

namespace quench {

struct EigenPair {
    double mu1 = 0.0;
    Eigen::VectorXd psi1;  // positive, dx * sum(psi1) = 1
    double residual = 0.0; // ||A psi - mu psi||_inf / ||psi||_inf
    int iterations = 0;
};

// Smallest eigenpair of a symmetric positive definite matrix by inverse
// iteration (shift 0, one Cholesky factorization). `dx` is the node weight of
// the trapezoid rule used for the normalization.
EigenPair principal_eigenpair(const Eigen::MatrixXd& A, double dx, int max_iter = 20000);
EigenPair principal_eigenpair(const OperatorMatrix& A, const Grid& grid);

double rayleigh_quotient(const Eigen::MatrixXd& A, const Eigen::VectorXd& u);

// Draws n_trials Gaussian directions and checks u.Au / u.u >= mu1 - tol.
bool rayleigh_min_check(const Eigen::MatrixXd& A, const EigenPair& pair, int n_trials,
                        std::uint64_t seed, double tol = 1e-10);

// Trapezoid approximation of int v0 psi1 dx (boundary values are zero).
double inner_product_v0_psi1(const Eigen::VectorXd& v0, const EigenPair& pair, const Grid& grid);

}  // namespace quench
