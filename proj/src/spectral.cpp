#include "quench/spectral.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "quench/errors.hpp"
#include "quench/format.hpp"

namespace quench {

namespace {
double residual_of(const Eigen::MatrixXd& A, const Eigen::VectorXd& v, double mu) {
    return (A * v - mu * v).cwiseAbs().maxCoeff() / v.cwiseAbs().maxCoeff();
}
}  // namespace

double rayleigh_quotient(const Eigen::MatrixXd& A, const Eigen::VectorXd& u) {
    if (u.size() != A.cols()) throw DimensionError("Rayleigh quotient: length mismatch");
    double nn = u.squaredNorm();
    if (nn == 0.0) throw DomainError("Rayleigh quotient of the zero vector");
    return u.dot(A * u) / nn;
}

EigenPair principal_eigenpair(const Eigen::MatrixXd& A, double dx, int max_iter) {
    const auto n = A.rows();
    if (n == 0 || A.cols() != n) throw DimensionError("principal_eigenpair needs a square matrix");
    if (!(dx > 0.0)) throw ParameterError("node weight dx must be > 0");
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw SpectralError("matrix is not positive definite; inverse iteration needs shift 0 to be regular");

    const double scale = A.cwiseAbs().rowwise().sum().maxCoeff();
    const double target = 1e-13 * scale;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
    double mu = rayleigh_quotient(A, v);
    double res = residual_of(A, v, mu);
    double best = res;
    int stall = 0, it = 0;
    while (res > target && it < max_iter) {
        v = llt.solve(v);
        v.normalize();
        mu = rayleigh_quotient(A, v);
        res = residual_of(A, v, mu);
        ++it;
        if (res < 0.5 * best) {
            best = res;
            stall = 0;
        } else if (++stall >= 8) {
            break;  // at the rounding floor
        }
    }
    if (res > 1e-10 * scale)
        throw SpectralError("inverse iteration stalled with relative residual " +
                            format_double(res / scale) + " after " + std::to_string(it) +
                            " iterations");
    if (v.sum() < 0.0) v = -v;
    EigenPair p;
    p.mu1 = mu;
    p.psi1 = v / (dx * v.sum());
    p.residual = res;
    p.iterations = it;
    return p;
}

EigenPair principal_eigenpair(const OperatorMatrix& A, const Grid& grid) {
    return principal_eigenpair(A.entries(), grid.dx());
}

bool rayleigh_min_check(const Eigen::MatrixXd& A, const EigenPair& pair, int n_trials,
                        std::uint64_t seed, double tol) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXd u(A.rows());
    for (int k = 0; k < n_trials; ++k) {
        for (Eigen::Index j = 0; j < u.size(); ++j) u[j] = nd(eng);
        if (rayleigh_quotient(A, u) < pair.mu1 - tol) return false;
    }
    return true;
}

double inner_product_v0_psi1(const Eigen::VectorXd& v0, const EigenPair& pair, const Grid& grid) {
    if (v0.size() != pair.psi1.size() || v0.size() != grid.interior_count())
        throw DimensionError("inner product: vector lengths do not match the grid");
    return grid.dx() * v0.dot(pair.psi1);
}

}  // namespace quench
