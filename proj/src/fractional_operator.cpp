#include "quench/fractional_operator.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "quench/errors.hpp"
#include "quench/format.hpp"

namespace quench {

double fractional_constant(double alpha, ConstantRule rule) {
    using boost::math::tgamma;
    const double pi = boost::math::constants::pi<double>();
    if (rule == ConstantRule::Literal)
        return alpha * std::pow(2.0, 2.0 * alpha) * tgamma(0.5 + alpha) /
               (std::pow(pi, 2.0 * alpha + 0.5) * tgamma(1.0 - alpha));
    return std::pow(4.0, alpha) * tgamma(0.5 + alpha) / (std::sqrt(pi) * std::abs(tgamma(-alpha)));
}

double kappa_rho(double alpha, double rho, KappaRule rule) {
    if (rule == KappaRule::Printed) return 2.0 * alpha > 1.0 ? 1.0 + 2.0 * alpha : 1.0;
    return (rho - 2.0 * alpha) / (1.0 - alpha);
}

OperatorMatrix::OperatorMatrix(Eigen::MatrixXd entries, double alpha, double rho, double kappa)
    : A_(std::move(entries)), alpha_(alpha), rho_(rho), kappa_(kappa) {}

Eigen::VectorXd OperatorMatrix::apply(const Eigen::VectorXd& u) const {
    if (u.size() != A_.cols())
        throw DimensionError("operator of size " + std::to_string(A_.cols()) +
                             " applied to vector of length " + std::to_string(u.size()));
    return A_ * u;
}

double OperatorMatrix::norm_inf() const { return A_.cwiseAbs().rowwise().sum().maxCoeff(); }

void OperatorMatrix::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (Eigen::Index i = 0; i < A_.rows(); ++i) {
        for (Eigen::Index j = 0; j < A_.cols(); ++j) {
            if (j) out << ',';
            out << format_double(A_(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

OperatorMatrix assemble_matrix(const Grid& grid, double alpha, double rho, KappaRule kappa_rule,
                               ConstantRule constant_rule) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("alpha must lie in (0, 1), got " + format_double(alpha));
    if (rho == 0.0) rho = 1.0 + alpha;
    if (!(rho > 2.0 * alpha && rho <= 2.0))
        throw ParameterError("rho must lie in (2 alpha, 2], got " + format_double(rho));

    const int M = grid.M();
    const int n = M - 1;
    const double chi = rho - 2.0 * alpha;
    const double kap = kappa_rho(alpha, rho, kappa_rule);

    // Weights of the weighted-trapezoid splitting; c[k] couples nodes k apart.
    std::vector<double> c(M + 1, 0.0);
    c[1] = 0.5 * (std::pow(2.0, chi) + kap - 1.0);
    for (int k = 2; k <= M; ++k)
        c[k] = (std::pow(k + 1.0, chi) - std::pow(k - 1.0, chi)) / (2.0 * std::pow(double(k), rho));

    double diag = 0.0;
    for (int k = M - 1; k >= 1; --k) diag += c[k];
    diag *= 2.0;
    diag += (std::pow(M + 1.0, chi) - std::pow(M - 1.0, chi)) / std::pow(double(M), rho);
    diag += chi / (alpha * std::pow(double(M), 2.0 * alpha));

    const double h = grid.dx();
    const double scale =
        fractional_constant(alpha, constant_rule) / (chi * std::pow(h, 2.0 * alpha));

    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = scale * (i == j ? diag : -c[std::abs(i - j)]);
    return OperatorMatrix(std::move(A), alpha, rho, kap);
}

OperatorMatrix assemble_matrix(const Grid& grid, double alpha, const OperatorOptions& opts) {
    return assemble_matrix(grid, alpha, opts.rho, opts.kappa_rule, opts.constant_rule);
}

double laplacian_limit_check(const Grid& grid, double alpha, double amplitude) {
    if (alpha < 0.95 || alpha >= 1.0)
        throw ParameterError("laplacian_limit_check needs alpha in [0.95, 1)");
    const double pi = boost::math::constants::pi<double>();
    OperatorMatrix A = assemble_matrix(grid, alpha);
    Eigen::VectorXd s(grid.interior_count()), target(grid.interior_count());
    for (int j = 1; j < grid.M(); ++j) {
        double arg = pi * (grid.x(j) + 1.0) / 2.0;
        s[j - 1] = amplitude * std::sin(arg);
        target[j - 1] = amplitude * (pi * pi / 4.0) * std::sin(arg);
    }
    return (A.apply(s) - target).cwiseAbs().maxCoeff();
}

}  // namespace quench
