#pragma once

#include <string>

#include <Eigen/Dense>

#include "quench/grid.hpp"
#include "quench/model.hpp"

namespace quench {

double fractional_constant(double alpha, ConstantRule rule = ConstantRule::Standard);
double kappa_rho(double alpha, double rho, KappaRule rule);

// Discrete (-Delta)^alpha on the interior nodes with u = 0 outside (-1, 1).
// Symmetric Toeplitz, positive diagonal, nonpositive off-diagonal.
class OperatorMatrix {
public:
    OperatorMatrix(Eigen::MatrixXd entries, double alpha, double rho, double kappa);

    const Eigen::MatrixXd& entries() const { return A_; }
    Eigen::Index size() const { return A_.rows(); }
    double alpha() const { return alpha_; }
    double rho() const { return rho_; }
    double chi() const { return rho_ - 2.0 * alpha_; }
    double kappa() const { return kappa_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
    double norm_inf() const;
    // Row-major, headerless.
    void write_csv(const std::string& path) const;

private:
    Eigen::MatrixXd A_;
    double alpha_, rho_, kappa_;
};

OperatorMatrix assemble_matrix(const Grid& grid, double alpha, double rho = 0.0,
                               KappaRule kappa_rule = KappaRule::Consistent,
                               ConstantRule constant_rule = ConstantRule::Standard);
OperatorMatrix assemble_matrix(const Grid& grid, double alpha, const OperatorOptions& opts);

// max_j |(A s)_j - (-s'')(x_j)| for s(x) = amplitude * sin(pi (x+1)/2).
// Diagnostic for the alpha -> 1 local limit.
double laplacian_limit_check(const Grid& grid, double alpha, double amplitude = 1.0);

}  // namespace quench
