#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "quench/fractional_operator.hpp"
#include "quench/grid.hpp"
#include "quench/model.hpp"
#include "quench/noise.hpp"

namespace quench {

Eigen::VectorXd initial_condition(const Grid& grid, double c);

// lambda/(1-u)^2 - gamma (1-u). Throws SingularityError if any u_j >= 1.
Eigen::VectorXd source_term(const Eigen::VectorXd& u, double lambda, double gamma);

// Multiplicative noise amplitude, clamped at zero past the singular level.
inline double noise_amplitude(double u) { return u < 1.0 ? 1.0 - u : 0.0; }

// Cholesky factor of the stepping matrix I + dt A, built once and shared
// read-only by every realization.
class SteppingFactorization {
public:
    SteppingFactorization(const OperatorMatrix& A, double dt);
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    const Eigen::MatrixXd& stepping_matrix() const { return S_; }
    double dt() const { return dt_; }

private:
    Eigen::MatrixXd S_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double dt_;
};

SteppingFactorization factorize(const OperatorMatrix& A, double dt);

// solve(F, u + dt g + kick); `kick` is the already scaled noise term
// pi(u) * dN_n at every node.
Eigen::VectorXd step(const Eigen::VectorXd& u, const SteppingFactorization& F,
                     const Eigen::VectorXd& g, const Eigen::VectorXd& kick);

struct RealizationResult {
    std::uint64_t seed = 0;
    bool quenched = false;
    std::optional<double> T_q;
    bool failed = false;  // NaN or overflow in the state
    int steps_taken = 0;
    bool embedding_warning = false;
    std::vector<double> sup_norm_series;  // ||u(t_n)||_inf over compliant steps
};

class QuenchingSolver {
public:
    explicit QuenchingSolver(const ModelParams& params);

    const ModelParams& params() const { return p_; }
    const Grid& grid() const { return grid_; }
    const OperatorMatrix& matrix() const { return A_; }
    const SteppingFactorization& factorization() const { return F_; }
    const Eigen::VectorXd& u0() const { return u0_; }

    RealizationResult run(std::uint64_t seed, bool record_series = true) const;
    RealizationResult run_with_path(const NoisePath& path, bool record_series = true) const;
    // Full state after every compliant step (testing aid; memory N x M).
    std::vector<Eigen::VectorXd> trajectory(const NoisePath& path) const;
    NoisePath sample_path(std::uint64_t seed) const;

private:
    ModelParams p_;
    Grid grid_;
    OperatorMatrix A_;
    SteppingFactorization F_;
    Eigen::VectorXd u0_;
    FgnSampler fgn_;
};

RealizationResult run_realization(const ModelParams& params, std::uint64_t seed);

// Columns t, sup_norm.
void write_trajectory_csv(const RealizationResult& r, double dt, const std::string& file);
std::string realization_json(const RealizationResult& r);

}  // namespace quench
