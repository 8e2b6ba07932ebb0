#include "quench/spde_solver.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

#include "quench/errors.hpp"
#include "quench/format.hpp"

namespace quench {

Eigen::VectorXd initial_condition(const Grid& grid, double c) {
    if (!(c >= 0.0 && c < 1.0)) throw ParameterError("initial amplitude c must lie in [0, 1)");
    Eigen::VectorXd u(grid.interior_count());
    for (int j = 1; j < grid.M(); ++j) {
        double x = grid.x(j);
        u[j - 1] = c * (1.0 - x * x);
    }
    return u;
}

Eigen::VectorXd source_term(const Eigen::VectorXd& u, double lambda, double gamma) {
    Eigen::VectorXd g(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        double z = 1.0 - u[j];
        if (!(z > 0.0))
            throw SingularityError("source term evaluated at u = " + format_double(u[j]) + " >= 1");
        g[j] = lambda / (z * z) - gamma * z;
    }
    return g;
}

SteppingFactorization::SteppingFactorization(const OperatorMatrix& A, double dt) : dt_(dt) {
    if (!(dt > 0.0)) throw ParameterError("time step must be > 0");
    const auto n = A.size();
    S_ = Eigen::MatrixXd::Identity(n, n) + dt * A.entries();
    llt_.compute(S_);
    if (llt_.info() != Eigen::Success)
        throw ConfigError("stepping matrix I + dt A is not positive definite");
}

Eigen::VectorXd SteppingFactorization::solve(const Eigen::VectorXd& rhs) const {
    if (rhs.size() != S_.rows()) throw DimensionError("right-hand side has wrong length");
    return llt_.solve(rhs);
}

SteppingFactorization factorize(const OperatorMatrix& A, double dt) {
    return SteppingFactorization(A, dt);
}

Eigen::VectorXd step(const Eigen::VectorXd& u, const SteppingFactorization& F,
                     const Eigen::VectorXd& g, const Eigen::VectorXd& kick) {
    if (g.size() != u.size() || kick.size() != u.size())
        throw DimensionError("step inputs have inconsistent lengths");
    return F.solve(u + F.dt() * g + kick);
}

QuenchingSolver::QuenchingSolver(const ModelParams& params)
    : p_((params.validate(), params)),
      grid_(params.M),
      A_(assemble_matrix(grid_, params.alpha, params.op)),
      F_(A_, params.dt()),
      u0_(initial_condition(grid_, params.c)),
      fgn_(params.N, params.dt(), params.H) {}

NoisePath QuenchingSolver::sample_path(std::uint64_t seed) const {
    return mixed_path(p_.noise(), seed, fgn_);
}

RealizationResult QuenchingSolver::run(std::uint64_t seed, bool record_series) const {
    RealizationResult r = run_with_path(sample_path(seed), record_series);
    r.seed = seed;
    return r;
}

RealizationResult QuenchingSolver::run_with_path(const NoisePath& path, bool record_series) const {
    if (path.n_steps != p_.N) throw DimensionError("noise path length does not match N");
    RealizationResult r;
    r.embedding_warning = path.embedding_warning;
    const double level = 1.0 - p_.epsilon;
    const double dt = p_.dt();
    const auto n_nodes = u0_.size();
    if (record_series) r.sup_norm_series.reserve(p_.N + 1);

    Eigen::VectorXd u = u0_;
    Eigen::VectorXd rhs(n_nodes);
    for (int n = 0;; ++n) {
        if (!u.allFinite()) {
            r.failed = true;
            return r;
        }
        // detection precedes any source evaluation
        if (u.maxCoeff() > level) {
            r.quenched = true;
            r.T_q = n == 0 ? 0.0 : (n - 1) * dt;
            return r;
        }
        if (record_series) r.sup_norm_series.push_back(u.cwiseAbs().maxCoeff());
        if (n == p_.N) return r;

        const double dN = path.dN[n];
        for (Eigen::Index j = 0; j < n_nodes; ++j) {
            double z = 1.0 - u[j];
            rhs[j] = u[j] + dt * (p_.lambda / (z * z) - p_.gamma * z) + noise_amplitude(u[j]) * dN;
        }
        u = F_.solve(rhs);
        r.steps_taken = n + 1;
    }
}

std::vector<Eigen::VectorXd> QuenchingSolver::trajectory(const NoisePath& path) const {
    std::vector<Eigen::VectorXd> states;
    const double level = 1.0 - p_.epsilon;
    Eigen::VectorXd u = u0_;
    for (int n = 0; n <= p_.N; ++n) {
        if (!u.allFinite() || u.maxCoeff() > level) break;
        states.push_back(u);
        if (n == p_.N) break;
        Eigen::VectorXd kick = u.unaryExpr([](double v) { return noise_amplitude(v); }) * path.dN[n];
        u = step(u, F_, source_term(u, p_.lambda, p_.gamma), kick);
    }
    return states;
}

RealizationResult run_realization(const ModelParams& params, std::uint64_t seed) {
    return QuenchingSolver(params).run(seed);
}

void write_trajectory_csv(const RealizationResult& r, double dt, const std::string& file) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot open '" + file + "' for writing");
    out << "t,sup_norm\n";
    for (std::size_t n = 0; n < r.sup_norm_series.size(); ++n)
        out << format_double(n * dt) << ',' << format_double(r.sup_norm_series[n]) << '\n';
    if (!out) throw IoError("write failed for '" + file + "'");
}

std::string realization_json(const RealizationResult& r) {
    nlohmann::ordered_json j;
    j["seed"] = r.seed;
    j["quenched"] = r.quenched;
    j["T_q"] = r.T_q ? nlohmann::ordered_json(*r.T_q) : nlohmann::ordered_json(nullptr);
    j["failure"] = r.failed;
    j["steps_taken"] = r.steps_taken;
    j["embedding_warning"] = r.embedding_warning;
    return j.dump(2);
}

}  // namespace quench
