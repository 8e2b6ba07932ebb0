#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quench/model.hpp"
#include "quench/spde_solver.hpp"

namespace quench {

struct EnsembleStats {
    long n_realizations = 0;
    long n_quenched = 0;
    long failures = 0;
    double quench_probability = 0.0;  // n_quenched / (n_realizations - failures)
    std::optional<double> mean_Tq;    // over quenched realizations only
    std::optional<double> var_Tq;     // (n-1) denominator; needs n_quenched >= 2
    double std_error_p = 0.0;         // sqrt(p (1-p) / (n_realizations - failures))

    long n_valid() const { return n_realizations - failures; }
    // Standard error of mean_Tq; 0 when undefined.
    double std_error_Tq() const;
};

// Order of `results` fixes the summation order, so aggregate the vector in
// realization-index order for reproducible moments.
EnsembleStats aggregate(const std::vector<RealizationResult>& results);
// Combine two disjoint ensembles. Counts are exact; moments use the pairwise
// update and agree with a direct aggregate up to rounding.
EnsembleStats pool(const EnsembleStats& a, const EnsembleStats& b);

// Realization i of an ensemble uses seed derive_seed(master_seed, i + first_index).
std::vector<RealizationResult> run_ensemble(const QuenchingSolver& solver, long n_realizations,
                                            std::uint64_t master_seed, int threads = 1,
                                            long first_index = 0);

EnsembleStats estimate(const ModelParams& params, long n_realizations, std::uint64_t master_seed,
                       int threads = 1);

struct SweepResult {
    std::vector<std::string> axes;              // parameter column names
    std::vector<std::vector<double>> points;    // one row of axis values per grid point
    std::vector<EnsembleStats> stats;
    std::uint64_t master_seed = 0;
};

// Each point reuses master_seed, so the points share their noise paths
// (common random numbers).
SweepResult sweep(const ModelParams& base, const std::vector<std::string>& axes,
                  const std::vector<std::vector<double>>& points, long n_realizations,
                  std::uint64_t master_seed, int threads = 1,
                  const std::function<void(std::size_t, const EnsembleStats&)>& progress = {});

SweepResult sweep_lambda(const ModelParams& base, const std::vector<double>& lambdas,
                         long n_realizations, std::uint64_t master_seed, int threads = 1);
SweepResult sweep_kappa2(const ModelParams& base, const std::vector<double>& kappa2s,
                         long n_realizations, std::uint64_t master_seed, int threads = 1);
// Long format: one row per (alpha, H), alpha outermost.
SweepResult sweep_alpha_H(const ModelParams& base, const std::vector<double>& alphas,
                          const std::vector<double>& Hs, long n_realizations,
                          std::uint64_t master_seed, int threads = 1);

// Sets parameter `name` (lambda, gamma, alpha, H, kappa1, kappa2, c, T, M, N)
// on a copy of the model.
ModelParams with_parameter(ModelParams p, const std::string& name, double value);

}  // namespace quench
