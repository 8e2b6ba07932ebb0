#include "quench/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "quench/errors.hpp"
#include "quench/format.hpp"
#include "quench/rng.hpp"

namespace quench {

double EnsembleStats::std_error_Tq() const {
    if (!var_Tq || n_quenched < 2) return 0.0;
    return std::sqrt(*var_Tq / n_quenched);
}

namespace {

void finish(EnsembleStats& s, double mean, double m2) {
    long valid = s.n_valid();
    s.quench_probability = valid > 0 ? double(s.n_quenched) / valid : 0.0;
    double p = s.quench_probability;
    s.std_error_p = valid > 0 ? std::sqrt(p * (1.0 - p) / valid) : 0.0;
    s.mean_Tq.reset();
    s.var_Tq.reset();
    if (s.n_quenched >= 1) s.mean_Tq = mean;
    if (s.n_quenched >= 2) s.var_Tq = m2 / (s.n_quenched - 1);
}

}  // namespace

EnsembleStats aggregate(const std::vector<RealizationResult>& results) {
    EnsembleStats s;
    s.n_realizations = static_cast<long>(results.size());
    // Welford, in index order
    double mean = 0.0, m2 = 0.0;
    for (const auto& r : results) {
        if (r.failed) {
            ++s.failures;
            continue;
        }
        if (!r.quenched) continue;
        ++s.n_quenched;
        double x = *r.T_q;
        double d = x - mean;
        mean += d / s.n_quenched;
        m2 += d * (x - mean);
    }
    finish(s, mean, m2);
    return s;
}

EnsembleStats pool(const EnsembleStats& a, const EnsembleStats& b) {
    EnsembleStats s;
    s.n_realizations = a.n_realizations + b.n_realizations;
    s.n_quenched = a.n_quenched + b.n_quenched;
    s.failures = a.failures + b.failures;
    double ma = a.mean_Tq.value_or(0.0), mb = b.mean_Tq.value_or(0.0);
    double m2a = a.var_Tq.value_or(0.0) * std::max(0L, a.n_quenched - 1);
    double m2b = b.var_Tq.value_or(0.0) * std::max(0L, b.n_quenched - 1);
    double mean = 0.0, m2 = 0.0;
    if (s.n_quenched > 0) {
        double na = double(a.n_quenched), nb = double(b.n_quenched), n = na + nb;
        double d = mb - ma;
        mean = ma + d * nb / n;
        m2 = m2a + m2b + d * d * na * nb / n;
    }
    finish(s, mean, m2);
    return s;
}

std::vector<RealizationResult> run_ensemble(const QuenchingSolver& solver, long n_realizations,
                                            std::uint64_t master_seed, int threads,
                                            long first_index) {
    if (n_realizations < 1) throw ParameterError("ensemble needs at least one realization");
    std::vector<RealizationResult> results(static_cast<std::size_t>(n_realizations));
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n_realizations) return;
            try {
                results[i] = solver.run(
                    derive_seed(master_seed, static_cast<std::uint64_t>(first_index + i)), false);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n_realizations;
                return;
            }
        }
    };

    threads = std::max(1, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return results;
}

EnsembleStats estimate(const ModelParams& params, long n_realizations, std::uint64_t master_seed,
                       int threads) {
    QuenchingSolver solver(params);
    EnsembleStats s = aggregate(run_ensemble(solver, n_realizations, master_seed, threads));
    if (s.failures == s.n_realizations)
        throw EnsembleError("all " + std::to_string(s.n_realizations) + " realizations failed");
    return s;
}

ModelParams with_parameter(ModelParams p, const std::string& name, double value) {
    if (name == "lambda") p.lambda = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "alpha") p.alpha = value;
    else if (name == "H") p.H = value;
    else if (name == "kappa1") p.kappa1 = value;
    else if (name == "kappa2") p.kappa2 = value;
    else if (name == "c") p.c = value;
    else if (name == "T") p.T = value;
    else if (name == "M") p.M = static_cast<int>(value);
    else if (name == "N") p.N = static_cast<int>(value);
    else throw ParameterError("cannot sweep over unknown parameter '" + name + "'");
    return p;
}

SweepResult sweep(const ModelParams& base, const std::vector<std::string>& axes,
                  const std::vector<std::vector<double>>& points, long n_realizations,
                  std::uint64_t master_seed, int threads,
                  const std::function<void(std::size_t, const EnsembleStats&)>& progress) {
    SweepResult r;
    r.axes = axes;
    r.points = points;
    r.master_seed = master_seed;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].size() != axes.size())
            throw DimensionError("sweep point does not match the number of axes");
        ModelParams p = base;
        for (std::size_t a = 0; a < axes.size(); ++a) p = with_parameter(p, axes[a], points[k][a]);
        r.stats.push_back(estimate(p, n_realizations, master_seed, threads));
        if (progress) progress(k, r.stats.back());
    }
    return r;
}

SweepResult sweep_lambda(const ModelParams& base, const std::vector<double>& lambdas,
                         long n_realizations, std::uint64_t master_seed, int threads) {
    std::vector<std::vector<double>> pts;
    for (double l : lambdas) pts.push_back({l});
    return sweep(base, {"lambda"}, pts, n_realizations, master_seed, threads);
}

SweepResult sweep_kappa2(const ModelParams& base, const std::vector<double>& kappa2s,
                         long n_realizations, std::uint64_t master_seed, int threads) {
    std::vector<std::vector<double>> pts;
    for (double k : kappa2s) pts.push_back({k});
    return sweep(base, {"kappa2"}, pts, n_realizations, master_seed, threads);
}

SweepResult sweep_alpha_H(const ModelParams& base, const std::vector<double>& alphas,
                          const std::vector<double>& Hs, long n_realizations,
                          std::uint64_t master_seed, int threads) {
    for (double a : alphas)
        if (!(a >= 0.1 && a <= 0.9))
            throw ParameterError("sweep alphas must lie in [0.1, 0.9], got " + format_double(a));
    for (double h : Hs)
        if (!(h >= 0.5 && h < 1.0))
            throw ParameterError("sweep Hurst values must lie in [0.5, 1), got " + format_double(h));
    std::vector<std::vector<double>> pts;
    for (double a : alphas)
        for (double h : Hs) pts.push_back({a, h});
    return sweep(base, {"alpha", "H"}, pts, n_realizations, master_seed, threads);
}

}  // namespace quench
