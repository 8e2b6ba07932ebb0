#include "quench/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "quench/analytic_bounds.hpp"
#include "quench/format.hpp"
#include "quench/fractional_operator.hpp"
#include "quench/noise.hpp"
#include "quench/oracles/oracles.hpp"
#include "quench/rng.hpp"
#include "quench/spde_solver.hpp"
#include "quench/spectral.hpp"

namespace quench::validation {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

double oracle_error(int M, double alpha) {
    Grid g(M);
    OperatorMatrix A = assemble_matrix(g, alpha);
    Eigen::VectorXd u(g.interior_count());
    for (int j = 1; j < M; ++j) u[j - 1] = oracle::bump(g.x(j), alpha);
    Eigen::VectorXd Au = A.apply(u);
    double err = 0.0, scale = 0.0;
    auto f = [alpha](double x) { return oracle::bump(x, alpha); };
    auto f2 = [alpha](double x) { return oracle::bump_dd(x, alpha); };
    for (int j = 1; j < M; ++j) {
        double x = g.x(j);
        if (std::abs(x) > 0.75) continue;
        double ref = oracle::pv_fractional_laplacian(f, f2, x, alpha);
        err = std::max(err, std::abs(Au[j - 1] - ref));
        scale = std::max(scale, std::abs(ref));
    }
    return err / scale;
}

}  // namespace

Check operator_oracle(int M, double alpha, double tol) {
    double e = oracle_error(M, alpha);
    return {"operator oracle M=" + std::to_string(M) + " alpha=" + fmt(alpha), e <= tol,
            "relative interior error " + fmt(e) + " (tol " + fmt(tol) + ")"};
}

Check operator_refinement(double alpha) {
    double e1 = oracle_error(41, alpha), e2 = oracle_error(81, alpha), e3 = oracle_error(161, alpha);
    return {"operator refinement alpha=" + fmt(alpha), e1 > e2 && e2 > e3,
            "errors " + fmt(e1) + ", " + fmt(e2) + ", " + fmt(e3) + "; ratios " + fmt(e1 / e2) +
                ", " + fmt(e2 / e3)};
}

Check fgn_covariance(double H, int n, int paths, double n_se) {
    FgnSampler s(n, 1.0, H);
    std::vector<double> mean(6, 0.0);
    for (int p = 0; p < paths; ++p) {
        auto x = s.sample(derive_seed(0xF6A, static_cast<std::uint64_t>(p))).increments;
        for (int k = 0; k <= 5; ++k) mean[k] += oracle::empirical_autocovariance(x, k) / paths;
    }
    auto gam = [H](int k) { return quench::fgn_autocovariance(k, 1.0, H); };
    bool ok = true;
    double worst = 0.0;
    for (int k = 0; k <= 5; ++k) {
        double se = std::sqrt(oracle::autocovariance_estimator_variance(gam, n, k) / paths);
        double z = std::abs(mean[k] - gam(k)) / se;
        worst = std::max(worst, z);
        ok = ok && z <= n_se;
    }
    return {"fGN autocovariance H=" + fmt(H), ok, "worst deviation " + fmt(worst) + " SE"};
}

Check fgn_white_noise_limit() {
    bool ok = quench::fgn_autocovariance(0, 0.01, 0.5) == 0.01;
    for (int k = 1; k <= 50; ++k) ok = ok && quench::fgn_autocovariance(k, 0.01, 0.5) == 0.0;
    return {"fGN H=1/2 is white", ok, "gamma(k) = 0 for k = 1..50"};
}

Check spectral_oracle(int M, double alpha, double tol) {
    Grid g(M);
    OperatorMatrix A = assemble_matrix(g, alpha);
    EigenPair p = principal_eigenpair(A, g);
    oracle::Matrix dense(A.size(), std::vector<double>(A.size()));
    for (Eigen::Index i = 0; i < A.size(); ++i)
        for (Eigen::Index j = 0; j < A.size(); ++j) dense[i][j] = A.entries()(i, j);
    std::vector<double> vals;
    oracle::Matrix vecs;
    oracle::jacobi_eigen(dense, vals, vecs);
    double sum = 0.0;
    for (auto& row : vecs) sum += row[0];
    double dmu = std::abs(vals[0] - p.mu1);
    double dpsi = 0.0;
    for (Eigen::Index i = 0; i < A.size(); ++i)
        dpsi = std::max(dpsi, std::abs(p.psi1[i] - vecs[i][0] / (g.dx() * sum)));
    bool positive = p.psi1.minCoeff() > 0.0;
    return {"spectral oracle M=" + std::to_string(M), dmu <= tol && dpsi <= tol && positive,
            "|dmu| " + fmt(dmu) + ", max|dpsi| " + fmt(dpsi) + ", min psi1 " + fmt(p.psi1.minCoeff())};
}

Check rayleigh_minimum(int M, double alpha, int trials) {
    Grid g(M);
    OperatorMatrix A = assemble_matrix(g, alpha);
    EigenPair p = principal_eigenpair(A, g);
    bool ok = rayleigh_min_check(A.entries(), p, trials, 0x5EED);
    return {"Rayleigh minimum M=" + std::to_string(M), ok,
            std::to_string(trials) + " random quotients vs mu1 = " + fmt(p.mu1)};
}

BoundCheckResult bound_inequalities(const BoundCheckConfig& cfg) {
    ModelParams m;
    m.M = cfg.M;
    m.alpha = cfg.alpha;
    m.H = cfg.H;
    m.lambda = cfg.lambda;
    m.gamma = cfg.gamma;
    m.kappa1 = cfg.kappa1;
    m.kappa2 = cfg.kappa2;
    m.k_fn = TimeProfile::constant(cfg.k);
    m.T = cfg.T;
    m.N = cfg.n_steps;
    bounds::BoundParams bp = bounds::make_bound_params(m, cfg.W1);

    BoundCheckResult r;
    r.w = bp.w();
    r.nu = bounds::nu_of(cfg.T, bp);
    r.M_T = bounds::M_of(cfg.T, bp);
    if (r.w > r.nu) r.tail = bounds::tail_upper_bound(r.w, r.nu, r.M_T);
    r.cheb_dependent = bounds::chebyshev_bound(cfg.T, bp, false);
    r.cheb_independent = bounds::chebyshev_bound(cfg.T, bp, true);

    NoiseSpec spec = bounds::noise_for(bp, cfg.T, cfg.n_steps);
    FgnSampler fgn(spec.n_steps, spec.dt(), spec.H);
    auto log_mu = bounds::eigen_log_mu(bp, cfg.W1);
    for (long i = 0; i < cfg.paths; ++i) {
        NoisePath path = mixed_path(spec, derive_seed(cfg.seed, static_cast<std::uint64_t>(i)), fgn);
        auto up = bounds::tau_star_sample(path, bp);
        auto lo = bounds::tau_lower_sample(path, bp, log_mu);
        if (up.threshold_time) ++r.crossings;
        // tau_* <= tau*: a missing crossing counts as +infinity
        bool ok = !up.threshold_time || (lo.threshold_time && *lo.threshold_time <= *up.threshold_time);
        if (!ok) ++r.ordering_violations;
    }
    r.empirical = double(r.crossings) / cfg.paths;
    return r;
}

std::vector<Check> bound_checks(const BoundCheckConfig& cfg) {
    BoundCheckResult r = bound_inequalities(cfg);
    std::vector<Check> out;
    std::string emp = "empirical P[tau* <= T] = " + fmt(r.empirical);
    if (r.tail >= 0.0)
        out.push_back({"tail bound dominates", r.empirical <= r.tail,
                       emp + " vs " + fmt(r.tail) + " (w " + fmt(r.w) + " > nu " + fmt(r.nu) + ")"});
    else
        out.push_back({"tail bound dominates", true, "w <= nu(T): bound not applicable"});
    out.push_back({"Chebyshev bound (dependent) dominates", r.empirical <= r.cheb_dependent,
                   emp + " vs " + fmt(r.cheb_dependent)});
    out.push_back({"Chebyshev bound (independent) dominates", r.empirical <= r.cheb_independent,
                   emp + " vs " + fmt(r.cheb_independent)});
    out.push_back({"tau_* <= tau* on every path", r.ordering_violations == 0,
                   std::to_string(r.ordering_violations) + " violations over " +
                       std::to_string(cfg.paths) + " paths"});
    return out;
}

Check gamma_closed_form() {
    double v = bounds::gamma_bound_value(1.0, 1.0);
    double ref = 1.0 - std::exp(-1.0);
    return {"gamma bound P(1,1) = 1 - 1/e", std::abs(v - ref) <= 1e-10,
            "value " + format_double(v) + ", |diff| " + fmt(std::abs(v - ref))};
}

Check small_instance_oracle(int n_seeds, double tol) {
    ModelParams m;
    m.M = 5;
    m.N = 10;
    m.T = 1.0;
    m.lambda = 0.4;
    m.kappa1 = 0.5;
    m.kappa2 = 0.5;
    QuenchingSolver solver(m);
    double worst = 0.0;
    bool ok = true;
    for (int s = 0; s < n_seeds; ++s) {
        std::uint64_t seed = derive_seed(0xA11CE, static_cast<std::uint64_t>(s));
        auto states = solver.trajectory(solver.sample_path(seed));
        auto ref = oracle::naive_trajectory(m.M, m.N, m.T, m.alpha, m.H, m.lambda, m.gamma, m.kappa1,
                                            m.kappa2, m.c, m.epsilon, seed);
        if (states.size() != ref.states.size()) {
            ok = false;
            continue;
        }
        for (std::size_t n = 0; n < states.size(); ++n)
            for (Eigen::Index j = 0; j < states[n].size(); ++j)
                worst = std::max(worst, std::abs(states[n][j] - ref.states[n][j]));
    }
    ok = ok && worst <= tol;
    return {"M=5, N=10 trajectories vs naive pipeline", ok,
            std::to_string(n_seeds) + " seeds, max |diff| " + fmt(worst)};
}

std::vector<Check> run_suite(bool quick) {
    std::vector<Check> out;
    for (double a : {0.4, 0.6}) out.push_back(operator_oracle(81, a));
    out.push_back(operator_refinement(0.6));
    for (double H : {0.6, 0.7, 0.9}) out.push_back(fgn_covariance(H, 1 << 14, quick ? 2 : 8));
    out.push_back(fgn_white_noise_limit());
    out.push_back(spectral_oracle());
    out.push_back(rayleigh_minimum());
    BoundCheckConfig bc;
    if (quick) bc.paths = 400;
    for (auto& c : bound_checks(bc)) out.push_back(c);
    out.push_back(gamma_closed_form());
    out.push_back(small_instance_oracle());
    return out;
}

}  // namespace quench::validation
