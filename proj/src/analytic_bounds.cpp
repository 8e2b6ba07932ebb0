#include "quench/analytic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

#include "quench/errors.hpp"
#include "quench/format.hpp"
#include "quench/fractional_operator.hpp"
#include "quench/rng.hpp"
#include "quench/spde_solver.hpp"

namespace quench::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(exp(x) + exp(y))
double log_add(double x, double y) {
    if (x == -kInf) return y;
    if (y == -kInf) return x;
    double m = std::max(x, y);
    return m + std::log1p(std::exp(-std::abs(x - y)));
}

template <class F>
double integrate(F f, double a, double b) {
    if (b <= a) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13);
}

// exponent of the deterministic growth part: -3(gamma eta t - mu1 K - A)
double drift_exponent(double t, const BoundParams& bp, double eta) {
    return -3.0 * (bp.gamma * eta * t - bp.mu1 * K_of(t, bp.k_fn) - A_of(t, bp.a_fn));
}

}  // namespace

void BoundParams::validate() const {
    if (!(eta1 > 0.0 && eta1 <= eta2)) throw ParameterError("need 0 < eta1 <= eta2");
    if (!(zeta_m >= 0.0 && zeta_m <= zeta_M)) throw ParameterError("need 0 <= zeta_m <= zeta_M");
    if (!(mu1 > 0.0)) throw ParameterError("principal eigenvalue mu1 must be > 0");
    if (psi1.size() > 0 && psi1.minCoeff() <= 0.0)
        throw ParameterError("psi1 must be strictly positive");
    if (!(H > 0.5 && H < 1.0)) throw ParameterError("H must lie in (1/2, 1)");
    if (lambda < 0.0 || gamma < 0.0) throw ParameterError("lambda, gamma must be >= 0");
}

double BoundParams::w() const {
    double den = 3.0 * lambda * eta1 * zeta_m;
    if (den == 0.0) return kInf;
    return v0_psi1 * v0_psi1 * v0_psi1 / den;
}

namespace {
BoundParams base_params(const ModelParams& model, EigenPair* pair_out, EigenPair& pair, Grid& grid) {
    model.validate();
    OperatorMatrix A = assemble_matrix(grid, model.alpha, model.op);
    pair = principal_eigenpair(A, grid);
    if (pair_out) *pair_out = pair;
    BoundParams bp;
    bp.mu1 = pair.mu1;
    bp.psi1 = pair.psi1;
    bp.psi_m = pair.psi1.minCoeff();
    bp.gamma = model.gamma;
    bp.lambda = model.lambda;
    bp.H = model.H;
    bp.a_fn = model.a_fn.scaled(model.kappa1);
    bp.b_fn = model.b_fn.scaled(model.kappa2);
    bp.k_fn = model.k_fn;
    return bp;
}
}  // namespace

BoundParams make_bound_params(const ModelParams& model, double W1, EigenPair* pair_out) {
    Grid grid(model.M);
    EigenPair pair;
    BoundParams bp = base_params(model, pair_out, pair, grid);
    Eigen::VectorXd v0 = W1 * pair.psi1;
    bp.v0_psi1 = inner_product_v0_psi1(v0, pair, grid);
    return bp;
}

BoundParams make_bound_params_from_model(const ModelParams& model, EigenPair* pair_out) {
    Grid grid(model.M);
    EigenPair pair;
    BoundParams bp = base_params(model, pair_out, pair, grid);
    Eigen::VectorXd v0 = Eigen::VectorXd::Ones(grid.interior_count()) - initial_condition(grid, model.c);
    bp.v0_psi1 = inner_product_v0_psi1(v0, pair, grid);
    return bp;
}

double K_of(double t, const TimeProfile& k_fn) {
    if (t < 0.0) throw DomainError("K(t) needs t >= 0");
    return 0.5 * k_fn.integral_of_square(t);
}

double A_of(double t, const TimeProfile& a_fn) {
    if (t < 0.0) throw DomainError("A(t) needs t >= 0");
    return 0.5 * a_fn.integral_of_square(t);
}

double M_of(double T, const BoundParams& bp) {
    if (!(T > 0.0)) throw DomainError("M(T) needs T > 0");
    return 18.0 * bp.a_fn.integral_of_square(T) +
           36.0 * bp.H * std::pow(T, 2.0 * bp.H - 1.0) * bp.b_fn.integral_of_square(T);
}

double nu_of(double T, const BoundParams& bp, VarianceModel model) {
    if (!(T > 0.0)) throw DomainError("nu(T) needs T > 0");
    const bool exact = model == VarianceModel::Exact && bp.b_fn.is_constant();
    const double b2 = bp.b_fn.constant_value() * bp.b_fn.constant_value();
    auto f = [&](double t) {
        double var = bp.a_fn.integral_of_square(t);
        if (exact)
            var += b2 * std::pow(t, 2.0 * bp.H);
        else if (t > 0.0)
            var += 2.0 * bp.H * std::pow(t, 2.0 * bp.H - 1.0) * bp.b_fn.integral_of_square(t);
        return std::exp(drift_exponent(t, bp, bp.eta1) + 4.5 * var);
    };
    return integrate(f, 0.0, T);
}

double tail_upper_bound(double w, double nu_T, double M_T) {
    if (!(w > nu_T))
        throw ConditionError("tail bound needs w > nu(T); got w = " + format_double(w) +
                             ", nu(T) = " + format_double(nu_T));
    if (std::isinf(w)) return 0.0;
    if (!(M_T > 0.0)) return 0.0;  // deterministic functional: it never reaches w
    double d = std::log(w) - std::log(nu_T);
    return std::min(1.0, 2.0 * std::exp(-d * d / (2.0 * M_T)));
}

double tail_upper_bound(double T, const BoundParams& bp, VarianceModel model) {
    return tail_upper_bound(bp.w(), nu_of(T, bp, model), M_of(T, bp));
}

double chebyshev_bound(double T, const BoundParams& bp, bool independent, ChebyshevForm form) {
    if (!(T > 0.0)) throw DomainError("Chebyshev bound needs T > 0");
    const double w = bp.w();
    if (std::isinf(w)) return 0.0;
    const double H = bp.H;
    auto fbm_var = [&](double t) {
        return t > 0.0 ? H * std::pow(t, 2.0 * H - 1.0) * bp.b_fn.integral_of_square(t) : 0.0;
    };
    double integral = 0.0;
    if (independent) {
        integral = integrate(
            [&](double t) {
                double K = K_of(t, bp.k_fn), A = A_of(t, bp.a_fn);
                return std::exp(3.0 * (bp.mu1 * K - bp.gamma * bp.eta1 * t + 4.0 * A + 3.0 * fbm_var(t)));
            },
            0.0, T);
    } else {
        const double a_weight = form == ChebyshevForm::Printed ? 6.0 : 36.0;
        double first = integrate(
            [&](double t) {
                double K = K_of(t, bp.k_fn), A = A_of(t, bp.a_fn);
                return std::exp(6.0 * (bp.mu1 * K - bp.gamma * bp.eta1 * t) + a_weight * A);
            },
            0.0, T);
        double second = integrate(
            [&](double t) { return std::exp(6.0 * A_of(t, bp.a_fn) + 36.0 * fbm_var(t)); }, 0.0, T);
        integral = first + second;
    }
    return std::min(1.0, integral / w);
}

double gamma_bound_value(double minus_nu, double Lambda_tilde) {
    if (!(minus_nu > 0.0)) throw DomainError("gamma bound needs -nu > 0");
    if (Lambda_tilde < 0.0) throw DomainError("gamma bound needs Lambda_tilde >= 0");
    if (Lambda_tilde == 0.0) return 0.0;
    if (std::isinf(Lambda_tilde)) return 1.0;
    return boost::math::gamma_p(minus_nu, Lambda_tilde);
}

GammaBound gamma_lower_bound(const BoundParams& bp, double Lambda_cap) {
    GammaBound g;
    g.nu = (1.0 + bp.mu1 - bp.gamma * bp.eta1) / 3.0;
    const double w = bp.w();
    g.Lambda_tilde = std::isinf(w) ? 0.0 : 2.0 * Lambda_cap / (9.0 * w);
    if (g.nu >= 0.0) {
        g.almost_sure = true;
        g.value = 1.0;
        return g;
    }
    if (!(g.Lambda_tilde > 0.0)) {
        if (std::isinf(w)) return g;  // lambda = 0: nothing to bound
        throw DomainError("gamma bound needs Lambda_tilde > 0");
    }
    g.value = gamma_bound_value(-g.nu, g.Lambda_tilde);
    return g;
}

double tau_star_log_integrand(const NoisePath& path, int n, const BoundParams& bp) {
    return drift_exponent(path.t(n), bp, bp.eta1) + 3.0 * path.N[n];
}

namespace {
// Shared accumulation: I(t_0) = 0, I(t_{n+1}) = I(t_n) + dt exp(f(n)),
// first n with I(t_n) >= threshold.
template <class LogF>
void accumulate(const NoisePath& path, double threshold, LogF log_f, PathFunctional& out) {
    out.threshold = threshold;
    const double log_dt = std::log(path.dt);
    const double log_thr = std::log(threshold);
    double logI = -kInf;
    out.integral_series.reserve(path.n_steps + 1);
    out.log_integral_series.reserve(path.n_steps + 1);
    for (int n = 0; n <= path.n_steps; ++n) {
        if (n > 0) logI = log_add(logI, log_dt + log_f(n - 1));
        out.log_integral_series.push_back(logI);
        out.integral_series.push_back(std::exp(logI));
        if (!out.threshold_time && logI >= log_thr) out.threshold_time = path.t(n);
    }
}
}  // namespace

PathFunctional tau_star_sample(const NoisePath& path, const BoundParams& bp) {
    PathFunctional out;
    const double w = bp.w();
    if (std::isinf(w)) {
        out.threshold = w;
        out.integral_series.assign(path.n_steps + 1, 0.0);
        out.log_integral_series.assign(path.n_steps + 1, -kInf);
        return out;
    }
    accumulate(path, w, [&](int n) { return tau_star_log_integrand(path, n, bp); }, out);
    return out;
}

LogMu eigen_log_mu(const BoundParams& bp, double W1) {
    if (!(W1 > 0.0) || !(bp.psi_m > 0.0))
        throw ConfigError("mu(t) must be positive: need W1 > 0 and psi_m > 0");
    const double c = std::log(W1 * bp.psi_m);
    return [bp, c](double t) {
        return c + bp.gamma * bp.eta2 * t - bp.mu1 * K_of(t, bp.k_fn) - A_of(t, bp.a_fn);
    };
}

SemigroupMu::SemigroupMu(const Eigen::MatrixXd& A, const Eigen::VectorXd& v0, const BoundParams& bp)
    : bp_(bp) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw SpectralError("eigendecomposition failed");
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
    coeffs_ = evecs_.transpose() * v0;
}

double SemigroupMu::log_mu(double t) const {
    // evolution generated by -(1/2) k^2 A: exp(-K(t) A) v0
    double K = K_of(t, bp_.k_fn);
    Eigen::VectorXd scaled = coeffs_;
    for (Eigen::Index i = 0; i < scaled.size(); ++i) scaled[i] *= std::exp(-K * evals_[i]);
    double inf = (evecs_ * scaled).minCoeff();
    if (!(inf > 0.0)) throw ConfigError("semigroup action on v0 is not positive");
    return std::log(inf) + bp_.eta2 * bp_.gamma * t - A_of(t, bp_.a_fn);
}

LowerPathFunctional tau_lower_sample(const NoisePath& path, const BoundParams& bp,
                                     const LogMu& log_mu) {
    LowerPathFunctional out;
    const double den = 4.0 * bp.lambda * bp.eta2 * bp.zeta_M;
    const double threshold = den > 0.0 ? 1.0 / den : kInf;
    auto log_f = [&](int n) {
        double lm = log_mu(path.t(n));
        if (!std::isfinite(lm)) throw ConfigError("mu(t) must be positive and finite");
        return 3.0 * path.N[n] - 3.0 * lm;
    };
    if (std::isinf(threshold)) {
        out.threshold = threshold;
        for (int n = 0; n <= path.n_steps; ++n) {
            log_f(n);  // still validates mu
            out.integral_series.push_back(0.0);
            out.log_integral_series.push_back(-kInf);
            out.G_series.push_back(1.0);
        }
        return out;
    }
    accumulate(path, threshold, log_f, out);
    out.G_series.reserve(out.integral_series.size());
    for (double I : out.integral_series)
        out.G_series.push_back(std::pow(std::clamp(1.0 - den * I, 0.0, 1.0), 0.25));
    return out;
}

GlobalExistence global_existence_check(const NoisePath& path, const BoundParams& bp, double W1,
                                       double T_trunc) {
    GlobalExistence g;
    const double den = 4.0 * bp.lambda * bp.eta2 * bp.zeta_M;
    const double base = W1 * bp.psi_m;
    g.W2 = den > 0.0 ? base * base * base / den : kInf;
    const double k = bp.k_fn(T_trunc), a = bp.a_fn(T_trunc);
    g.decay_rate = -3.0 * (bp.gamma * bp.eta2 - bp.mu1 * k * k / 2.0 - a * a / 2.0);
    if (!(g.W2 > 0.0)) return g;
    if (T_trunc > path.n_steps * path.dt * (1.0 + 1e-12))
        throw DomainError("T_trunc exceeds the path horizon");

    // Same integrand and threshold as tau_lower_sample, scaled by (W1 psi_m)^3.
    NoisePath cut = path;
    int n_cut = std::min(path.n_steps, static_cast<int>(std::floor(T_trunc / path.dt + 1e-9)));
    cut.n_steps = n_cut;
    LowerPathFunctional lower = tau_lower_sample(cut, bp, eigen_log_mu(bp, W1));
    g.integral = base * base * base * lower.integral_series.back();
    g.holds = !lower.threshold_time && g.decay_rate < 0.0;
    return g;
}

double lower_bound_value(double m_w, double U_w) {
    if (!(m_w > 1.0)) return 0.0;
    if (std::isinf(U_w)) return 0.0;
    if (!(U_w > 0.0)) return 1.0;
    double d = m_w - 1.0;
    return std::clamp(1.0 - std::exp(-d * d / (2.0 * U_w)), 0.0, 1.0);
}

double h_of(double t, const BoundParams& bp, const GeneralBoundOptions& opt) {
    switch (opt.variant) {
        case LowerBoundVariant::Regularized:
            return t;
        case LowerBoundVariant::NoBrownian:
            return std::pow(t, 2.0 * (bp.H + opt.exponents.eta) - 1.0);
        default:
            return std::pow(t, 2.0 * opt.exponents.theta);
    }
}

double M_variant(double t, const BoundParams& bp, LowerBoundVariant v) {
    if (t <= 0.0) return 0.0;
    double bm = 18.0 * bp.a_fn.integral_of_square(t);
    double fbm = 36.0 * bp.H * std::pow(t, 2.0 * bp.H - 1.0) * bp.b_fn.integral_of_square(t);
    if (v == LowerBoundVariant::NoBrownian) return fbm;
    if (v == LowerBoundVariant::NoFractional) return bm;
    return bm + fbm;
}

double U_w_of(const BoundParams& bp, const GeneralBoundOptions& opt, int grid_points) {
    const double lw = std::log1p(bp.w());
    auto ratio = [&](double t) {
        double d = lw + h_of(t, bp, opt);
        return M_variant(t, bp, opt.variant) / (d * d);
    };
    const double T = opt.T_trunc;
    double best = 0.0;
    int best_i = 0;
    for (int i = 1; i <= grid_points; ++i) {
        double r = ratio(T * i / grid_points);
        if (r > best) {
            best = r;
            best_i = i;
        }
    }
    if (best_i == 0) return best;
    double lo = T * std::max(0, best_i - 1) / grid_points;
    double hi = T * std::min(grid_points, best_i + 1) / grid_points;
    auto neg = [&](double t) { return -ratio(t); };
    auto res = boost::math::tools::brent_find_minima(neg, lo, hi, 50);
    return std::max(best, -res.second);
}

std::optional<std::string> check_assumptions(const BoundParams& bp, const GeneralBoundOptions& opt) {
    const auto& e = opt.exponents;
    const double H = bp.H;
    auto zero = [](const TimeProfile& p) { return p.is_constant() && p.constant_value() == 0.0; };
    switch (opt.variant) {
        case LowerBoundVariant::NoRegularizer:
            if (bp.gamma != 0.0) return "variant requires gamma = 0";
            [[fallthrough]];
        case LowerBoundVariant::General:
            if (!(e.theta > std::max(e.rho, H - 0.5 + e.eta)))
                return "requires theta > max(rho, H - 1/2 + eta)";
            return std::nullopt;
        case LowerBoundVariant::Regularized:
            if (!(bp.gamma > 0.0)) return "variant requires gamma > 0";
            if (!(e.theta > 0.0 && e.theta < 0.5 && e.rho > 0.0 && e.rho < 0.5 && e.eta > 0.0 &&
                  e.eta < 1.0 - H))
                return "requires 0 < theta < 1/2, 0 < rho < 1/2, 0 < eta < 1 - H";
            return std::nullopt;
        case LowerBoundVariant::NoBrownian:
            if (!zero(bp.a_fn)) return "variant requires a = 0";
            if (!(e.rho > 0.0 && e.rho < 0.5 && e.eta > 0.0 && e.eta < 1.0 - H))
                return "requires 0 < rho < 1/2 and 0 < eta < 1 - H";
            return std::nullopt;
        case LowerBoundVariant::NoFractional:
            if (!zero(bp.b_fn)) return "variant requires b = 0";
            if (!((e.rho > 0.0 && e.rho < e.theta) || (e.theta < e.rho && e.rho < 0.5)))
                return "requires 0 < rho < theta or theta < rho < 1/2";
            return std::nullopt;
    }
    return std::nullopt;
}

NoiseSpec noise_for(const BoundParams& bp, double T, int n_steps) {
    NoiseSpec s;
    s.n_steps = n_steps;
    s.T = T;
    s.H = bp.H;
    s.kappa1 = 1.0;
    s.kappa2 = 1.0;
    s.a_shape = bp.a_fn;
    s.b_shape = bp.b_fn;
    return s;
}

GeneralBound general_lower_bound(const BoundParams& bp, const GeneralBoundOptions& opt) {
    if (opt.n_paths < 2) throw ParameterError("general lower bound needs at least 2 paths");
    if (!(opt.T_trunc > 0.0)) throw ParameterError("T_trunc must be > 0");
    GeneralBound r;
    r.w = bp.w();
    auto note = check_assumptions(bp, opt);
    r.assumptions_hold = !note;
    if (note) r.assumption_note = *note;
    r.U_w = U_w_of(bp, opt, opt.U_grid);

    const NoiseSpec spec = noise_for(bp, opt.T_trunc, opt.n_steps);
    FgnSampler fgn(spec.n_steps, spec.dt(), spec.H);
    const double lw = std::log1p(r.w);
    double mean = 0.0, m2 = 0.0;
    for (long i = 0; i < opt.n_paths; ++i) {
        NoisePath path = mixed_path(spec, derive_seed(opt.master_seed, i), fgn);
        PathFunctional f;
        accumulate(path, kInf, [&](int n) { return tau_star_log_integrand(path, n, bp); }, f);
        double sup = 0.0;
        for (int n = 1; n <= path.n_steps; ++n) {
            double h = h_of(path.t(n), bp, opt);
            // ln(I + 1) from log I
            double li = log_add(f.log_integral_series[n], 0.0);
            sup = std::max(sup, (li + h) / (lw + h));
        }
        double d = sup - mean;
        mean += d / (i + 1);
        m2 += d * (sup - mean);
    }
    r.m_w = mean;
    r.m_w_std_error = std::sqrt(m2 / (opt.n_paths - 1) / opt.n_paths);
    r.vacuous = !(r.m_w > 1.0);
    r.value = lower_bound_value(r.m_w, r.U_w);
    return r;
}

}  // namespace quench::bounds
