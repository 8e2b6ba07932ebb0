#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quench/model.hpp"
#include "quench/noise.hpp"
#include "quench/spectral.hpp"
#include "quench/time_profile.hpp"

namespace quench::bounds {

// Constants entering the quenching-time bounds. The coefficient profiles are
// the actual a, b, k (noise intensities included).
struct BoundParams {
    double eta1 = 1.0, eta2 = 1.0;
    double zeta_m = 1.0, zeta_M = 1.0;
    double mu1 = 0.0;
    Eigen::VectorXd psi1;
    double psi_m = 0.0;    // min of psi1 over interior nodes
    double v0_psi1 = 0.0;  // <v0, psi1>
    double gamma = 0.0, lambda = 0.0, H = 0.7;
    TimeProfile a_fn = TimeProfile::constant(0.0);
    TimeProfile b_fn = TimeProfile::constant(0.0);
    TimeProfile k_fn = TimeProfile::constant(0.0);

    void validate() const;
    // <v0,psi1>^3 / (3 lambda eta1 zeta_m); +inf when lambda or zeta_m is 0.
    double w() const;
};

// Eigenpair of the configured operator, v0 = W1 * psi1 (eigenfunction data)
// and a = kappa1 a_shape, b = kappa2 b_shape. Returns the pair too.
BoundParams make_bound_params(const ModelParams& model, double W1, EigenPair* pair_out = nullptr);
// Same, with v0 = 1 - u0 (the initial datum of the z-problem).
BoundParams make_bound_params_from_model(const ModelParams& model, EigenPair* pair_out = nullptr);

double K_of(double t, const TimeProfile& k_fn);
double A_of(double t, const TimeProfile& a_fn);
// 18 int a^2 + 36 H T^{2H-1} int b^2
double M_of(double T, const BoundParams& bp);

enum class VarianceModel { Exact, Conservative };
// int_0^T exp(-3(gamma eta1 t - mu1 K - A)) E[e^{3 N_t}] dt with independent
// drivers. Exact uses Var N_t = int a^2 + b^2 t^{2H} and needs constant b; it
// falls back to Conservative (2H t^{2H-1} int b^2) otherwise.
double nu_of(double T, const BoundParams& bp, VarianceModel model = VarianceModel::Exact);

// min(1, 2 exp(-(ln w - ln nu)^2 / (2 M))). Throws ConditionError if w <= nu.
double tail_upper_bound(double w, double nu_T, double M_T);
double tail_upper_bound(double T, const BoundParams& bp, VarianceModel model = VarianceModel::Exact);

// Printed: the first integral of the dependent-case bound carries e^{6A},
// as displayed. Corrected: e^{36A}, which is what E[e^{6 int a dB}] gives.
enum class ChebyshevForm { Printed, Corrected };
double chebyshev_bound(double T, const BoundParams& bp, bool independent,
                       ChebyshevForm form = ChebyshevForm::Printed);

struct GammaBound {
    double value = 0.0;
    double nu = 0.0;
    double Lambda_tilde = 0.0;
    bool almost_sure = false;  // nu >= 0: quenching with probability one
};
// Regularized lower incomplete gamma P(-nu, Lambda_tilde), nu < 0.
double gamma_bound_value(double minus_nu, double Lambda_tilde);
// nu = (1 + mu1 - gamma eta1)/3, Lambda_tilde = 2 Lambda / (9 w).
GammaBound gamma_lower_bound(const BoundParams& bp, double Lambda_cap);

struct PathFunctional {
    std::optional<double> threshold_time;  // empty: no crossing on the path horizon
    std::vector<double> integral_series;   // accumulated integral at t_0..t_n
    std::vector<double> log_integral_series;
    double threshold = 0.0;
};

// Log of the integrand of tau* at step n: -3(eta1 gamma t - mu1 K - A) + 3 N.
double tau_star_log_integrand(const NoisePath& path, int n, const BoundParams& bp);

// Left-endpoint accumulation of int_0^t exp(X_s) ds against w.
PathFunctional tau_star_sample(const NoisePath& path, const BoundParams& bp);

// mu(t) > 0 of the lower-bound construction, handled in log form.
using LogMu = std::function<double(double)>;
// log of W1 psi_m e^{gamma eta2 t - mu1 K(t) - A(t)}
LogMu eigen_log_mu(const BoundParams& bp, double W1);

// inf_x of the semigroup action on v0 via the eigendecomposition of the
// operator matrix, times e^{eta2 gamma t - A(t)}.
class SemigroupMu {
public:
    SemigroupMu(const Eigen::MatrixXd& A, const Eigen::VectorXd& v0, const BoundParams& bp);
    double log_mu(double t) const;

private:
    Eigen::VectorXd evals_;
    Eigen::MatrixXd evecs_;
    Eigen::VectorXd coeffs_;
    BoundParams bp_;
};

struct LowerPathFunctional : PathFunctional {
    std::vector<double> G_series;  // [1 - 4 lambda eta2 zeta_M I(t)]^{1/4}, clamped to [0, 1]
};

// int_0^t e^{3 N_r} mu^{-3}(r) dr against 1 / (4 lambda eta2 zeta_M).
LowerPathFunctional tau_lower_sample(const NoisePath& path, const BoundParams& bp,
                                     const LogMu& log_mu);

struct GlobalExistence {
    bool holds = false;
    double integral = 0.0;  // truncated int of e^{-3(gamma eta2 s - mu1 K - A - N_s)}
    double W2 = 0.0;
    double decay_rate = 0.0;  // deterministic exponent slope at T_trunc
};
// Truncation heuristic: integral up to T_trunc below W2 and the deterministic
// exponent decreasing at T_trunc.
GlobalExistence global_existence_check(const NoisePath& path, const BoundParams& bp, double W1,
                                       double T_trunc);

enum class LowerBoundVariant {
    General,       // h = t^{2 theta}
    NoRegularizer, // gamma = 0, h = t^{2 theta}
    Regularized,   // gamma > 0, h = t
    NoBrownian,    // a = 0, h = t^{2(H + eta) - 1}
    NoFractional,  // b = 0, h = t^{2 theta}
};

struct GrowthExponents {
    double theta = 0.5;  // int a^2 ~ t^{2 theta}
    double eta = 0.5;    // int b^2 ~ t^{2 eta}
    double rho = 0.5;    // int k^2 ~ t^{2 rho}

    bool operator==(const GrowthExponents&) const = default;
};

struct GeneralBoundOptions {
    LowerBoundVariant variant = LowerBoundVariant::General;
    GrowthExponents exponents;
    long n_paths = 2000;
    double T_trunc = 1.0;
    int n_steps = 2000;
    int U_grid = 2000;
    std::uint64_t master_seed = 1;
};

struct GeneralBound {
    double value = 0.0;
    double m_w = 0.0;
    double m_w_std_error = 0.0;
    double U_w = 0.0;
    double w = 0.0;
    bool vacuous = false;          // m_w <= 1
    bool assumptions_hold = false; // growth-exponent conditions of the variant
    std::string assumption_note;
};

// 1 - exp(-(m_w - 1)^2 / (2 U_w)) for m_w > 1, else 0.
double lower_bound_value(double m_w, double U_w);
double h_of(double t, const BoundParams& bp, const GeneralBoundOptions& opt);
double M_variant(double t, const BoundParams& bp, LowerBoundVariant v);
// sup over (0, T_trunc] of M(t) / (ln(w+1) + h(t))^2 on an n-point grid,
// polished by a bracketing minimizer around the best node.
double U_w_of(const BoundParams& bp, const GeneralBoundOptions& opt, int grid_points);
// Checks the variant's exponent conditions; returns an explanation when violated.
std::optional<std::string> check_assumptions(const BoundParams& bp, const GeneralBoundOptions& opt);
GeneralBound general_lower_bound(const BoundParams& bp, const GeneralBoundOptions& opt);

// Noise spec matching the bound coefficients (kappa1 = kappa2 = 1 on the
// actual profiles).
NoiseSpec noise_for(const BoundParams& bp, double T, int n_steps);

}  // namespace quench::bounds
