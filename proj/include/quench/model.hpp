#pragma once

#include <cstdint>

#include "quench/time_profile.hpp"

namespace quench {

// How the kappa_rho weight in the first off-diagonal entry is chosen.
//  Consistent: chi/(1-alpha), equal to 1 on the default rho = 1+alpha.
//  Printed:    1+2alpha when 2alpha > 1, else 1.
enum class KappaRule { Consistent, Printed };

// Normalizing constant of the singular kernel C|x-y|^{-1-2alpha}.
//  Standard: 4^a Gamma(1/2+a) / (sqrt(pi) |Gamma(-a)|)
//  Literal:  a 2^{2a} Gamma(1/2+a) / (pi^{2a+1/2} Gamma(1-a))
enum class ConstantRule { Standard, Literal };

struct OperatorOptions {
    double rho = 0.0;  // 0 selects 1 + alpha
    KappaRule kappa_rule = KappaRule::Consistent;
    ConstantRule constant_rule = ConstantRule::Standard;

    bool operator==(const OperatorOptions&) const = default;
};

// Mixed noise N_t = int a dB + int b dB^H, with a = kappa1 * a_shape and
// b = kappa2 * b_shape.
struct NoiseSpec {
    int n_steps = 10000;
    double T = 1.0;
    double H = 0.7;
    double kappa1 = 0.1;
    double kappa2 = 0.1;
    TimeProfile a_shape = TimeProfile::constant(1.0);
    TimeProfile b_shape = TimeProfile::constant(1.0);

    double dt() const { return T / n_steps; }
    double a(double t) const { return kappa1 * a_shape(t); }
    double b(double t) const { return kappa2 * b_shape(t); }
    void validate() const;
};

struct ModelParams {
    double lambda = 0.4;
    double gamma = 0.0;
    double alpha = 0.6;
    double H = 0.7;
    double kappa1 = 0.1;
    double kappa2 = 0.1;
    double c = 0.1;
    double T = 1.0;
    int N = 10000;
    int M = 41;
    double epsilon = 2.2204e-16;
    TimeProfile a_fn = TimeProfile::constant(1.0);
    TimeProfile b_fn = TimeProfile::constant(1.0);
    // Diffusion coefficient; only the bounds use it (K = 1/2 int k^2).
    TimeProfile k_fn = TimeProfile::constant(2.0);
    OperatorOptions op;

    double dt() const { return T / N; }
    double rho() const { return op.rho > 0.0 ? op.rho : 1.0 + alpha; }
    NoiseSpec noise() const;
    // Throws ParameterError naming the violated constraint.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

}  // namespace quench
