#include "quench/model.hpp"

#include <cmath>
#include <string>

#include "quench/errors.hpp"
#include "quench/format.hpp"

namespace quench {

namespace {
void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
}
}  // namespace

void NoiseSpec::validate() const {
    require(n_steps >= 1, "n_steps must be >= 1");
    require(std::isfinite(T) && T > 0.0, "T must be > 0");
    require(H > 0.5 && H < 1.0, "H must lie in (1/2, 1), got " + format_double(H));
    require(kappa1 >= 0.0 && kappa2 >= 0.0, "kappa1, kappa2 must be >= 0");
}

NoiseSpec ModelParams::noise() const {
    NoiseSpec s;
    s.n_steps = N;
    s.T = T;
    s.H = H;
    s.kappa1 = kappa1;
    s.kappa2 = kappa2;
    s.a_shape = a_fn;
    s.b_shape = b_fn;
    return s;
}

void ModelParams::validate() const {
    require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be >= 0");
    require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be >= 0");
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1), got " + format_double(alpha));
    require(H > 0.5 && H < 1.0, "H must lie in (1/2, 1), got " + format_double(H));
    require(std::isfinite(kappa1) && kappa1 >= 0.0, "kappa1 must be >= 0");
    require(std::isfinite(kappa2) && kappa2 >= 0.0, "kappa2 must be >= 0");
    require(c >= 0.0 && c < 1.0, "c must lie in [0, 1), got " + format_double(c));
    require(std::isfinite(T) && T > 0.0, "T must be > 0");
    require(N >= 1, "N must be >= 1");
    require(M >= 3, "M must be >= 3");
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    double r = rho();
    require(r > 2.0 * alpha && r <= 2.0,
            "rho must lie in (2 alpha, 2], got " + format_double(r));
}

}  // namespace quench
