#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "quench/oracles/oracles.hpp"

namespace quench::oracle {

double bump(double x, double alpha) {
    double s = 1.0 - x * x;
    return s > 0.0 ? std::pow(s, alpha) : 0.0;
}

double bump_dd(double x, double alpha) {
    double s = 1.0 - x * x;
    if (s <= 0.0) return 0.0;
    return -2.0 * alpha * std::pow(s, alpha - 1.0) +
           4.0 * alpha * (alpha - 1.0) * x * x * std::pow(s, alpha - 2.0);
}

double pv_fractional_laplacian(const Fn& u, const Fn& u2, double x, double alpha) {
    const double pi = 3.14159265358979323846;
    const double C = std::pow(4.0, alpha) * std::tgamma(0.5 + alpha) /
                     (std::sqrt(pi) * std::fabs(std::tgamma(-alpha)));
    const double e = 1.0 + 2.0 * alpha;
    const double ax = std::fabs(x);
    const double d = 1.0 - ax;  // distance to the nearer edge
    const double far = 1.0 + ax;
    const double ux = u(x);

    auto second_diff = [&](double r) { return (2.0 * ux - u(x + r) - u(x - r)) / std::pow(r, e); };
    boost::math::quadrature::tanh_sinh<double> ts;

    // near r = 0 the second difference is -u''(x) r^2
    const double r0 = 1e-4 * d;
    double total = -u2(x) * std::pow(r0, 2.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha);
    total += ts.integrate(second_diff, r0, d, 1e-12);
    total += ts.integrate(second_diff, d, far, 1e-12);
    // both samples outside the support
    total += 2.0 * ux * std::pow(far, -2.0 * alpha) / (2.0 * alpha);
    return C * total;
}

}  // namespace quench::oracle
