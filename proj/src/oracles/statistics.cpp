#include <cstdlib>

#include "quench/oracles/oracles.hpp"

namespace quench::oracle {

double empirical_autocovariance(const std::vector<double>& x, int k) {
    const int n = static_cast<int>(x.size());
    double s = 0.0;
    for (int j = 0; j + k < n; ++j) s += x[j] * x[j + k];
    return s / (n - k);
}

double autocovariance_estimator_variance(const std::function<double(int)>& gamma, int n, int k) {
    // Var(sum_j x_j x_{j+k}) = sum_{j,j'} [g(j-j')^2 + g(j-j'+k) g(j-j'-k)]  (Isserlis)
    const int L = n - k;
    double v = 0.0;
    for (int l = -(L - 1); l <= L - 1; ++l) {
        double g = gamma(std::abs(l));
        v += double(L - std::abs(l)) * (g * g + gamma(std::abs(l + k)) * gamma(std::abs(l - k)));
    }
    return v / (double(L) * L);
}

}  // namespace quench::oracle
