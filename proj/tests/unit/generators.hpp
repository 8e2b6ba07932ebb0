#pragma once
// Small hand-rolled generators for the property tests.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace testgen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::uint64_t seed() { return rng_(); }
    Eigen::VectorXd normal_vector(Eigen::Index n) {
        std::normal_distribution<double> z;
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = z(rng_);
        return v;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace testgen
