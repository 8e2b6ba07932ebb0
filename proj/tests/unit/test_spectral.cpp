#include <cmath>

#include "doctest.h"
#include "generators.hpp"

#include "quench/errors.hpp"
#include "quench/fractional_operator.hpp"
#include "quench/oracles/oracles.hpp"
#include "quench/spde_solver.hpp"
#include "quench/spectral.hpp"
#include "quench/validation.hpp"

using namespace quench;

TEST_CASE("identity and 2x2 examples") {
    auto p = principal_eigenpair(Eigen::MatrixXd::Identity(4, 4), 0.5);
    CHECK(p.mu1 == doctest::Approx(1.0));
    for (int i = 0; i < 4; ++i) CHECK(p.psi1[i] == doctest::Approx(0.5));  // 0.5 * sum = 1

    Eigen::MatrixXd B(2, 2);
    B << 2, -1, -1, 2;
    auto q = principal_eigenpair(B, 1.0);
    CHECK(q.mu1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.psi1[0] == doctest::Approx(q.psi1[1]).epsilon(1e-12));
}

TEST_CASE("fractional matrix eigenpair invariants") {
    for (int M : {21, 41}) {
        Grid g(M);
        OperatorMatrix A = assemble_matrix(g, 0.6);
        auto p = principal_eigenpair(A, g);
        CHECK(p.mu1 > 0.0);
        CHECK(p.psi1.minCoeff() > 0.0);
        CHECK(g.dx() * p.psi1.sum() == doctest::Approx(1.0).epsilon(1e-10));
        double r = (A.entries() * p.psi1 - p.mu1 * p.psi1).lpNorm<Eigen::Infinity>();
        CHECK(r <= 1e-10 * A.norm_inf() * p.psi1.lpNorm<Eigen::Infinity>());
    }
}

TEST_CASE("inverse iteration against cyclic Jacobi") {
    auto c = validation::spectral_oracle(21, 0.6, 1e-10);
    INFO(c.detail);
    CHECK(c.pass);
    auto c2 = validation::spectral_oracle(15, 0.3, 1e-10);
    INFO(c2.detail);
    CHECK(c2.pass);
}

TEST_CASE("Rayleigh quotients") {
    Grid g(11);
    OperatorMatrix A = assemble_matrix(g, 0.6);
    auto p = principal_eigenpair(A, g);
    CHECK(rayleigh_quotient(A.entries(), p.psi1 / p.psi1.norm()) == doctest::Approx(p.mu1).epsilon(1e-12));
    CHECK(rayleigh_min_check(A.entries(), p, 100, 3));

    // directions orthogonal to psi1 see at least the second eigenvalue
    oracle::Matrix m(10, std::vector<double>(10));
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) m[i][j] = A.entries()(i, j);
    std::vector<double> vals;
    oracle::Matrix vecs;
    oracle::jacobi_eigen(m, vals, vecs);
    testgen::Gen gen(8);
    Eigen::VectorXd e = p.psi1.normalized();
    for (int k = 0; k < 20; ++k) {
        Eigen::VectorXd u = gen.normal_vector(10);
        u -= u.dot(e) * e;
        CHECK(rayleigh_quotient(A.entries(), u) >= vals[1] - 1e-10);
        CHECK(vals[1] >= p.mu1);
    }
}

TEST_CASE("inner products") {
    Grid g(41);
    OperatorMatrix A = assemble_matrix(g, 0.6);
    auto p = principal_eigenpair(A, g);
    CHECK(inner_product_v0_psi1(Eigen::VectorXd::Zero(40), p, g) == 0.0);
    double self = inner_product_v0_psi1(p.psi1, p, g);
    CHECK(self == doctest::Approx(g.dx() * p.psi1.squaredNorm()));
    CHECK(self > 0.0);
    CHECK_THROWS_AS(inner_product_v0_psi1(Eigen::VectorXd::Zero(3), p, g), DimensionError);
}

TEST_CASE("inner product refinement") {
    // <c(1-x^2), psi1> on M and 10M: the discrete eigenfunction changes with
    // M too, so only a loose agreement is expected at M = 41.
    auto ip = [](int M) {
        Grid g(M);
        auto p = principal_eigenpair(assemble_matrix(g, 0.6), g);
        return inner_product_v0_psi1(initial_condition(g, 0.1), p, g);
    };
    double coarse = ip(41), fine = ip(410);
    CHECK(std::abs(coarse - fine) / fine < 0.02);
}
