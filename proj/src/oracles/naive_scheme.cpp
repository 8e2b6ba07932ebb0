#include <cmath>
#include <random>
#include <stdexcept>

#include "quench/oracles/oracles.hpp"

namespace quench::oracle {

Matrix naive_operator(int M, double alpha, double rho, double kappa) {
    const double pi = 3.14159265358979323846;
    const double chi = rho - 2.0 * alpha;
    const double C = std::pow(4.0, alpha) * std::tgamma(0.5 + alpha) /
                     (std::sqrt(pi) * std::fabs(std::tgamma(-alpha)));
    const double h = 2.0 / M;
    auto weight = [&](int k) {
        if (k == 1) return (std::pow(2.0, chi) + kappa - 1.0) / 2.0;
        return (std::pow(k + 1.0, chi) - std::pow(k - 1.0, chi)) / (2.0 * std::pow(k, rho));
    };
    double diag = 0.0;
    for (int k = 1; k <= M - 1; ++k) diag += 2.0 * weight(k);
    diag += (std::pow(M + 1.0, chi) - std::pow(M - 1.0, chi)) / std::pow(M, rho);
    diag += chi / (alpha * std::pow(M, 2.0 * alpha));

    Matrix A(M - 1, std::vector<double>(M - 1));
    for (int i = 0; i < M - 1; ++i)
        for (int j = 0; j < M - 1; ++j) {
            double bracket = i == j ? diag : -weight(std::abs(i - j));
            A[i][j] = C * bracket / (chi * std::pow(h, 2.0 * alpha));
        }
    return A;
}

std::vector<double> gauss_solve(Matrix A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        if (A[piv][col] == 0.0) throw std::runtime_error("singular system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < n; ++r) {
            double f = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

void jacobi_eigen(Matrix A, std::vector<double>& values, Matrix& vectors) {
    const int n = static_cast<int>(A.size());
    vectors.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) vectors[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A[p][q] * A[p][q];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (A[p][q] == 0.0) continue;
                double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A[k][p], akq = A[k][q];
                    A[k][p] = c * akp - s * akq;
                    A[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A[p][k], aqk = A[q][k];
                    A[p][k] = c * apk - s * aqk;
                    A[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = vectors[k][p], vkq = vectors[k][q];
                    vectors[k][p] = c * vkp - s * vkq;
                    vectors[k][q] = s * vkp + c * vkq;
                }
            }
    }
    // selection sort by eigenvalue, moving columns along
    values.resize(n);
    for (int i = 0; i < n; ++i) values[i] = A[i][i];
    for (int i = 0; i < n; ++i) {
        int m = i;
        for (int j = i + 1; j < n; ++j)
            if (values[j] < values[m]) m = j;
        if (m != i) {
            std::swap(values[i], values[m]);
            for (int k = 0; k < n; ++k) std::swap(vectors[k][i], vectors[k][m]);
        }
    }
}

std::uint64_t naive_derive_seed(std::uint64_t master, std::uint64_t index) {
    auto mix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    return mix(mix(master ^ 0x5155454E43485F31ULL) + 0x9E3779B97F4A7C15ULL * (index + 1));
}

std::vector<double> naive_fgn(int n, double dt, double H, std::uint64_t seed) {
    const double pi = 3.14159265358979323846;
    const int m = 2 * n;
    auto gam = [&](int k) {
        double a = std::fabs(double(k)), e = 2.0 * H;
        return 0.5 * std::pow(dt, e) *
               (std::pow(a + 1.0, e) - 2.0 * std::pow(a, e) + std::pow(std::fabs(a - 1.0), e));
    };
    std::vector<double> c(m);
    for (int j = 0; j < m; ++j) c[j] = gam(j <= n ? j : m - j);
    std::vector<double> s(m);
    for (int k = 0; k < m; ++k) {
        double lam = 0.0;
        for (int j = 0; j < m; ++j) lam += c[j] * std::cos(2.0 * pi * double(j) * k / m);
        s[k] = std::sqrt(std::max(lam, 0.0) / m);
    }
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> xi(m), eta(m);
    for (auto& v : xi) v = nd(eng);
    for (auto& v : eta) v = nd(eng);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < m; ++k) {
            double th = 2.0 * pi * double(j) * k / m;
            acc += s[k] * (xi[k] * std::cos(th) + eta[k] * std::sin(th));
        }
        out[j] = acc;
    }
    return out;
}

NaiveRun naive_trajectory(int M, int N, double T, double alpha, double H, double lambda,
                          double gamma, double kappa1, double kappa2, double c, double epsilon,
                          std::uint64_t seed) {
    const double dt = T / N;
    const double rho = 1.0 + alpha;
    const double kappa = (rho - 2.0 * alpha) / (1.0 - alpha);
    Matrix A = naive_operator(M, alpha, rho, kappa);
    const int n = M - 1;
    Matrix S(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S[i][j] = (i == j ? 1.0 : 0.0) + dt * A[i][j];

    std::mt19937_64 bm(naive_derive_seed(seed, 0));
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> dB(N);
    for (auto& v : dB) v = nd(bm) * std::sqrt(dt);
    std::vector<double> dBH = naive_fgn(N, dt, H, naive_derive_seed(seed, 1));

    NaiveRun run;
    std::vector<double> u(n);
    for (int j = 0; j < n; ++j) {
        double x = -1.0 + (j + 1) * (2.0 / M);
        u[j] = c * (1.0 - x * x);
    }
    for (int step = 0; step <= N; ++step) {
        double mx = u[0];
        for (double v : u) mx = std::max(mx, v);
        if (mx > 1.0 - epsilon) {
            run.quenched = true;
            run.T_q = step == 0 ? 0.0 : (step - 1) * dt;
            break;
        }
        run.states.push_back(u);
        if (step == N) break;
        double kick = kappa1 * dB[step] + kappa2 * dBH[step];
        std::vector<double> rhs(n);
        for (int j = 0; j < n; ++j) {
            double z = 1.0 - u[j];
            double g = lambda / (z * z) - gamma * z;
            rhs[j] = u[j] + dt * g + std::max(0.0, z) * kick;
        }
        u = gauss_solve(S, rhs);
    }
    return run;
}

}  // namespace quench::oracle
