// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed here.
// Exit status is the number of failed criteria (capped at 100).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "quench/config.hpp"
#include "quench/monte_carlo.hpp"
#include "quench/table_io.hpp"
#include "quench/validation.hpp"

using namespace quench;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  AC" << id << "  " << title << " -- " << detail << std::endl;
    if (!pass) ++failures;
}

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

double pooled_se(double a, double b) { return std::sqrt(a * a + b * b); }

// True when each successor is no smaller than its predecessor, up to n_se pooled SEs.
bool nondecreasing(const std::vector<double>& v, const std::vector<double>& se, double n_se,
                   std::string* where) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1] - n_se * pooled_se(se[i], se[i - 1])) {
            if (where) *where = "break at index " + std::to_string(i);
            return false;
        }
    return true;
}

std::vector<double> probs(const SweepResult& r) {
    std::vector<double> out;
    for (const auto& s : r.stats) out.push_back(s.quench_probability);
    return out;
}
std::vector<double> prob_se(const SweepResult& r) {
    std::vector<double> out;
    for (const auto& s : r.stats) out.push_back(s.std_error_p);
    return out;
}

std::string list(const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : " ") + fmt(x);
    return s;
}

RunConfig preset(const std::string& name) {
    RunConfig cfg;
    apply_preset(cfg, name);
    cfg.model.N = 2000;
    return cfg;
}

constexpr std::uint64_t kSeed = 20240601;
constexpr int kThreads = 4;

SweepResult run_lambda(const RunConfig& cfg, long R) {
    return sweep_lambda(cfg.model, cfg.lambdas, R, kSeed, kThreads);
}

void ac1_ac2() {
    RunConfig t1 = preset("t1");
    SweepResult r1 = run_lambda(t1, 2000);
    auto p1 = probs(r1);
    auto se1 = prob_se(r1);
    std::string where;
    bool mono = nondecreasing(p1, se1, 2.0, &where);
    bool ends = p1.front() == 0.0 && p1.back() >= 0.99;
    const auto& s04 = r1.stats[2];
    double mt = s04.mean_Tq.value_or(NAN);
    bool point = std::abs(s04.quench_probability - 0.5141) <= 0.06 && std::abs(mt - 0.6953) <= 0.07;
    report(1, "lambda sweep trend and point check", mono && ends && point,
           "p = [" + list(p1) + "]; monotone " + (mono ? "yes" : "no " + where) + "; p(0.01) = " +
               fmt(p1.front()) + ", p(1.4) = " + fmt(p1.back()) + "; lambda=0.4: p " +
               fmt(s04.quench_probability) + " (0.5141 +/- 0.06), mean Tq " + fmt(mt) +
               " (0.6953 +/- 0.07)");

    RunConfig t2 = preset("t2");
    SweepResult r2 = run_lambda(t2, 2000);
    auto p2 = probs(r2);
    bool dominated = true;
    for (std::size_t i = 0; i < p2.size(); ++i) dominated = dominated && p2[i] <= p1[i];
    double p08 = p2[4];
    bool point2 = std::abs(p08 - 0.9274) <= 0.05;
    report(2, "regularizer effect", dominated && point2,
           "p(gamma=0.1) = [" + list(p2) + "]; <= gamma=0 everywhere " + (dominated ? "yes" : "no") +
               "; lambda=0.8: " + fmt(p08) + " (0.9274 +/- 0.05)");
}

void ac3() {
    RunConfig t3 = preset("t3");
    SweepResult r = sweep_kappa2(t3.model, t3.kappa2s, 2000, kSeed, kThreads);
    auto p = probs(r);
    auto se = prob_se(r);
    std::vector<double> neg_mean, mse;
    for (const auto& s : r.stats) {
        neg_mean.push_back(-s.mean_Tq.value_or(NAN));
        mse.push_back(s.std_error_Tq());
    }
    std::string wp, wm;
    bool mono_p = nondecreasing(p, se, 2.0, &wp);
    bool mono_t = nondecreasing(neg_mean, mse, 2.0, &wm);
    double last = -neg_mean.back();
    bool point = std::abs(last - 0.3718) <= 0.05;
    std::vector<double> means;
    for (double v : neg_mean) means.push_back(-v);
    report(3, "fBM intensity effect", mono_p && mono_t && point,
           "p = [" + list(p) + "] nondecreasing " + (mono_p ? "yes" : "no " + wp) + "; mean Tq = [" +
               list(means) + "] nonincreasing " + (mono_t ? "yes" : "no " + wm) + "; kappa2=2 mean Tq " +
               fmt(last) + " (0.3718 +/- 0.05)");
}

void ac4() {
    RunConfig f = preset("fig2-coarse");
    SweepResult r = sweep_alpha_H(f.model, f.alphas, f.hursts, 1000, kSeed, kThreads);
    const std::size_t nH = f.hursts.size();
    bool ok = true;
    std::string detail;
    for (std::size_t a = 0; a < f.alphas.size(); ++a) {
        std::vector<double> neg_p, neg_se, mean, mse;
        for (std::size_t h = 0; h < nH; ++h) {
            const auto& s = r.stats[a * nH + h];
            neg_p.push_back(-s.quench_probability);
            neg_se.push_back(s.std_error_p);
            mean.push_back(s.mean_Tq.value_or(NAN));
            mse.push_back(s.std_error_Tq());
        }
        // monotone trends are read off the raw estimates with a 2 SE allowance
        bool mp = nondecreasing(neg_p, neg_se, 2.0, nullptr);
        bool mt = nondecreasing(mean, mse, 2.0, nullptr);
        ok = ok && mp && mt;
        std::vector<double> p;
        for (double v : neg_p) p.push_back(-v);
        detail += "alpha=" + fmt(f.alphas[a], 1) + ": p [" + list(p) + "] " + (mp ? "ok" : "BREAK") +
                  ", Tq [" + list(mean) + "] " + (mt ? "ok" : "BREAK") + "; ";
    }
    report(4, "(alpha, H) trends", ok, detail);
}

void ac5_to_ac9() {
    using namespace validation;
    std::vector<Check> c5{fgn_covariance(0.6), fgn_covariance(0.7), fgn_covariance(0.9),
                          fgn_white_noise_limit()};
    std::vector<Check> c6{operator_oracle(81, 0.4), operator_oracle(81, 0.6), operator_refinement(0.4),
                          operator_refinement(0.6)};
    std::vector<Check> c7{spectral_oracle(), rayleigh_minimum()};
    std::vector<Check> c8 = bound_checks(BoundCheckConfig{});
    c8.push_back(gamma_closed_form());
    std::vector<Check> c9{small_instance_oracle()};

    auto fold = [](int id, const std::string& title, const std::vector<Check>& cs) {
        bool ok = true;
        std::string detail;
        for (const auto& c : cs) {
            ok = ok && c.pass;
            detail += (detail.empty() ? "" : "; ") + c.name + ": " + (c.pass ? "ok" : "FAIL") + " (" +
                      c.detail + ")";
        }
        report(id, title, ok, detail);
    };
    fold(5, "fGN sampler covariance", c5);
    fold(6, "operator vs quadrature oracle", c6);
    fold(7, "principal eigenpair", c7);
    fold(8, "bounds dominate simulation", c8);
    fold(9, "small-instance oracle equivalence", c9);
}

void ac10() {
    bool ok = true;
    std::string detail;
    for (const std::string name : {"t1", "t2", "t3", "fig2-coarse"}) {
        RunConfig cfg = preset(name);
        cfg.model.N = 400;
        const long R = 200;
        auto run = [&](int threads) {
            switch (cfg.sweep_axis) {
                case SweepAxis::Lambda: return table_csv(sweep_lambda(cfg.model, cfg.lambdas, R, kSeed, threads));
                case SweepAxis::Kappa2: return table_csv(sweep_kappa2(cfg.model, cfg.kappa2s, R, kSeed, threads));
                default: return table_csv(sweep_alpha_H(cfg.model, cfg.alphas, cfg.hursts, R, kSeed, threads));
            }
        };
        std::string one = run(1), many = run(3);
        bool same = one == many;
        ok = ok && same;
        detail += name + (same ? " identical" : " DIFFER") + " (" + std::to_string(one.size()) + " bytes); ";
    }
    report(10, "thread-count determinism", ok, detail + "threads 1 vs 3, N=400, R=200");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    ac1_ac2();
    ac3();
    ac4();
    ac5_to_ac9();
    ac10();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << failures << " of 10 criteria failed (" << fmt(secs, 1) << " s)" << std::endl;
    return failures > 100 ? 100 : failures;
}
