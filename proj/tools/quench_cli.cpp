// quench: command-line driver for the quenching simulator and bound calculator.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "quench/analytic_bounds.hpp"
#include "quench/config.hpp"
#include "quench/errors.hpp"
#include "quench/format.hpp"
#include "quench/monte_carlo.hpp"
#include "quench/rng.hpp"
#include "quench/spde_solver.hpp"
#include "quench/spectral.hpp"
#include "quench/table_io.hpp"
#include "quench/validation.hpp"

namespace fs = std::filesystem;
using namespace quench;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4 };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
    return (fs::path(cfg.out_dir) / name).string();
}


int cmd_simulate(const RunConfig& cfg) {
    QuenchingSolver solver(cfg.model);
    const std::uint64_t seed = derive_seed(cfg.master_seed, 0);
    NoisePath path = solver.sample_path(seed);
    RealizationResult r = solver.run_with_path(path);
    r.seed = seed;
    write_trajectory_csv(r, cfg.model.dt(), out_path(cfg, "trajectory.csv"));
    write_file(out_path(cfg, "realization.json"), realization_json(r) + "\n");
    if (cfg.dump_path) write_path_csv(path, out_path(cfg, "path.csv"));
    if (cfg.dump_matrix) solver.matrix().write_csv(out_path(cfg, "matrix.csv"));
    std::cout << realization_json(r) << "\n";
    return r.failed ? kNumeric : kOk;
}

int cmd_sweep(const RunConfig& cfg) {
    ModelParams base = cfg.model;
    std::vector<std::string> axes;
    std::vector<std::vector<double>> pts;
    switch (cfg.sweep_axis) {
        case SweepAxis::Lambda:
            axes = {"lambda"};
            for (double l : cfg.lambdas) pts.push_back({l});
            break;
        case SweepAxis::Kappa2:
            axes = {"kappa2"};
            for (double k : cfg.kappa2s) pts.push_back({k});
            break;
        case SweepAxis::AlphaH:
            axes = {"alpha", "H"};
            for (double a : cfg.alphas)
                for (double h : cfg.hursts) pts.push_back({a, h});
            break;
    }
    auto t0 = std::chrono::steady_clock::now();
    auto progress = [&](std::size_t k, const EnsembleStats& s) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "[" << k + 1 << "/" << pts.size() << "]";
        for (std::size_t a = 0; a < axes.size(); ++a)
            std::cerr << ' ' << axes[a] << '=' << format_double(pts[k][a]);
        std::cerr << "  p=" << s.quench_probability
                  << "  mean_Tq=" << (s.mean_Tq ? format_double(*s.mean_Tq) : "-") << "  ("
                  << static_cast<int>(secs) << " s)\n";
    };
    SweepResult r = sweep(base, axes, pts, cfg.n_realizations, cfg.master_seed, cfg.threads, progress);
    std::string name = (cfg.preset.empty() ? "sweep_" + axes.front() : cfg.preset) + ".csv";
    emit_table(r, out_path(cfg, name));
    std::cout << table_csv(r);
    return kOk;
}

int cmd_eigen(const RunConfig& cfg) {
    Grid g(cfg.model.M);
    OperatorMatrix A = assemble_matrix(g, cfg.model.alpha, cfg.model.op);
    EigenPair p = principal_eigenpair(A, g);
    std::string csv = "x,psi1\n";
    for (int j = 1; j < g.M(); ++j) csv += format_double(g.x(j)) + ',' + format_double(p.psi1[j - 1]) + '\n';
    write_file(out_path(cfg, "psi1.csv"), csv);
    if (cfg.dump_matrix) A.write_csv(out_path(cfg, "matrix.csv"));
    std::cout << "mu1 = " << format_double(p.mu1) << "\nresidual = " << format_double(p.residual)
              << "\niterations = " << p.iterations << "\n";
    return kOk;
}

int cmd_bounds(const RunConfig& cfg) {
    const ModelParams& m = cfg.model;
    const BoundSettings& b = cfg.bound;
    EigenPair pair;
    bounds::BoundParams bp = b.eigen_initial ? bounds::make_bound_params(m, b.W1, &pair)
                                             : bounds::make_bound_params_from_model(m, &pair);
    bp.eta1 = b.eta1;
    bp.eta2 = b.eta2;
    bp.zeta_m = b.zeta_m;
    bp.zeta_M = b.zeta_M;
    bp.validate();

    json j;
    j["note"] = "bounds are evaluated with the Dirichlet discrete eigenpair as a stand-in for the Robin one";
    j["inputs"] = {{"lambda", m.lambda}, {"gamma", m.gamma}, {"alpha", m.alpha}, {"H", m.H},
                   {"kappa1", m.kappa1}, {"kappa2", m.kappa2}, {"a", m.a_fn.to_string()},
                   {"b", m.b_fn.to_string()}, {"k", m.k_fn.to_string()}, {"T", m.T}, {"M", m.M},
                   {"eta1", bp.eta1}, {"eta2", bp.eta2}, {"zeta_m", bp.zeta_m}, {"zeta_M", bp.zeta_M},
                   {"initial_data", b.eigen_initial ? "W1*psi1" : "1-u0"}, {"W1", b.W1},
                   {"Lambda", b.Lambda}, {"T_trunc", b.T_trunc}, {"paths", b.paths},
                   {"seed", cfg.master_seed}};
    const double T = m.T;
    const double w = bp.w();
    const double nu = bounds::nu_of(T, bp, b.variance);
    const double MT = bounds::M_of(T, bp);
    j["constants"] = {{"mu1", bp.mu1}, {"psi_m", bp.psi_m}, {"v0_psi1", bp.v0_psi1},
                      {"w", w}, {"nu_T", nu}, {"M_T", MT},
                      {"K_T", bounds::K_of(T, bp.k_fn)}, {"A_T", bounds::A_of(T, bp.a_fn)}};
    json bj;
    if (w > nu)
        bj["tail_upper"] = {{"value", bounds::tail_upper_bound(w, nu, MT)}, {"applicable", true}};
    else
        bj["tail_upper"] = {{"value", nullptr}, {"applicable", false}, {"reason", "w <= nu(T)"}};
    bj["chebyshev_dependent"] = bounds::chebyshev_bound(T, bp, false, b.chebyshev);
    bj["chebyshev_independent"] = bounds::chebyshev_bound(T, bp, true, b.chebyshev);
    auto g = bounds::gamma_lower_bound(bp, b.Lambda);
    bj["gamma_lower"] = {{"value", g.value}, {"nu", g.nu}, {"Lambda_tilde", g.Lambda_tilde},
                         {"almost_sure", g.almost_sure}};

    bounds::GeneralBoundOptions go;
    go.variant = b.variant;
    go.exponents = b.exponents;
    go.n_paths = b.paths;
    go.T_trunc = b.T_trunc;
    go.n_steps = m.N;
    go.master_seed = cfg.master_seed;
    auto gl = bounds::general_lower_bound(bp, go);
    bj["general_lower"] = {{"value", gl.value}, {"m_w", gl.m_w}, {"m_w_std_error", gl.m_w_std_error},
                           {"U_w", gl.U_w}, {"vacuous", gl.vacuous},
                           {"assumptions_hold", gl.assumptions_hold},
                           {"assumption_note", gl.assumption_note}};
    j["bounds"] = bj;

    // Monte Carlo comparison on sampled noise paths
    NoiseSpec spec = bounds::noise_for(bp, T, m.N);
    FgnSampler fgn(spec.n_steps, spec.dt(), spec.H);
    long crossed = 0, ordered = 0, lower_crossed = 0, global = 0;
    bool have_lower = b.eigen_initial;
    bounds::LogMu log_mu;
    if (have_lower) log_mu = bounds::eigen_log_mu(bp, b.W1);
    for (long i = 0; i < b.paths; ++i) {
        NoisePath path = mixed_path(spec, derive_seed(cfg.master_seed, static_cast<std::uint64_t>(i)), fgn);
        auto up = bounds::tau_star_sample(path, bp);
        if (up.threshold_time) ++crossed;
        if (!have_lower) continue;
        auto lo = bounds::tau_lower_sample(path, bp, log_mu);
        if (lo.threshold_time) ++lower_crossed;
        if (!up.threshold_time || (lo.threshold_time && *lo.threshold_time <= *up.threshold_time)) ++ordered;
        if (bounds::global_existence_check(path, bp, b.W1, T).holds) ++global;
    }
    json mc = {{"paths", b.paths}, {"P_tau_star_le_T", double(crossed) / b.paths}};
    if (have_lower) {
        mc["P_tau_lower_le_T"] = double(lower_crossed) / b.paths;
        mc["ordering_holds_fraction"] = double(ordered) / b.paths;
        mc["global_existence_fraction"] = double(global) / b.paths;
    }
    j["monte_carlo"] = mc;
    std::string text = j.dump(2) + "\n";
    write_file(out_path(cfg, "bounds.json"), text);
    std::cout << text;
    return kOk;
}

int cmd_validate(const RunConfig&, bool quick) {
    bool ok = true;
    for (const auto& c : validation::run_suite(quick)) {
        std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name << " -- " << c.detail << "\n";
        ok = ok && c.pass;
    }
    return ok ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quenching simulator and bound calculator for a fractional SPDE with mixed noise"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir;
    std::uint64_t seed = 0;
    long realizations = 0;
    int threads = 0;
    std::vector<std::string> sets;
    bool quick = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value or JSON config file");
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--realizations", realizations, "ensemble size");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads");
        sub->add_option("--preset", preset, "t1, t2, t3, fig2, fig2-text, fig2-coarse");
        sub->add_option("--set", sets, "override one key, e.g. --set lambda=0.6");
    };
    auto* sim = app.add_subcommand("simulate", "one realization with trajectory dump");
    auto* swp = app.add_subcommand("sweep", "ensemble sweeps and table output");
    auto* bnd = app.add_subcommand("bounds", "JSON report of the analytic bounds");
    auto* eig = app.add_subcommand("eigen", "principal eigenpair of the operator");
    auto* val = app.add_subcommand("validate", "run the invariant suite");
    for (auto* s : {sim, swp, bnd, eig, val}) add_common(s);
    val->add_flag("--quick", quick, "smaller sample sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        RunConfig cfg;
        if (!preset.empty()) apply_preset(cfg, preset);
        if (!config_path.empty()) cfg = parse_config(read_file(config_path), cfg);
        if (sim->parsed()) cfg.mode = Mode::Simulate;
        if (swp->parsed()) cfg.mode = Mode::Sweep;
        if (bnd->parsed()) cfg.mode = Mode::Bounds;
        if (eig->parsed()) cfg.mode = Mode::Eigen;
        if (val->parsed()) cfg.mode = Mode::Validate;
        for (const auto& kv : sets) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
            set_config_value(cfg, trim(kv.substr(0, eq)), kv.substr(eq + 1));
        }
        if (seed) cfg.master_seed = seed;
        if (realizations) cfg.n_realizations = realizations;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (threads) cfg.threads = threads;
        validate_config(cfg);

        switch (cfg.mode) {
            case Mode::Simulate: return cmd_simulate(cfg);
            case Mode::Sweep: return cmd_sweep(cfg);
            case Mode::Bounds: return cmd_bounds(cfg);
            case Mode::Eigen: return cmd_eigen(cfg);
            case Mode::Validate: return cmd_validate(cfg, quick);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumeric;
    }
    return kOk;
}
