#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quench/analytic_bounds.hpp"
#include "quench/model.hpp"

namespace quench {

enum class Mode { Simulate, Sweep, Bounds, Eigen, Validate };
enum class SweepAxis { Lambda, Kappa2, AlphaH };

struct BoundSettings {
    double eta1 = 1.0, eta2 = 1.0, zeta_m = 1.0, zeta_M = 1.0;
    double W1 = 1.0;            // eigenfunction initial datum v0 = W1 psi1
    bool eigen_initial = true;  // false: v0 = 1 - u0
    double Lambda = 1.0;        // constant of the gamma bound
    double T_trunc = 1.0;
    long paths = 2000;
    bounds::LowerBoundVariant variant = bounds::LowerBoundVariant::General;
    bounds::GrowthExponents exponents;
    bounds::VarianceModel variance = bounds::VarianceModel::Exact;
    bounds::ChebyshevForm chebyshev = bounds::ChebyshevForm::Printed;

    bool operator==(const BoundSettings&) const = default;
};

struct RunConfig {
    Mode mode = Mode::Simulate;
    ModelParams model;
    BoundSettings bound;
    long n_realizations = 2000;
    std::uint64_t master_seed = 1;
    std::string out_dir = ".";
    int threads = 1;
    std::string preset;  // informational once applied

    SweepAxis sweep_axis = SweepAxis::Lambda;
    std::vector<double> lambdas{0.01, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
    std::vector<double> kappa2s{0.05, 0.1, 0.5, 1.0, 1.5, 2.0};
    std::vector<double> alphas{0.2, 0.5, 0.8};
    std::vector<double> hursts{0.55, 0.7, 0.9};

    bool dump_path = false;
    bool dump_matrix = false;

    bool operator==(const RunConfig&) const = default;
};

const std::vector<std::string>& config_keys();

// Flat "key = value" lines ('#' starts a comment) or a JSON object. Keys not
// present keep their value from `base`.
RunConfig parse_config(const std::string& text, const RunConfig& base = RunConfig{});
// Set one key from its textual value; throws ConfigError on bad keys/values.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
// Every key, in config_keys() order; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);
void validate_config(const RunConfig& cfg);

// t1, t2, t3, fig2 (caption noise 0.5), fig2-text (0.1), fig2-coarse (3x3 grid).
void apply_preset(RunConfig& cfg, const std::string& name);
const std::vector<std::string>& preset_names();

std::string mode_name(Mode m);

}  // namespace quench
