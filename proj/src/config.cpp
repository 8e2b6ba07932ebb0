#include "quench/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

#include "quench/errors.hpp"
#include "quench/format.hpp"

namespace quench {

namespace {

using bounds::ChebyshevForm;
using bounds::LowerBoundVariant;
using bounds::VarianceModel;

template <class E>
struct EnumNames {
    std::vector<std::pair<E, std::string>> items;

    const std::string& name(E e) const {
        for (const auto& [v, n] : items)
            if (v == e) return n;
        throw ConfigError("unnamed enum value");
    }
    E parse(const std::string& key, const std::string& text) const {
        for (const auto& [v, n] : items)
            if (n == text) return v;
        std::string valid;
        for (const auto& [v, n] : items) valid += (valid.empty() ? "" : ", ") + n;
        throw ConfigError("invalid value '" + text + "' for key '" + key + "' (expected one of: " +
                          valid + ")");
    }
};

const EnumNames<Mode> kModes{{{Mode::Simulate, "simulate"},
                              {Mode::Sweep, "sweep"},
                              {Mode::Bounds, "bounds"},
                              {Mode::Eigen, "eigen"},
                              {Mode::Validate, "validate"}}};
const EnumNames<SweepAxis> kAxes{
    {{SweepAxis::Lambda, "lambda"}, {SweepAxis::Kappa2, "kappa2"}, {SweepAxis::AlphaH, "alpha_H"}}};
const EnumNames<KappaRule> kKappa{{{KappaRule::Consistent, "consistent"}, {KappaRule::Printed, "printed"}}};
const EnumNames<ConstantRule> kConst{
    {{ConstantRule::Standard, "standard"}, {ConstantRule::Literal, "literal"}}};
const EnumNames<LowerBoundVariant> kVariant{{{LowerBoundVariant::General, "general"},
                                             {LowerBoundVariant::NoRegularizer, "no_regularizer"},
                                             {LowerBoundVariant::Regularized, "regularized"},
                                             {LowerBoundVariant::NoBrownian, "no_brownian"},
                                             {LowerBoundVariant::NoFractional, "no_fractional"}}};
const EnumNames<VarianceModel> kVariance{
    {{VarianceModel::Exact, "exact"}, {VarianceModel::Conservative, "conservative"}}};
const EnumNames<ChebyshevForm> kCheb{
    {{ChebyshevForm::Printed, "printed"}, {ChebyshevForm::Corrected, "corrected"}}};

std::string list_to_string(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::string t = trim(text);
    if (t.empty()) return out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
    return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
    std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError("invalid boolean '" + text + "' for key '" + key + "'");
}

int to_int(const std::string& key, const std::string& text) {
    long long v = parse_int(text);
    if (v < -2147483647LL || v > 2147483647LL)
        throw ConfigError("value for '" + key + "' is out of range");
    return static_cast<int>(v);
}

struct Field {
    std::string key;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

#define QUENCH_DOUBLE(name, member)                                                   \
    Field {                                                                           \
        name, [](RunConfig& c, const std::string& v) { c.member = parse_double(v); }, \
            [](const RunConfig& c) { return format_double(c.member); }                \
    }
#define QUENCH_PROFILE(name, member)                                                        \
    Field {                                                                                 \
        name, [](RunConfig& c, const std::string& v) { c.member = TimeProfile::parse(v); }, \
            [](const RunConfig& c) { return c.member.to_string(); }                         \
    }
#define QUENCH_ENUM(key_, member, table)                                                   \
    Field {                                                                                \
        key_, [](RunConfig& c, const std::string& v) { c.member = table.parse(key_, trim(v)); }, \
            [](const RunConfig& c) { return table.name(c.member); }                       \
    }
#define QUENCH_LIST(name, member)                                                    \
    Field {                                                                          \
        name, [](RunConfig& c, const std::string& v) { c.member = parse_list(v); }, \
            [](const RunConfig& c) { return list_to_string(c.member); }              \
    }
#define QUENCH_BOOL(name, member)                                                           \
    Field {                                                                                 \
        name, [](RunConfig& c, const std::string& v) { c.member = parse_bool(name, v); }, \
            [](const RunConfig& c) { return std::string(c.member ? "true" : "false"); }    \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> f = {
        QUENCH_ENUM("mode", mode, kModes),
        QUENCH_DOUBLE("lambda", model.lambda),
        QUENCH_DOUBLE("gamma", model.gamma),
        QUENCH_DOUBLE("alpha", model.alpha),
        QUENCH_DOUBLE("rho", model.op.rho),
        QUENCH_DOUBLE("H", model.H),
        QUENCH_DOUBLE("kappa1", model.kappa1),
        QUENCH_DOUBLE("kappa2", model.kappa2),
        QUENCH_DOUBLE("c", model.c),
        QUENCH_DOUBLE("T", model.T),
        Field{"N", [](RunConfig& c, const std::string& v) { c.model.N = to_int("N", v); },
              [](const RunConfig& c) { return std::to_string(c.model.N); }},
        Field{"M", [](RunConfig& c, const std::string& v) { c.model.M = to_int("M", v); },
              [](const RunConfig& c) { return std::to_string(c.model.M); }},
        QUENCH_DOUBLE("epsilon", model.epsilon),
        QUENCH_PROFILE("a", model.a_fn),
        QUENCH_PROFILE("b", model.b_fn),
        QUENCH_PROFILE("k", model.k_fn),
        QUENCH_ENUM("kappa_rule", model.op.kappa_rule, kKappa),
        QUENCH_ENUM("constant_rule", model.op.constant_rule, kConst),
        Field{"realizations",
              [](RunConfig& c, const std::string& v) { c.n_realizations = static_cast<long>(parse_int(v)); },
              [](const RunConfig& c) { return std::to_string(c.n_realizations); }},
        Field{"seed",
              [](RunConfig& c, const std::string& v) {
                  std::string t = trim(v);
                  std::uint64_t s = 0;
                  auto r = std::from_chars(t.data(), t.data() + t.size(), s);
                  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
                      throw ConfigError("invalid seed '" + v + "' (expected an unsigned 64-bit integer)");
                  c.master_seed = s;
              },
              [](const RunConfig& c) { return std::to_string(c.master_seed); }},
        Field{"out", [](RunConfig& c, const std::string& v) { c.out_dir = trim(v); },
              [](const RunConfig& c) { return c.out_dir; }},
        Field{"threads", [](RunConfig& c, const std::string& v) { c.threads = to_int("threads", v); },
              [](const RunConfig& c) { return std::to_string(c.threads); }},
        Field{"preset", [](RunConfig& c, const std::string& v) { c.preset = trim(v); },
              [](const RunConfig& c) { return c.preset; }},
        QUENCH_ENUM("sweep", sweep_axis, kAxes),
        QUENCH_LIST("lambdas", lambdas),
        QUENCH_LIST("kappa2s", kappa2s),
        QUENCH_LIST("alphas", alphas),
        QUENCH_LIST("hursts", hursts),
        QUENCH_BOOL("dump_path", dump_path),
        QUENCH_BOOL("dump_matrix", dump_matrix),
        QUENCH_DOUBLE("eta1", bound.eta1),
        QUENCH_DOUBLE("eta2", bound.eta2),
        QUENCH_DOUBLE("zeta_m", bound.zeta_m),
        QUENCH_DOUBLE("zeta_M", bound.zeta_M),
        QUENCH_DOUBLE("W1", bound.W1),
        QUENCH_BOOL("eigen_initial", bound.eigen_initial),
        QUENCH_DOUBLE("Lambda", bound.Lambda),
        QUENCH_DOUBLE("T_trunc", bound.T_trunc),
        Field{"bound_paths",
              [](RunConfig& c, const std::string& v) { c.bound.paths = static_cast<long>(parse_int(v)); },
              [](const RunConfig& c) { return std::to_string(c.bound.paths); }},
        QUENCH_ENUM("lower_variant", bound.variant, kVariant),
        QUENCH_DOUBLE("growth_theta", bound.exponents.theta),
        QUENCH_DOUBLE("growth_eta", bound.exponents.eta),
        QUENCH_DOUBLE("growth_rho", bound.exponents.rho),
        QUENCH_ENUM("variance_model", bound.variance, kVariance),
        QUENCH_ENUM("chebyshev_form", bound.chebyshev, kCheb),
    };
    return f;
}

#undef QUENCH_DOUBLE
#undef QUENCH_PROFILE
#undef QUENCH_ENUM
#undef QUENCH_LIST
#undef QUENCH_BOOL

std::string json_value_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : ",") + json_value_text(e);
        return s;
    }
    throw ConfigError("unsupported JSON value: " + v.dump());
}

}  // namespace

std::string mode_name(Mode m) { return kModes.name(m); }

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& f : fields()) {
        if (f.key != key) continue;
        try {
            f.set(cfg, value);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError("invalid value for '" + key + "': " + e.what());
        }
        return;
    }
    std::string valid;
    for (const auto& k : config_keys()) valid += (valid.empty() ? "" : ", ") + k;
    throw ConfigError("unknown key '" + key + "'; valid keys: " + valid);
}

RunConfig parse_config(const std::string& text, const RunConfig& base) {
    RunConfig cfg = base;
    std::string t = trim(text);
    if (!t.empty() && t.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("malformed JSON config: ") + e.what());
        }
        if (!j.is_object()) throw ConfigError("JSON config must be an object");
        // preset first so explicit keys override it
        if (j.contains("preset")) {
            std::string name = trim(json_value_text(j["preset"]));
            if (!name.empty()) apply_preset(cfg, name);
        }
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "preset") set_config_value(cfg, it.key(), json_value_text(it.value()));
    } else {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        std::vector<std::pair<std::string, std::string>> entries;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
            entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
        for (const auto& [k, v] : entries)
            if (k == "preset" && !v.empty()) apply_preset(cfg, v);
        for (const auto& [k, v] : entries)
            if (k != "preset") set_config_value(cfg, k, v);
    }
    validate_config(cfg);
    return cfg;
}

std::string emit_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& f : fields()) out += f.key + " = " + f.get(cfg) + "\n";
    return out;
}

void validate_config(const RunConfig& cfg) {
    try {
        cfg.model.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("range error: ") + e.what());
    }
    if (cfg.n_realizations < 1) throw ConfigError("range error: realizations must be >= 1");
    if (cfg.threads < 1) throw ConfigError("range error: threads must be >= 1");
    if (cfg.bound.paths < 2) throw ConfigError("range error: bound_paths must be >= 2");
    if (!(cfg.bound.T_trunc > 0.0)) throw ConfigError("range error: T_trunc must be > 0");
    if (!(cfg.bound.eta1 > 0.0 && cfg.bound.eta1 <= cfg.bound.eta2))
        throw ConfigError("range error: need 0 < eta1 <= eta2");
    if (!(cfg.bound.zeta_m >= 0.0 && cfg.bound.zeta_m <= cfg.bound.zeta_M))
        throw ConfigError("range error: need 0 <= zeta_m <= zeta_M");
    if (!(cfg.bound.W1 > 0.0)) throw ConfigError("range error: W1 must be > 0");
    for (double a : cfg.alphas)
        if (!(a >= 0.1 && a <= 0.9)) throw ConfigError("range error: alphas must lie in [0.1, 0.9]");
    for (double h : cfg.hursts)
        if (!(h > 0.5 && h < 1.0)) throw ConfigError("range error: hursts must lie in (1/2, 1)");
    for (double l : cfg.lambdas)
        if (!(l >= 0.0)) throw ConfigError("range error: lambdas must be >= 0");
    for (double k : cfg.kappa2s)
        if (!(k >= 0.0)) throw ConfigError("range error: kappa2s must be >= 0");
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"t1", "t2", "t3", "fig2", "fig2-text", "fig2-coarse"};
    return names;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    ModelParams& m = cfg.model;
    cfg.mode = Mode::Sweep;
    cfg.preset = name;
    m.alpha = 0.6;
    m.H = 0.7;
    m.kappa1 = 0.1;
    m.kappa2 = 0.1;
    m.M = 41;
    m.c = 0.1;
    m.T = 1.0;
    m.gamma = 0.0;
    m.lambda = 0.4;
    if (name == "t1" || name == "t2") {
        cfg.sweep_axis = SweepAxis::Lambda;
        cfg.lambdas = {0.01, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
        if (name == "t2") m.gamma = 0.1;
    } else if (name == "t3") {
        cfg.sweep_axis = SweepAxis::Kappa2;
        cfg.kappa2s = {0.05, 0.1, 0.5, 1.0, 1.5, 2.0};
    } else if (name == "fig2" || name == "fig2-text" || name == "fig2-coarse") {
        cfg.sweep_axis = SweepAxis::AlphaH;
        double k = name == "fig2-text" ? 0.1 : 0.5;
        m.kappa1 = k;
        m.kappa2 = k;
        if (name == "fig2-coarse") {
            cfg.alphas = {0.2, 0.5, 0.8};
            cfg.hursts = {0.55, 0.7, 0.9};
        } else {
            cfg.alphas.clear();
            for (int l = 0; l <= 16; ++l) cfg.alphas.push_back(std::round((0.1 + 0.05 * l) * 100) / 100);
            cfg.hursts.clear();
            for (int k2 = 1; k2 <= 9; ++k2) cfg.hursts.push_back(std::round((0.5 + 0.05 * k2) * 100) / 100);
        }
    } else {
        std::string valid;
        for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
        throw ConfigError("unknown preset '" + name + "' (expected one of: " + valid + ")");
    }
}

}  // namespace quench
