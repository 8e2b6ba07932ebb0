#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "doctest.h"
#include "generators.hpp"

#include "quench/config.hpp"
#include "quench/errors.hpp"
#include "quench/format.hpp"
#include "quench/oracles/oracles.hpp"
#include "quench/rng.hpp"
#include "quench/table_io.hpp"
#include "quench/time_profile.hpp"

using namespace quench;

TEST_CASE("number formatting round trips") {
    testgen::Gen gen(1);
    for (int i = 0; i < 1000; ++i) {
        double v = gen.uniform(-1e3, 1e3) * std::pow(10.0, gen.integer(-12, 12));
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(parse_int("1e4") == 10000);
    CHECK_THROWS(parse_double("0.1x"));
    CHECK_THROWS(parse_int("1.5"));
    CHECK(trim("  a b \t") == "a b");
}

TEST_CASE("time profiles") {
    auto c = TimeProfile::parse("2.5");
    CHECK(c.is_constant());
    CHECK(c(7.0) == 2.5);
    CHECK(c.integral_of_square(2.0) == doctest::Approx(12.5));
    auto t = TimeProfile::parse("0:1,0.5:2");
    CHECK(t(0.25) == doctest::Approx(1.5));
    CHECK(t(3.0) == 2.0);  // flat past the last knot
    CHECK(TimeProfile::parse(t.to_string()) == t);
    CHECK_THROWS(TimeProfile::parse("0:1,0.5"));
}

TEST_CASE("config defaults") {
    RunConfig c = parse_config("");
    CHECK(c == RunConfig{});
    CHECK(c.model.M == 41);
    CHECK(c.model.N == 10000);
    CHECK(c.model.T == 1.0);
    CHECK(c.model.alpha == 0.6);
    CHECK(c.model.H == 0.7);
    CHECK(c.model.kappa1 == 0.1);
    CHECK(c.model.kappa2 == 0.1);
    CHECK(c.model.c == 0.1);
    CHECK(c.model.epsilon == 2.2204e-16);
}

TEST_CASE("config parsing") {
    RunConfig c = parse_config("# table row\nlambda = 0.4\n");
    CHECK(c.model.lambda == 0.4);
    CHECK(c.model.alpha == 0.6);

    try {
        parse_config("H = 0.4");
        FAIL("accepted H = 0.4");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("range error") != std::string::npos);
    }
    try {
        parse_config("lamda = 1");
        FAIL("accepted unknown key");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("lamda") != std::string::npos);
        CHECK(msg.find("kappa2") != std::string::npos);  // lists the valid keys
    }
    CHECK_THROWS_AS(parse_config("c = 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("N = 0"), ConfigError);
    CHECK_THROWS_AS(parse_config("lambda 0.4"), ConfigError);

    RunConfig j = parse_config(R"({"lambda": 0.6, "M": 21, "b": "0:1,1:0.5", "preset": "t3"})");
    CHECK(j.model.lambda == 0.6);
    CHECK(j.model.M == 21);
    CHECK(j.sweep_axis == SweepAxis::Kappa2);
    CHECK_FALSE(j.model.b_fn.is_constant());
}

TEST_CASE("property: config round trip") {
    testgen::Gen gen(21);
    for (int i = 0; i < 50; ++i) {
        RunConfig c;
        if (i % 3 == 0) apply_preset(c, preset_names()[i % preset_names().size()]);
        c.model.lambda = gen.uniform(0, 2);
        c.model.gamma = gen.uniform(0, 1);
        c.model.alpha = gen.uniform(0.1, 0.9);
        c.model.H = gen.uniform(0.51, 0.99);
        c.model.c = gen.uniform(0, 0.99);
        c.model.N = gen.integer(1, 50000);
        c.model.M = gen.integer(3, 200);
        c.model.a_fn = TimeProfile::tabulated({0.0, gen.uniform(0.1, 1)}, {gen.uniform(0, 1), gen.uniform(0, 1)});
        c.master_seed = gen.seed();
        c.threads = gen.integer(1, 16);
        c.bound.W1 = gen.uniform(0.1, 5);
        c.bound.eigen_initial = i % 2;
        c.lambdas = {gen.uniform(0, 1), gen.uniform(1, 2)};
        std::string text = emit_config(c);
        RunConfig back = parse_config(text);
        CHECK(back == c);
        CHECK(emit_config(back) == text);
    }
}

TEST_CASE("presets") {
    for (const auto& name : preset_names()) {
        RunConfig c;
        apply_preset(c, name);
        CHECK(c.mode == Mode::Sweep);
        CHECK_NOTHROW(validate_config(c));
    }
    RunConfig t2;
    apply_preset(t2, "t2");
    CHECK(t2.model.gamma == 0.1);
    CHECK(t2.lambdas.size() == 8);
    RunConfig f;
    apply_preset(f, "fig2");
    CHECK(f.model.kappa1 == 0.5);
    CHECK(f.alphas.size() == 17);
    CHECK(f.hursts.size() == 9);
    RunConfig ft;
    apply_preset(ft, "fig2-text");
    CHECK(ft.model.kappa2 == 0.1);
    CHECK_THROWS_AS(apply_preset(f, "t9"), ConfigError);
}

TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    for (std::uint64_t i = 0; i < 100; ++i) CHECK(derive_seed(77, i) == oracle::naive_derive_seed(77, i));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(2000000);
    for (std::uint64_t i = 0; i < 1000000; ++i) seen.insert(derive_seed(12345, i));
    CHECK(seen.size() == 1000000);
}

TEST_CASE("tables") {
    SweepResult r;
    r.axes = {"lambda"};
    CHECK(table_csv(r) == "lambda,probability,mean_Tq,var_Tq,std_error,failures,n_realizations,n_quenched\n");

    for (int i = 0; i < 8; ++i) {
        r.points.push_back({0.2 * i + 0.01});
        EnsembleStats s;
        s.n_realizations = 2000;
        s.n_quenched = 250 * i;
        s.failures = i % 2;
        s.quench_probability = double(s.n_quenched) / s.n_valid();
        s.std_error_p = std::sqrt(s.quench_probability * (1 - s.quench_probability) / s.n_valid());
        if (i > 0) s.mean_Tq = 1.0 / (3.0 + i);
        if (i > 1) s.var_Tq = 1e-3 / i;
        r.stats.push_back(s);
    }
    std::string csv = table_csv(r);
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 9);
    CHECK(csv.find("\n0.01,0,,,0,0,2000,0\n") != std::string::npos);
    SweepResult back = parse_table(csv);
    CHECK(back.axes == r.axes);
    CHECK(back.points == r.points);
    REQUIRE(back.stats.size() == r.stats.size());
    for (std::size_t i = 0; i < r.stats.size(); ++i) {
        CHECK(back.stats[i].n_quenched == r.stats[i].n_quenched);
        CHECK(back.stats[i].failures == r.stats[i].failures);
        CHECK(back.stats[i].quench_probability == r.stats[i].quench_probability);
        CHECK(back.stats[i].mean_Tq == r.stats[i].mean_Tq);
        CHECK(back.stats[i].var_Tq == r.stats[i].var_Tq);
        CHECK(back.stats[i].std_error_p == r.stats[i].std_error_p);
    }
    CHECK(table_csv(back) == csv);

    auto dir = std::filesystem::temp_directory_path() / "quench_table_test";
    std::filesystem::create_directories(dir);
    auto file = (dir / "t.csv").string();
    emit_table(r, file);
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == csv);
    CHECK_THROWS_AS(emit_table(r, (dir / "missing" / "t.csv").string()), IoError);
}
