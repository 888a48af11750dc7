#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "mcnet/config.hpp"

using namespace mcnet;

namespace {

std::map<std::string, std::string> baseline_raw() {
    return {{"p_macro_dbm", "53"},
            {"p_small_dbm", "33"},
            {"b_macro_db", "0"},
            {"b_small_db", "0"},
            {"alpha_macro", "4"},
            {"alpha_small", "4"},
            {"lambda_m", "1.2732395447351628e-06"},
            {"c_bar", "1"},
            {"cluster_radius_m", "100"},
            {"lambda_u", "1e-4"},
            {"noise_w", "0"},
            {"ds_model", "global_mcp"}};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string("mcnet_test_cfg_") + std::to_string(rand()) + ".conf";
        std::ofstream f(path);
        f << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("a complete raw map builds linear parameters") {
    const RunConfig cfg = build_config(baseline_raw());
    CHECK(cfg.params.p_macro_w == Catch::Approx(199.526).margin(1e-3));
    CHECK(cfg.params.p_small_w == Catch::Approx(1.99526).margin(1e-5));
    CHECK(cfg.params.b_macro == 1.0);
    CHECK(cfg.params.b_small == 1.0);
    CHECK(cfg.params.lambda_m == Catch::Approx(1.2732395447351628e-06).epsilon(1e-15));
    CHECK(cfg.ds_model == DsModel::GlobalMcp);
}

TEST_CASE("unknown keys are named") {
    auto raw = baseline_raw();
    raw["lambda_q"] = "3";
    try {
        build_config(raw);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("lambda_q") != std::string::npos);
    }
}

TEST_CASE("missing keys are named") {
    auto raw = baseline_raw();
    raw.erase("noise_w");
    try {
        build_config(raw);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("noise_w") != std::string::npos);
    }
}

TEST_CASE("malformed values are rejected") {
    auto raw = baseline_raw();
    raw["c_bar"] = "four";
    CHECK_THROWS_AS(build_config(raw), ConfigError);
    raw = baseline_raw();
    raw["ds_model"] = "nearest";
    CHECK_THROWS_AS(build_config(raw), ConfigError);
}

TEST_CASE("model invariants propagate as config errors") {
    auto raw = baseline_raw();
    raw["alpha_macro"] = "2";
    try {
        build_config(raw);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("alpha_macro") != std::string::npos);
    }
}

TEST_CASE("file parsing with comments, blanks and overrides") {
    std::string text = "# test configuration\n";
    for (const auto& [k, v] : baseline_raw()) text += k + " = " + v + "\n";
    text += "\n# trailing comment\n";
    const TempFile file(text);

    const RunConfig cfg = load_config(file.path, {"c_bar=5", "ds_model=intra_cluster"});
    CHECK(cfg.params.c_bar == 5.0);
    CHECK(cfg.ds_model == DsModel::IntraCluster);

    CHECK_THROWS_AS(load_config(file.path, {"not_a_key=1"}), ConfigError);
    CHECK_THROWS_AS(load_config(file.path, {"malformed"}), ConfigError);
    CHECK_THROWS_AS(load_config("no_such_file.conf", {}), IoError);
}

TEST_CASE("duplicate and malformed lines are rejected") {
    const TempFile dup("c_bar = 1\nc_bar = 2\n");
    CHECK_THROWS_AS(parse_params_file(dup.path), ConfigError);
    const TempFile noeq("c_bar 1\n");
    CHECK_THROWS_AS(parse_params_file(noeq.path), ConfigError);
}

TEST_CASE("dB biases convert to linear multipliers") {
    auto raw = baseline_raw();
    raw["b_macro_db"] = "10";
    raw["b_small_db"] = "-10";
    const RunConfig cfg = build_config(raw);
    CHECK(cfg.params.b_macro == Catch::Approx(10.0).epsilon(1e-12));
    CHECK(cfg.params.b_small == Catch::Approx(0.1).epsilon(1e-12));
}
