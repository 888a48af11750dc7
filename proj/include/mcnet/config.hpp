#ifndef MCNET_CONFIG_HPP
#define MCNET_CONFIG_HPP

#include <array>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mcnet/errors.hpp"
#include "mcnet/params.hpp"

namespace mcnet {

// The flat key = value configuration format. Exactly these keys are
// recognised; powers arrive in dBm and biases in dB, converted to linear
// units on parse.
inline const std::array<std::string, 12>& config_keys() {
    static const std::array<std::string, 12> keys = {
        "p_macro_dbm", "p_small_dbm",  "b_macro_db", "b_small_db",
        "alpha_macro", "alpha_small",  "lambda_m",   "c_bar",
        "cluster_radius_m", "lambda_u", "noise_w",   "ds_model"};
    return keys;
}

struct RunConfig {
    NetworkParams params;
    DsModel ds_model = DsModel::GlobalMcp;
    std::map<std::string, std::string> raw; // key -> literal value as given
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    return x;
}

inline bool known_key(const std::string& key) {
    for (const auto& k : config_keys())
        if (k == key) return true;
    return false;
}

} // namespace detail

// Builds validated parameters from a raw key -> value map. Every key must be
// present and known; the first violated model invariant is reported by name.
inline RunConfig build_config(const std::map<std::string, std::string>& raw) {
    for (const auto& [k, v] : raw)
        if (!detail::known_key(k)) throw ConfigError("unknown config key: " + k);
    for (const auto& k : config_keys())
        if (raw.find(k) == raw.end()) throw ConfigError("missing config key: " + k);

    RunConfig cfg;
    cfg.raw = raw;
    NetworkParams& p = cfg.params;
    p.p_macro_w = dbm_to_watts(detail::parse_number("p_macro_dbm", raw.at("p_macro_dbm")));
    p.p_small_w = dbm_to_watts(detail::parse_number("p_small_dbm", raw.at("p_small_dbm")));
    p.b_macro = db_to_linear(detail::parse_number("b_macro_db", raw.at("b_macro_db")));
    p.b_small = db_to_linear(detail::parse_number("b_small_db", raw.at("b_small_db")));
    p.alpha_macro = detail::parse_number("alpha_macro", raw.at("alpha_macro"));
    p.alpha_small = detail::parse_number("alpha_small", raw.at("alpha_small"));
    p.lambda_m = detail::parse_number("lambda_m", raw.at("lambda_m"));
    p.c_bar = detail::parse_number("c_bar", raw.at("c_bar"));
    p.cluster_radius_m = detail::parse_number("cluster_radius_m", raw.at("cluster_radius_m"));
    p.lambda_u = detail::parse_number("lambda_u", raw.at("lambda_u"));
    p.noise_w = detail::parse_number("noise_w", raw.at("noise_w"));

    const std::string ds = detail::trim(raw.at("ds_model"));
    if (ds == "global_mcp")
        cfg.ds_model = DsModel::GlobalMcp;
    else if (ds == "intra_cluster")
        cfg.ds_model = DsModel::IntraCluster;
    else
        throw ConfigError("config key 'ds_model': expected global_mcp or intra_cluster, got '" +
                          ds + "'");

    try {
        validate(p);
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("invalid parameters: ") + e.what());
    }
    return cfg;
}

// Parses a params file: one `key = value` per line, '#' starts a comment,
// blank lines ignored.
inline std::map<std::string, std::string> parse_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open params file: " + path);
    std::map<std::string, std::string> raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        if (raw.count(key))
            throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key: " + key);
        raw[key] = value;
    }
    return raw;
}

// Applies `--set key=value` overrides on top of the parsed file, then
// validates the merged set as a unit.
inline RunConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides) {
    std::map<std::string, std::string> raw = parse_params_file(path);
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + ov + "'");
        const std::string key = detail::trim(ov.substr(0, eq));
        const std::string value = detail::trim(ov.substr(eq + 1));
        if (!detail::known_key(key)) throw ConfigError("unknown config key: " + key);
        raw[key] = value;
    }
    return build_config(raw);
}

} // namespace mcnet

#endif
