// Experiment runner for the two-tier clustered-network model: analytical
// association/rate reports, Monte Carlo simulation, parameter sweeps, and
// figure-reproduction CSV emitters.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcnet/mcnet.hpp"

namespace {

using namespace mcnet;

struct CommonOpts {
    std::string params_file;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string mode = "paper";
    std::uint64_t seed = 1;
    long reps = 0; // 0 = per-command default
    double window = 10000.0;
    double guard = 0.0;
    int threads = 1;
    std::string count_mode = "poisson";
    std::string user_mode = "daughter";
    std::string layout = "mcp";
    bool ppp_users_in_disks = false;
};

AssocMode parse_mode(const std::string& m) {
    if (m == "paper" || m == "paper_faithful") return AssocMode::PaperFaithful;
    if (m == "consistent") return AssocMode::Consistent;
    throw ConfigError("--mode expects paper or consistent, got '" + m + "'");
}

ClusterCountMode parse_count_mode(const std::string& m) {
    if (m == "poisson") return ClusterCountMode::Poisson;
    if (m == "fixed") return ClusterCountMode::Fixed;
    throw ConfigError("--count-mode expects poisson or fixed, got '" + m + "'");
}

UserMode parse_user_mode(const std::string& m) {
    if (m == "daughter" || m == "daughter_style") return UserMode::DaughterStyle;
    if (m == "union" || m == "union_uniform") return UserMode::UnionUniform;
    throw ConfigError("--user-mode expects daughter or union, got '" + m + "'");
}

SbsLayout parse_layout(const std::string& m) {
    if (m == "mcp" || m == "clustered") return SbsLayout::ClusteredMcp;
    if (m == "ppp" || m == "independent_ppp") return SbsLayout::IndependentPpp;
    throw ConfigError("--layout expects mcp or ppp, got '" + m + "'");
}

SimConfig make_sim(const CommonOpts& o, const NetworkParams& p, long default_reps) {
    SimConfig sim;
    sim.window_half_width = o.window;
    sim.guard_width = o.guard;
    sim.n_replications = o.reps > 0 ? o.reps : default_reps;
    sim.master_seed = o.seed;
    sim.cluster_count_mode = parse_count_mode(o.count_mode);
    sim.user_mode = parse_user_mode(o.user_mode);
    sim.sbs_layout = parse_layout(o.layout);
    sim.baseline_users_in_disks = o.ppp_users_in_disks;
    sim.threads = o.threads;
    return sim;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw IoError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void finish() {
        if (file_) {
            file_->flush();
            if (!*file_) throw IoError("write failure on output file");
        }
    }

  private:
    std::unique_ptr<std::ofstream> file_;
};

void write_config_meta(CsvWriter& csv, const RunConfig& cfg, const std::string& command) {
    csv.meta("tool", "mcnet");
    csv.meta("version", MCNET_VERSION);
    csv.meta("command", command);
    for (const auto& key : config_keys()) csv.meta(key, cfg.raw.at(key));
}

void write_sim_meta(CsvWriter& csv, const SimConfig& sim) {
    // worker count intentionally omitted: outputs are identical across it
    csv.meta("seed", static_cast<unsigned long long>(sim.master_seed));
    csv.meta("n_replications", sim.n_replications);
    csv.meta("window_half_width_m", sim.window_half_width);
    csv.meta("guard_width_m", sim.guard_width);
    csv.meta("cluster_count_mode", to_string(sim.cluster_count_mode));
    csv.meta("user_mode", to_string(sim.user_mode));
    csv.meta("sbs_layout", to_string(sim.sbs_layout));
    if (sim.sbs_layout == SbsLayout::IndependentPpp)
        csv.meta("baseline_users_in_disks", sim.baseline_users_in_disks ? "true" : "false");
}

std::vector<std::string> analyze_header(const std::string& lead = "") {
    std::vector<std::string> h;
    if (!lead.empty()) h.push_back(lead);
    for (const char* c : {"a_macro", "a_small", "sum", "load_macro", "load_small", "rate_macro",
                          "rate_small", "rate_total_eq17", "rate_total_eq18", "rel_diff", "mode",
                          "ds_model", "closure"})
        h.push_back(c);
    return h;
}

std::vector<std::string> analyze_row(const NetworkParams& p, AssocMode mode, DsModel ds,
                                     const std::string& lead = "") {
    const AssociationReport ar = assoc_report(p, mode, ds);
    const RateReport rr = rate_total(p);
    std::vector<std::string> row;
    if (!lead.empty()) row.push_back(lead);
    for (double v : {ar.a_macro, ar.a_small, ar.sum, ar.load_macro, ar.load_small, rr.rate_macro,
                     rr.rate_small, rr.rate_total_eq17, rr.rate_total_eq18, rr.rel_diff})
        row.push_back(format_double(v));
    row.push_back(to_string(ar.mode));
    row.push_back(to_string(ar.ds_model_macro));
    row.push_back(to_string(ar.closure));
    return row;
}

int cmd_analyze(const CommonOpts& o) {
    const RunConfig cfg = load_config(o.params_file, o.overrides);
    const AssocMode mode = parse_mode(o.mode);
    Output out(o.out_path);
    CsvWriter csv(out.stream());
    write_config_meta(csv, cfg, "analyze");
    csv.meta("mode", to_string(mode));
    csv.header(analyze_header());
    csv.row(analyze_row(cfg.params, mode, cfg.ds_model));
    out.finish();
    return 0;
}

int cmd_associate(const CommonOpts& o) {
    const RunConfig cfg = load_config(o.params_file, o.overrides);
    const AssocMode mode = parse_mode(o.mode);
    const AssociationReport ar = assoc_report(cfg.params, mode, cfg.ds_model);
    Output out(o.out_path);
    CsvWriter csv(out.stream());
    write_config_meta(csv, cfg, "associate");
    csv.meta("mode", to_string(mode));
    csv.header({"a_macro", "a_small", "sum", "load_macro", "load_small", "mode"});
    csv.row({format_double(ar.a_macro), format_double(ar.a_small), format_double(ar.sum),
             format_double(ar.load_macro), format_double(ar.load_small),
             std::string(to_string(ar.mode))});
    out.finish();
    return 0;
}

int cmd_rate(const CommonOpts& o) {
    const RunConfig cfg = load_config(o.params_file, o.overrides);
    const RateReport rr = rate_total(cfg.params);
    Output out(o.out_path);
    CsvWriter csv(out.stream());
    write_config_meta(csv, cfg, "rate");
    csv.header({"rate_macro", "rate_small", "rate_total_eq17", "rate_total_eq18", "rel_diff"});
    csv.row({rr.rate_macro, rr.rate_small, rr.rate_total_eq17, rr.rate_total_eq18, rr.rel_diff});
    out.finish();
    return 0;
}

int cmd_simulate(const CommonOpts& o, const std::string& samples_path,
                 const std::string& pattern_path) {
    const RunConfig cfg = load_config(o.params_file, o.overrides);
    SimConfig sim = validate(make_sim(o, cfg.params, 10000), cfg.params);

    const std::vector<SampleRecord> records = run_records(cfg.params, sim);

    long macro_wins = 0;
    double sum = 0.0;
    long redraws = 0;
    for (const auto& r : records) {
        if (r.serving == Tier::Macro) ++macro_wins;
        sum += r.rate_nats;
        redraws += r.redraws;
    }
    const double n = static_cast<double>(records.size());
    const double pm = static_cast<double>(macro_wins) / n;
    const double pse = std::sqrt(pm * (1.0 - pm) / n);
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : records) ss += (r.rate_nats - mean) * (r.rate_nats - mean);
    const double rse = n > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;

    Output out(o.out_path);
    CsvWriter csv(out.stream());
    write_config_meta(csv, cfg, "simulate");
    write_sim_meta(csv, sim);
    csv.header({"a_macro_mc", "a_macro_stderr", "a_small_mc", "a_small_stderr", "rate_mc",
                "rate_stderr", "n", "redraws"});
    csv.row({format_double(pm), format_double(pse), format_double(1.0 - pm), format_double(pse),
             format_double(mean), format_double(rse), std::to_string(records.size()),
             std::to_string(redraws)});
    out.finish();

    if (!samples_path.empty()) {
        std::ofstream sf(samples_path, std::ios::binary);
        if (!sf) throw IoError("cannot open samples file: " + samples_path);
        sf << "replication,d_macro_m,d_small_m,serving_tier,sinr,rate_nats\n";
        for (const auto& r : records) {
            sf << r.replication_index << ',' << format_double(r.d_macro) << ',';
            if (r.d_small) sf << format_double(*r.d_small);
            sf << ',' << to_string(r.serving) << ',' << format_double(r.sinr) << ','
               << format_double(r.rate_nats) << '\n';
        }
        if (!sf) throw IoError("write failure on samples file");
    }

    if (!pattern_path.empty()) {
        RngStream rng = RngStream::for_replication(sim.master_seed, 0, 0);
        const Window window{sim.window_half_width};
        PointPattern macros = sample_ppp(cfg.params.lambda_m, window, rng);
        PointPattern all = macros;
        if (sim.sbs_layout == SbsLayout::ClusteredMcp && cfg.params.c_bar > 0) {
            PointPattern smalls = sample_mcp(macros, cfg.params.c_bar, cfg.params.cluster_radius_m,
                                             sim.cluster_count_mode, rng);
            all.points.insert(all.points.end(), smalls.points.begin(), smalls.points.end());
        } else if (sim.sbs_layout == SbsLayout::IndependentPpp) {
            PointPattern smalls = sample_ppp(cfg.params.lambda_s(), window, rng);
            for (Point& pt : smalls.points) pt.tier = Tier::Small;
            all.points.insert(all.points.end(), smalls.points.begin(), smalls.points.end());
        }
        std::ofstream pf(pattern_path, std::ios::binary);
        if (!pf) throw IoError("cannot open pattern file: " + pattern_path);
        write_pattern_csv(pf, all);
        if (!pf) throw IoError("write failure on pattern file");
    }
    return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& key, const std::string& values_csv) {
    if (key.empty() || values_csv.empty()) throw ConfigError("sweep requires --key and --values");
    std::vector<std::string> values;
    std::string cur;
    for (char c : values_csv) {
        if (c == ',') {
            values.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    values.push_back(cur);

    const AssocMode mode = parse_mode(o.mode);
    // validate the base config (and the key) before writing anything
    RunConfig base = load_config(o.params_file, o.overrides);
    (void)base;

    Output out(o.out_path);
    CsvWriter csv(out.stream());
    RunConfig cfg0 = load_config(o.params_file, o.overrides);
    write_config_meta(csv, cfg0, "sweep");
    csv.meta("mode", to_string(parse_mode(o.mode)));
    csv.meta("sweep_key", key);
    csv.header(analyze_header(key));
    for (const std::string& v : values) {
        std::vector<std::string> ov = o.overrides;
        ov.push_back(key + "=" + v);
        const RunConfig cfg = load_config(o.params_file, ov);
        csv.row(analyze_row(cfg.params, mode, cfg.ds_model, v));
    }
    out.finish();
    return 0;
}

int cmd_figure(const CommonOpts& o, const std::string& figure_id) {
    const RunConfig cfg = load_config(o.params_file, o.overrides);
    Output out(o.out_path);
    CsvWriter csv(out.stream());
    write_config_meta(csv, cfg, "figure");
    csv.meta("figure", figure_id);

    if (figure_id == "fig2") {
        // rate vs small-BS density, swept through the mean cluster size
        SimConfig sim = validate(make_sim(o, cfg.params, 4000), cfg.params);
        write_sim_meta(csv, sim);
        csv.header({"lambda_s", "rate_mcp_mc", "rate_ppp_baseline_mc", "rate_mcp_analytical"});
        for (int c = 1; c <= 12; ++c) {
            NetworkParams p = cfg.params;
            p.c_bar = static_cast<double>(c);
            SimConfig mcp = sim;
            mcp.sbs_layout = SbsLayout::ClusteredMcp;
            SimConfig ppp = sim;
            ppp.sbs_layout = SbsLayout::IndependentPpp;
            const McEstimate rate_mcp = estimate_rate(p, mcp);
            const McEstimate rate_ppp = estimate_rate(p, ppp);
            const RateReport rr = rate_total(p);
            csv.row({p.lambda_s(), rate_mcp.mean, rate_ppp.mean, rr.rate_total_eq17});
        }
    } else if (figure_id == "fig3") {
        csv.meta("mode", "both");
        csv.header({"bias_ratio", "a_macro_paper", "a_small_paper", "a_macro_consistent",
                    "a_small_consistent"});
        for (int i = 0; i < 20; ++i) {
            const double ratio = std::pow(10.0, -1.0 + 2.0 * i / 19.0);
            NetworkParams p = cfg.params;
            p.b_macro = ratio;
            p.b_small = 1.0;
            const AssociationReport paper = assoc_report(p, AssocMode::PaperFaithful, cfg.ds_model);
            const AssociationReport cons = assoc_report(p, AssocMode::Consistent, cfg.ds_model);
            csv.row({ratio, paper.a_macro, paper.a_small, cons.a_macro, cons.a_small});
        }
    } else if (figure_id == "fig4" || figure_id == "fig5") {
        const bool macro_col = figure_id == "fig4";
        csv.header({"radius_m", "lambda_m", macro_col ? "a_macro" : "a_small"});
        for (double lam_scale : {1.0, 4.0}) {
            for (int i = 1; i <= 10; ++i) {
                NetworkParams p = cfg.params;
                p.lambda_m = cfg.params.lambda_m * lam_scale;
                p.cluster_radius_m = 100.0 * i;
                const AssociationReport rep =
                    assoc_report(p, AssocMode::PaperFaithful, cfg.ds_model);
                csv.row({p.cluster_radius_m, p.lambda_m, macro_col ? rep.a_macro : rep.a_small});
            }
        }
    } else {
        throw ConfigError("--figure expects fig2, fig3, fig4 or fig5, got '" + figure_id + "'");
    }
    out.finish();
    return 0;
}

int cmd_law_dump(const CommonOpts& o, const std::string& law_name, int points) {
    if (points < 2) throw ConfigError("--points must be >= 2");
    const RunConfig cfg = load_config(o.params_file, o.overrides);
    const NetworkParams& p = cfg.params;
    const double R = p.cluster_radius_m;

    ContactLaw law;
    if (law_name == "pair_distance") {
        law = disk_pair_distance_law(R);
    } else if (law_name == "dm_conditional") {
        law = dm_conditional_law(p);
    } else if (law_name == "ds_intracluster") {
        law = ds_intracluster_law(p.c_bar, R);
    } else if (law_name == "contact_ppp") {
        law = contact_law_ppp(p.lambda_m);
        law.hi = 3.0 / std::sqrt(p.lambda_m);
    } else if (law_name == "contact_mcp_global") {
        if (!(p.c_bar > 0)) throw DegenerateCluster("contact_mcp_global needs c_bar > 0");
        law = contact_law_mcp_global(p.lambda_m, p.c_bar);
        law.hi = 3.0 / std::sqrt(p.lambda_m * p.c_bar);
    } else if (law_name == "serving_macro" || law_name == "serving_small") {
        const ServingDistanceLaw sl =
            make_serving_law(law_name == "serving_macro" ? Tier::Macro : Tier::Small, p);
        law.lo = sl.lo;
        law.hi = sl.hi;
        law.pdf = [sl](double x) { return (x < sl.lo || x > sl.hi) ? 0.0 : sl.pdf(x); };
        law.ccdf = [sl](double x) {
            if (x <= sl.lo) return 1.0;
            if (x >= sl.hi) return 0.0;
            return 1.0 - integrate_finite([&sl](double r) { return sl.pdf(r); }, sl.lo, x,
                                          QuadSpec{1e-9, 1e-8, 2000});
        };
    } else {
        throw ConfigError("unknown law: " + law_name);
    }

    Output out(o.out_path);
    CsvWriter csv(out.stream());
    write_config_meta(csv, cfg, "law-dump");
    csv.meta("law", law_name);
    csv.header({"r", "pdf", "ccdf"});
    for (int i = 0; i < points; ++i) {
        const double r = law.lo + (law.hi - law.lo) * i / (points - 1);
        csv.row({r, law.pdf(r), law.ccdf(r)});
    }
    out.finish();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-tier clustered-network model: analytics + Monte Carlo"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string samples_path, pattern_path, sweep_key, sweep_values, figure_id, law_name;
    int law_points = 512;

    auto add_common = [&](CLI::App* cmd, bool with_sim) {
        cmd->add_option("--params", o.params_file, "params file (key = value lines)")->required();
        cmd->add_option("--set", o.overrides, "override: key=value (repeatable)");
        cmd->add_option("--out", o.out_path, "output CSV path (default: stdout)");
        cmd->add_option("--mode", o.mode, "association mode: paper | consistent");
        if (with_sim) {
            cmd->add_option("--seed", o.seed, "master seed");
            cmd->add_option("--reps", o.reps, "number of replications");
            cmd->add_option("--window", o.window, "window half-width, m");
            cmd->add_option("--guard", o.guard, "guard width, m (default: max(2R, 200))");
            cmd->add_option("--threads", o.threads, "worker threads");
            cmd->add_option("--count-mode", o.count_mode, "cluster count: poisson | fixed");
            cmd->add_option("--user-mode", o.user_mode, "typical user: daughter | union");
            cmd->add_option("--layout", o.layout, "small-BS layout: mcp | ppp");
            cmd->add_flag("--ppp-users-in-disks", o.ppp_users_in_disks,
                          "keep users in macro disks under --layout ppp");
        }
    };

    CLI::App* analyze = app.add_subcommand("analyze", "analytical association + rate report");
    add_common(analyze, false);
    CLI::App* associate = app.add_subcommand("associate", "association probabilities and loads");
    add_common(associate, false);
    CLI::App* rate = app.add_subcommand("rate", "average ergodic rate report");
    add_common(rate, false);
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo association + rate");
    add_common(simulate, true);
    simulate->add_option("--samples", samples_path, "dump per-replication samples CSV");
    simulate->add_option("--pattern", pattern_path, "dump one point-pattern realization CSV");
    CLI::App* sweep = app.add_subcommand("sweep", "analyze across values of one config key");
    add_common(sweep, false);
    sweep->add_option("--key", sweep_key, "config key to sweep")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();
    CLI::App* figure = app.add_subcommand("figure", "emit a figure-reproduction CSV");
    add_common(figure, true);
    figure->add_option("--figure", figure_id, "fig2 | fig3 | fig4 | fig5")->required();
    CLI::App* law = app.add_subcommand("law-dump", "dump an analytical law on a grid");
    add_common(law, false);
    law->add_option("--law", law_name,
                    "pair_distance | dm_conditional | ds_intracluster | contact_ppp | "
                    "contact_mcp_global | serving_macro | serving_small")
        ->required();
    law->add_option("--points", law_points, "grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(o);
        if (associate->parsed()) return cmd_associate(o);
        if (rate->parsed()) return cmd_rate(o);
        if (simulate->parsed()) return cmd_simulate(o, samples_path, pattern_path);
        if (sweep->parsed()) return cmd_sweep(o, sweep_key, sweep_values);
        if (figure->parsed()) return cmd_figure(o, figure_id);
        if (law->parsed()) return cmd_law_dump(o, law_name, law_points);
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
