#ifndef MCNET_MONTECARLO_HPP
#define MCNET_MONTECARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "mcnet/association.hpp"
#include "mcnet/errors.hpp"
#include "mcnet/geometry.hpp"
#include "mcnet/params.hpp"
#include "mcnet/rng.hpp"

namespace mcnet {

// Layout of the small tier in a simulation run: the clustered field of the
// model, or an independent plane PPP of the same density (the classical
// two-tier baseline, where the typical user is uniform over the plane rather
// than confined to cluster disks).
enum class SbsLayout { ClusteredMcp, IndependentPpp };

inline const char* to_string(SbsLayout l) {
    return l == SbsLayout::ClusteredMcp ? "clustered_mcp" : "independent_ppp";
}

struct SimConfig {
    double window_half_width = 10000.0;
    double guard_width = 0.0; // 0 = auto: max(2R, 200 m)
    long n_replications = 10000;
    std::uint64_t master_seed = 1;
    ClusterCountMode cluster_count_mode = ClusterCountMode::Poisson;
    UserMode user_mode = UserMode::DaughterStyle;
    SbsLayout sbs_layout = SbsLayout::ClusteredMcp;
    // For the IndependentPpp layout only: keep users confined to macro disks
    // instead of uniform over the window.
    bool baseline_users_in_disks = false;
    int threads = 1;
    bool pin_fading = false; // test hook: every fading gain pinned to 1
};

// Fills defaults and checks the invariants: guard at least one cluster
// diameter, window large enough for ~400 macro BSs in expectation.
inline SimConfig validate(const SimConfig& s, const NetworkParams& p) {
    SimConfig out = s;
    if (out.guard_width == 0.0) out.guard_width = std::max(2.0 * p.cluster_radius_m, 200.0);
    if (out.guard_width < 2.0 * p.cluster_radius_m)
        throw ValidationError("guard_width: must be at least 2 * cluster_radius_m");
    if (out.n_replications < 1) throw ValidationError("n_replications: must be >= 1");
    if (out.threads < 1) throw ValidationError("threads: must be >= 1");
    const double area = 4.0 * out.window_half_width * out.window_half_width;
    if (p.lambda_m * area < 400.0)
        throw ValidationError("window_half_width: expected macro count must be >= 400");
    if (out.guard_width >= out.window_half_width)
        throw ValidationError("guard_width: must be smaller than window_half_width");
    return out;
}

struct SampleRecord {
    double d_macro = 0.0;
    std::optional<double> d_small;
    Tier serving = Tier::Macro;
    double sinr = 0.0;
    double rate_nats = 0.0;
    long replication_index = 0;
    int redraws = 0;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n = 0;
    std::uint64_t seed = 0;
};

// One end-to-end replication: sample the geometry, place the typical user,
// associate by the biased-power rule on the per-tier nearest distances, draw
// per-link Rayleigh fading, and score ln(1 + SINR). Deterministic given
// (master_seed, index); an empty interior pattern triggers a redraw on the
// next sub-seed.
inline SampleRecord run_replication(const NetworkParams& p, const SimConfig& sim, long index) {
    const Window window{sim.window_half_width};
    const Window interior{sim.window_half_width - sim.guard_width};
    const double R = p.cluster_radius_m;

    for (int attempt = 0; attempt < 64; ++attempt) {
        RngStream rng = RngStream::for_replication(sim.master_seed, static_cast<std::uint64_t>(index),
                                                   static_cast<std::uint64_t>(attempt));

        PointPattern macros = sample_ppp(p.lambda_m, window, rng);

        PointPattern smalls;
        if (sim.sbs_layout == SbsLayout::ClusteredMcp) {
            if (p.c_bar > 0.0)
                smalls = sample_mcp(macros, p.c_bar, R, sim.cluster_count_mode, rng);
        } else {
            smalls = sample_ppp(p.lambda_s(), window, rng);
            for (Point& pt : smalls.points) pt.tier = Tier::Small;
        }

        const bool uniform_user =
            sim.sbs_layout == SbsLayout::IndependentPpp && !sim.baseline_users_in_disks;

        UserSample user;
        if (uniform_user) {
            if (macros.empty()) continue;
            user.x = rng.uniform(-interior.half_width, interior.half_width);
            user.y = rng.uniform(-interior.half_width, interior.half_width);
            user.parent_index = -1;
        } else {
            try {
                user = sample_typical_user(macros, R, sim.user_mode, rng, interior);
            } catch (const EmptyPattern&) {
                continue; // no eligible parent; redraw with the next sub-seed
            }
        }

        // Distances and argmins in one pass per tier.
        std::size_t macro_arg = 0;
        double macro_d2 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < macros.points.size(); ++i) {
            const double dx = macros.points[i].x - user.x;
            const double dy = macros.points[i].y - user.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < macro_d2) {
                macro_d2 = d2;
                macro_arg = i;
            }
        }
        std::size_t small_arg = 0;
        double small_d2 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < smalls.points.size(); ++i) {
            const double dx = smalls.points[i].x - user.x;
            const double dy = smalls.points[i].y - user.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < small_d2) {
                small_d2 = d2;
                small_arg = i;
            }
        }

        SampleRecord rec;
        rec.replication_index = index;
        rec.redraws = attempt;
        rec.d_macro = std::sqrt(macro_d2);
        const bool has_small = !smalls.empty();
        if (has_small) rec.d_small = std::sqrt(small_d2);

        const double pw_macro = biased_power(Tier::Macro, rec.d_macro, p);
        const double pw_small = has_small ? biased_power(Tier::Small, *rec.d_small, p) : 0.0;
        rec.serving = pw_macro >= pw_small ? Tier::Macro : Tier::Small; // ties: macro

        // Per-link fading, drawn in pattern order for reproducibility.
        double signal = 0.0;
        double interference = 0.0;
        for (std::size_t i = 0; i < macros.points.size(); ++i) {
            const double h = sim.pin_fading ? 1.0 : rng.exponential();
            const double dx = macros.points[i].x - user.x;
            const double dy = macros.points[i].y - user.y;
            const double d2 = dx * dx + dy * dy;
            const double rx = p.p_macro_w * h * std::pow(d2, -p.alpha_macro / 2.0);
            if (rec.serving == Tier::Macro && i == macro_arg)
                signal = rx;
            else
                interference += rx;
        }
        for (std::size_t i = 0; i < smalls.points.size(); ++i) {
            const double h = sim.pin_fading ? 1.0 : rng.exponential();
            const double dx = smalls.points[i].x - user.x;
            const double dy = smalls.points[i].y - user.y;
            const double d2 = dx * dx + dy * dy;
            const double rx = p.p_small_w * h * std::pow(d2, -p.alpha_small / 2.0);
            if (rec.serving == Tier::Small && i == small_arg)
                signal = rx;
            else
                interference += rx;
        }

        rec.sinr = signal / (interference + p.noise_w);
        rec.rate_nats = std::log1p(rec.sinr);
        return rec;
    }
    throw EmptyPattern("run_replication: no macro BS after 64 redraws");
}

// Runs replications 0..n-1, optionally across threads. Records land in index
// order, so estimates do not depend on worker count or scheduling.
inline std::vector<SampleRecord> run_records(const NetworkParams& p, const SimConfig& sim) {
    std::vector<SampleRecord> records(static_cast<std::size_t>(sim.n_replications));
    const long n = sim.n_replications;
    const int threads = std::max(1, sim.threads);
    if (threads == 1) {
        for (long i = 0; i < n; ++i) records[static_cast<std::size_t>(i)] = run_replication(p, sim, i);
        return records;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            for (long i = w; i < n; i += threads)
                records[static_cast<std::size_t>(i)] = run_replication(p, sim, i);
        });
    }
    for (auto& th : pool) th.join();
    return records;
}

// Fraction of replications served by each tier, with binomial standard error.
inline std::pair<McEstimate, McEstimate> estimate_association(const NetworkParams& p,
                                                              const SimConfig& sim_in) {
    if (sim_in.n_replications < 1000)
        throw ValidationError("estimate_association: n_replications must be >= 1000");
    const SimConfig sim = validate(sim_in, p);
    const std::vector<SampleRecord> records = run_records(p, sim);

    long macro_wins = 0;
    for (const SampleRecord& r : records)
        if (r.serving == Tier::Macro) ++macro_wins;
    const double n = static_cast<double>(records.size());
    const double pm = static_cast<double>(macro_wins) / n;
    const double se = std::sqrt(pm * (1.0 - pm) / n);

    McEstimate am{pm, se, sim.n_replications, sim.master_seed};
    McEstimate as{1.0 - pm, se, sim.n_replications, sim.master_seed};
    return {am, as};
}

// Mean of ln(1 + SINR) across replications.
inline McEstimate estimate_rate(const NetworkParams& p, const SimConfig& sim_in) {
    if (sim_in.n_replications < 1000)
        throw ValidationError("estimate_rate: n_replications must be >= 1000");
    const SimConfig sim = validate(sim_in, p);
    const std::vector<SampleRecord> records = run_records(p, sim);

    double sum = 0.0;
    for (const SampleRecord& r : records) sum += r.rate_nats;
    const double n = static_cast<double>(records.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (const SampleRecord& r : records) ss += (r.rate_nats - mean) * (r.rate_nats - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    return {mean, sd / std::sqrt(n), sim.n_replications, sim.master_seed};
}

// Right-continuous empirical CCDF of a sample set.
class EmpiricalCcdf {
  public:
    explicit EmpiricalCcdf(std::vector<double> samples) : sorted_(std::move(samples)) {
        if (sorted_.empty()) throw EmptyInput("EmpiricalCcdf: no samples");
        std::sort(sorted_.begin(), sorted_.end());
    }

    double operator()(double x) const {
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return static_cast<double>(sorted_.end() - it) / static_cast<double>(sorted_.size());
    }

    const std::vector<double>& sorted() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

// Kolmogorov-Smirnov distance between a sample set and an analytical CDF.
inline double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw EmptyInput("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

} // namespace mcnet

#endif
