#ifndef MCNET_GEOMETRY_HPP
#define MCNET_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "mcnet/errors.hpp"
#include "mcnet/rng.hpp"

namespace mcnet {

enum class Tier { Macro, Small };

inline const char* to_string(Tier t) { return t == Tier::Macro ? "macro" : "small"; }

// Square observation window [-half_width, half_width]^2.
struct Window {
    double half_width = 0.0;

    double area() const { return 4.0 * half_width * half_width; }
    bool contains(double x, double y, double margin = 0.0) const {
        const double lim = half_width - margin;
        return std::abs(x) <= lim && std::abs(y) <= lim;
    }
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    Tier tier = Tier::Macro;
    std::int64_t parent_index = -1; // index into the parent pattern, Small tier only
};

struct PointPattern {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

// How many daughters a cluster gets: Poisson(c_bar) draws, or a fixed count
// (c_bar rounded to the nearest integer).
enum class ClusterCountMode { Poisson, Fixed };

inline const char* to_string(ClusterCountMode m) {
    return m == ClusterCountMode::Poisson ? "poisson" : "fixed";
}

enum class UserMode { DaughterStyle, UnionUniform };

inline const char* to_string(UserMode m) {
    return m == UserMode::DaughterStyle ? "daughter_style" : "union_uniform";
}

struct UserSample {
    double x = 0.0;
    double y = 0.0;
    std::int64_t parent_index = -1; // -1 when the mode does not bind a parent
};

namespace detail {

// Area-uniform point of the radius-r disk centred at (cx, cy): radius r*sqrt(u).
inline void uniform_in_disk(double cx, double cy, double r, RngStream& rng, double& x,
                            double& y) {
    const double rad = r * std::sqrt(rng.uniform());
    const double ang = rng.uniform(0.0, 2.0 * M_PI);
    x = cx + rad * std::cos(ang);
    y = cy + rad * std::sin(ang);
}

} // namespace detail

// Homogeneous Poisson process of the given density on the window; all points
// tagged Macro.
inline PointPattern sample_ppp(double lambda, const Window& w, RngStream& rng) {
    if (lambda < 0) throw ValidationError("sample_ppp: density must be >= 0");
    PointPattern out;
    const long n = rng.poisson(lambda * w.area());
    out.points.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        Point p;
        p.x = rng.uniform(-w.half_width, w.half_width);
        p.y = rng.uniform(-w.half_width, w.half_width);
        p.tier = Tier::Macro;
        out.points.push_back(p);
    }
    return out;
}

// Daughter field of a cluster process: each parent receives a count drawn per
// `mode`, scattered area-uniformly on the radius-r disk around it. Points are
// tagged Small and remember their parent.
inline PointPattern sample_mcp(const PointPattern& parents, double c_bar, double r,
                               ClusterCountMode mode, RngStream& rng) {
    if (!(r > 0)) throw ValidationError("sample_mcp: cluster radius must be > 0");
    if (c_bar < 0) throw ValidationError("sample_mcp: c_bar must be >= 0");
    PointPattern out;
    const long fixed_count = std::lround(c_bar);
    for (std::size_t i = 0; i < parents.points.size(); ++i) {
        const long n = mode == ClusterCountMode::Poisson ? rng.poisson(c_bar) : fixed_count;
        for (long k = 0; k < n; ++k) {
            Point d;
            detail::uniform_in_disk(parents.points[i].x, parents.points[i].y, r, rng, d.x, d.y);
            d.tier = Tier::Small;
            d.parent_index = static_cast<std::int64_t>(i);
            out.points.push_back(d);
        }
    }
    return out;
}

// Typical-user placement conditioned on lying inside a cluster disk.
//   DaughterStyle - pick an eligible parent uniformly, then a uniform point of
//                   its disk. Eligible parents lie inside the given interior
//                   window so the whole disk is observed.
//   UnionUniform  - rejection-sample a uniform point of the interior window
//                   until it falls inside at least one eligible parent's disk.
inline UserSample sample_typical_user(const PointPattern& parents, double r, UserMode mode,
                                      RngStream& rng, const Window& interior) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < parents.points.size(); ++i)
        if (interior.contains(parents.points[i].x, parents.points[i].y)) eligible.push_back(i);
    if (eligible.empty()) throw EmptyPattern("sample_typical_user: no eligible parent in interior window");

    UserSample u;
    if (mode == UserMode::DaughterStyle) {
        const std::size_t pick =
            eligible[static_cast<std::size_t>(rng.uniform() * static_cast<double>(eligible.size()))];
        detail::uniform_in_disk(parents.points[pick].x, parents.points[pick].y, r, rng, u.x, u.y);
        u.parent_index = static_cast<std::int64_t>(pick);
        return u;
    }

    // UnionUniform: acceptance probability is at least one disk over the
    // window, so cap the attempts defensively.
    for (long attempt = 0; attempt < 1000000; ++attempt) {
        const double x = rng.uniform(-interior.half_width, interior.half_width);
        const double y = rng.uniform(-interior.half_width, interior.half_width);
        for (std::size_t i : eligible) {
            const double dx = x - parents.points[i].x;
            const double dy = y - parents.points[i].y;
            if (dx * dx + dy * dy <= r * r) {
                u.x = x;
                u.y = y;
                u.parent_index = static_cast<std::int64_t>(i);
                return u;
            }
        }
    }
    throw EmptyPattern("sample_typical_user: rejection sampling failed to hit a disk");
}

// Euclidean distance from the query to the nearest pattern point, optionally
// restricted to one tier. Linear scan.
inline double nearest_distance(double qx, double qy, const PointPattern& pattern,
                               std::optional<Tier> tier_filter = std::nullopt) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& p : pattern.points) {
        if (tier_filter && p.tier != *tier_filter) continue;
        const double dx = p.x - qx;
        const double dy = p.y - qy;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best) best = d2;
    }
    if (!std::isfinite(best)) throw EmptyPattern("nearest_distance: no point matches the tier filter");
    return std::sqrt(best);
}

// CSV dump, one point per row: x_m,y_m,tier,parent_index.
inline void write_pattern_csv(std::ostream& os, const PointPattern& pattern) {
    os << "x_m,y_m,tier,parent_index\n";
    char buf[128];
    for (const Point& p : pattern.points) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%s,%lld", p.x, p.y, to_string(p.tier),
                      static_cast<long long>(p.parent_index));
        os << buf << '\n';
    }
}

} // namespace mcnet

#endif
