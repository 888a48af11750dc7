#ifndef MCNET_DISTRIBUTIONS_HPP
#define MCNET_DISTRIBUTIONS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "mcnet/errors.hpp"
#include "mcnet/params.hpp"

namespace mcnet {

// An analytical distance law: CCDF/PDF pair with its support. `hi` may be
// infinity for laws on [lo, inf).
struct ContactLaw {
    std::function<double(double)> ccdf;
    std::function<double(double)> pdf;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

// ---- contact distances of the whole fields -------------------------------

// Nearest-point distance of a homogeneous PPP from a uniform location.
inline double ccdf_contact_ppp(double r, double lambda) {
    if (r < 0) throw ValidationError("ccdf_contact_ppp: r must be >= 0");
    return std::exp(-M_PI * lambda * r * r);
}

// Nearest-daughter distance of the clustered field from a uniform location of
// the plane; equals the PPP law at the plane-wide daughter density.
inline double ccdf_contact_mcp_global(double r, double lambda_p, double c_bar) {
    if (r < 0) throw ValidationError("ccdf_contact_mcp_global: r must be >= 0");
    return std::exp(-M_PI * lambda_p * c_bar * r * r);
}

// Probability that a uniform location lies within distance R of some macro BS.
inline double prob_user_in_disk(const NetworkParams& p) {
    const double R = p.cluster_radius_m;
    return 1.0 - std::exp(-M_PI * p.lambda_m * R * R);
}

// ---- macro contact distance conditioned on lying inside a disk ------------

inline double ccdf_dm_conditional(double r, const NetworkParams& p) {
    const double R = p.cluster_radius_m;
    if (r <= 0) return 1.0;
    if (r >= R) return 0.0;
    const double b = M_PI * p.lambda_m;
    return (1.0 - std::exp(-b * (R * R - r * r))) / (1.0 - std::exp(-b * R * R));
}

inline double pdf_dm_conditional(double r, const NetworkParams& p) {
    const double R = p.cluster_radius_m;
    if (r < 0 || r > R) return 0.0;
    const double b = M_PI * p.lambda_m;
    return 2.0 * b * r * std::exp(-b * (R * R - r * r)) / (1.0 - std::exp(-b * R * R));
}

// ---- distance between two uniform points of a disk ------------------------

inline double pair_distance_pdf(double l, double R) {
    if (l <= 0 || l >= 2.0 * R) return 0.0;
    const double x = std::clamp(l / (2.0 * R), 0.0, 1.0);
    const double rad = std::sqrt(std::clamp(1.0 - x * x, 0.0, 1.0));
    return (2.0 * l / (R * R)) * ((2.0 / M_PI) * std::acos(x) - (l / (M_PI * R)) * rad);
}

inline double pair_distance_cdf(double l, double R) {
    if (l <= 0) return 0.0;
    if (l >= 2.0 * R) return 1.0;
    const double x = std::clamp(l / (2.0 * R), 0.0, 1.0);
    const double rad = std::sqrt(std::clamp(1.0 - x * x, 0.0, 1.0));
    const double v = 1.0 + (2.0 / M_PI) * (l * l / (R * R) - 1.0) * std::acos(x) -
                     (l / (M_PI * R)) * (1.0 + l * l / (2.0 * R * R)) * rad;
    return std::clamp(v, 0.0, 1.0);
}

inline ContactLaw disk_pair_distance_law(double R) {
    if (!(R > 0)) throw ValidationError("disk_pair_distance_law: R must be > 0");
    ContactLaw law;
    law.lo = 0.0;
    law.hi = 2.0 * R;
    law.ccdf = [R](double l) { return 1.0 - pair_distance_cdf(l, R); };
    law.pdf = [R](double l) { return pair_distance_pdf(l, R); };
    return law;
}

// ---- minimum distance to the daughters of the user's own cluster ----------
// Minimum of c_bar pair distances treated as i.i.d.; c_bar may be any real
// >= 1 (the expression stays a valid density even between integers).

inline double ccdf_ds_intracluster(double r, double c_bar, double R) {
    if (c_bar < 1) throw DegenerateCluster("ccdf_ds_intracluster: requires c_bar >= 1");
    if (r <= 0) return 1.0;
    if (r >= 2.0 * R) return 0.0;
    const double tail = std::max(1.0 - pair_distance_cdf(r, R), 0.0);
    return std::pow(tail, c_bar);
}

inline double pdf_ds_intracluster(double r, double c_bar, double R) {
    if (c_bar < 1) throw DegenerateCluster("pdf_ds_intracluster: requires c_bar >= 1");
    if (r <= 0 || r >= 2.0 * R) return 0.0;
    const double tail = std::max(1.0 - pair_distance_cdf(r, R), 0.0);
    return c_bar * std::pow(tail, c_bar - 1.0) * pair_distance_pdf(r, R);
}

// ---- law factories for dumps and tests ------------------------------------

inline ContactLaw contact_law_ppp(double lambda) {
    ContactLaw law;
    law.lo = 0.0;
    law.hi = std::numeric_limits<double>::infinity();
    law.ccdf = [lambda](double r) { return ccdf_contact_ppp(r, lambda); };
    law.pdf = [lambda](double r) {
        return r < 0 ? 0.0 : 2.0 * M_PI * lambda * r * std::exp(-M_PI * lambda * r * r);
    };
    return law;
}

inline ContactLaw contact_law_mcp_global(double lambda_p, double c_bar) {
    return contact_law_ppp(lambda_p * c_bar);
}

inline ContactLaw dm_conditional_law(const NetworkParams& p) {
    ContactLaw law;
    law.lo = 0.0;
    law.hi = p.cluster_radius_m;
    law.ccdf = [p](double r) { return ccdf_dm_conditional(r, p); };
    law.pdf = [p](double r) { return pdf_dm_conditional(r, p); };
    return law;
}

inline ContactLaw ds_intracluster_law(double c_bar, double R) {
    if (c_bar < 1) throw DegenerateCluster("ds_intracluster_law: requires c_bar >= 1");
    ContactLaw law;
    law.lo = 0.0;
    law.hi = 2.0 * R;
    law.ccdf = [c_bar, R](double r) { return ccdf_ds_intracluster(r, c_bar, R); };
    law.pdf = [c_bar, R](double r) { return pdf_ds_intracluster(r, c_bar, R); };
    return law;
}

} // namespace mcnet

#endif
