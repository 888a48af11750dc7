#ifndef MCNET_ASSOCIATION_HPP
#define MCNET_ASSOCIATION_HPP

#include <cmath>
#include <functional>

#include "mcnet/distributions.hpp"
#include "mcnet/errors.hpp"
#include "mcnet/geometry.hpp"
#include "mcnet/params.hpp"
#include "mcnet/quadrature.hpp"

namespace mcnet {

// Tolerances for the association integrals; tight enough that the joint
// lambda_m R^2 scaling holds to 1e-9 between two evaluations.
inline QuadSpec assoc_quad_defaults() { return QuadSpec{1e-12, 1e-11, 2000}; }

// Long-term averaged biased received power P * d^-alpha * B (fading averaged
// out).
inline double biased_power(Tier tier, double distance, const NetworkParams& p) {
    if (!(distance > 0)) throw ZeroDistance("biased_power: distance must be > 0");
    if (tier == Tier::Macro) return p.p_macro_w * std::pow(distance, -p.alpha_macro) * p.b_macro;
    return p.p_small_w * std::pow(distance, -p.alpha_small) * p.b_small;
}

namespace detail {

// (P_m B_m) / (P_s B_s)
inline double macro_advantage(const NetworkParams& p) {
    return (p.p_macro_w * p.b_macro) / (p.p_small_w * p.b_small);
}

} // namespace detail

// Probability that the macro tier offers the larger biased power, with the
// small-tier distance modelled per ds_model. With equal exponents and the
// GlobalMcp law this has a closed form; otherwise it is a 1-D quadrature of
// the conditional macro-distance density against the chosen small-tier CCDF.
inline double assoc_prob_macro(const NetworkParams& p, DsModel ds_model = DsModel::GlobalMcp,
                               const QuadSpec& spec = assoc_quad_defaults()) {
    const double R = p.cluster_radius_m;
    const double G = detail::macro_advantage(p);
    const bool equal_alpha = p.alpha_macro == p.alpha_small;

    if (ds_model == DsModel::GlobalMcp && equal_alpha) {
        const double beta = M_PI * p.lambda_m * R * R;
        const double cg = p.c_bar * std::pow(G, -2.0 / p.alpha_macro);
        const double denom_base = 1.0 - std::exp(-beta);
        if (std::abs(cg - 1.0) < 1e-12) return beta * std::exp(-beta) / denom_base;
        return (1.0 - std::exp(-beta * (cg - 1.0))) * std::exp(-beta) / ((cg - 1.0) * denom_base);
    }

    // threshold for the small-tier distance given the macro candidate at r
    const double pre = std::pow(G, -1.0 / p.alpha_small);
    const double expo = p.alpha_macro / p.alpha_small;
    auto threshold = [pre, expo](double r) { return pre * std::pow(r, expo); };

    std::function<double(double)> ds_ccdf;
    if (ds_model == DsModel::GlobalMcp) {
        const double lp = p.lambda_m, cb = p.c_bar;
        ds_ccdf = [lp, cb](double x) { return ccdf_contact_mcp_global(x, lp, cb); };
    } else {
        if (p.c_bar < 1) throw DegenerateCluster("assoc_prob_macro: IntraCluster needs c_bar >= 1");
        const double cb = p.c_bar;
        ds_ccdf = [cb, R](double x) { return ccdf_ds_intracluster(x, cb, R); };
    }

    auto integrand = [&](double r) { return ds_ccdf(threshold(r)) * pdf_dm_conditional(r, p); };
    return integrate_finite(integrand, 0.0, R, spec);
}

// Probability that the small tier wins: quadrature of the unconditional PPP
// macro CCDF against the intra-cluster minimum-distance density, over (0, 2R).
// Substituting r = 2R u fixes the quadrature domain at [0, 1].
inline double assoc_prob_small(const NetworkParams& p,
                               const QuadSpec& spec = assoc_quad_defaults()) {
    if (p.c_bar < 1) throw DegenerateCluster("assoc_prob_small: requires c_bar >= 1");
    const double R = p.cluster_radius_m;
    const double G = detail::macro_advantage(p); // small side sees 1/G
    const double pre = std::pow(1.0 / G, -2.0 / p.alpha_macro);
    const double expo = 2.0 * p.alpha_small / p.alpha_macro;
    const double b = M_PI * p.lambda_m;

    auto integrand = [&](double u) {
        const double r = 2.0 * R * u;
        return 2.0 * R * std::exp(-b * pre * std::pow(r, expo)) *
               pdf_ds_intracluster(r, p.c_bar, R);
    };
    return integrate_finite(integrand, 0.0, 1.0, spec);
}

enum class AssocMode { PaperFaithful, Consistent };

inline const char* to_string(AssocMode m) {
    return m == AssocMode::PaperFaithful ? "paper_faithful" : "consistent";
}

enum class Closure { ClosedForm, Quadrature };

inline const char* to_string(Closure c) {
    return c == Closure::ClosedForm ? "closed_form" : "quadrature";
}

struct AssociationReport {
    double a_macro = 0.0;
    double a_small = 0.0;
    double sum = 0.0; // a_macro + a_small as reported (1 exactly in Consistent mode)
    DsModel ds_model_macro = DsModel::GlobalMcp;
    DsModel ds_model_small = DsModel::IntraCluster;
    double load_macro = 0.0; // mean users per macro BS
    double load_small = 0.0; // mean users per small BS
    AssocMode mode = AssocMode::PaperFaithful;
    Closure closure = Closure::Quadrature;
};

// Tier probabilities plus per-BS loads.
//
// PaperFaithful evaluates both tier formulas independently; their sum is
// reported and need not equal 1 (the two sides model the small-tier distance
// with different laws). Consistent mode enforces complementarity by anchoring
// on the side whose laws match ds_model and taking the complement for the
// other: GlobalMcp anchors the small-tier probability, IntraCluster anchors
// the macro-tier probability (whose integrand then uses the same own-cluster
// law the Monte Carlo geometry realises).
inline AssociationReport assoc_report(const NetworkParams& p, AssocMode mode,
                                      DsModel ds_model = DsModel::GlobalMcp,
                                      const QuadSpec& spec = assoc_quad_defaults()) {
    AssociationReport rep;
    rep.mode = mode;
    rep.ds_model_macro = ds_model;
    rep.ds_model_small = DsModel::IntraCluster;
    const bool equal_alpha = p.alpha_macro == p.alpha_small;
    rep.closure = (equal_alpha && ds_model == DsModel::GlobalMcp) ? Closure::ClosedForm
                                                                  : Closure::Quadrature;

    if (p.c_bar == 0.0) {
        rep.a_macro = 1.0;
        rep.a_small = 0.0;
    } else if (mode == AssocMode::PaperFaithful) {
        rep.a_macro = assoc_prob_macro(p, ds_model, spec);
        rep.a_small = assoc_prob_small(p, spec);
    } else if (ds_model == DsModel::GlobalMcp) {
        rep.a_small = assoc_prob_small(p, spec);
        rep.a_macro = 1.0 - rep.a_small;
    } else {
        rep.a_macro = assoc_prob_macro(p, DsModel::IntraCluster, spec);
        rep.a_small = 1.0 - rep.a_macro;
    }
    rep.sum = rep.a_macro + rep.a_small;

    rep.load_macro = rep.a_macro * p.lambda_u / p.lambda_m;
    const double lambda_s = p.lambda_s();
    rep.load_small = (lambda_s > 0.0 && rep.a_small > 0.0) ? rep.a_small * p.lambda_u / lambda_s : 0.0;
    return rep;
}

// Serving-distance density of a tier: the tier's winning-event kernel
// normalised by its association probability.
struct ServingDistanceLaw {
    Tier tier = Tier::Macro;
    double norm = 1.0; // association probability of the tier
    double lo = 0.0;
    double hi = 0.0;
    std::function<double(double)> unnorm;

    double pdf(double x) const { return unnorm(x) / norm; }
};

inline ServingDistanceLaw make_serving_law(Tier tier, const NetworkParams& p,
                                           const QuadSpec& spec = assoc_quad_defaults()) {
    ServingDistanceLaw law;
    law.tier = tier;
    const double R = p.cluster_radius_m;
    const double G = detail::macro_advantage(p);

    if (tier == Tier::Macro) {
        law.lo = 0.0;
        law.hi = R;
        const double pre = std::pow(G, -1.0 / p.alpha_small);
        const double expo = p.alpha_macro / p.alpha_small;
        const double lp = p.lambda_m, cb = p.c_bar;
        NetworkParams params = p;
        law.unnorm = [params, pre, expo, lp, cb](double x) {
            const double t = pre * std::pow(x, expo);
            return ccdf_contact_mcp_global(t, lp, cb) * pdf_dm_conditional(x, params);
        };
        law.norm = assoc_prob_macro(p, DsModel::GlobalMcp, spec);
    } else {
        law.lo = 0.0;
        law.hi = 2.0 * R;
        const double pre = std::pow(1.0 / G, -2.0 / p.alpha_macro);
        const double expo = 2.0 * p.alpha_small / p.alpha_macro;
        const double b = M_PI * p.lambda_m;
        const double cb = p.c_bar;
        law.unnorm = [pre, expo, b, cb, R](double x) {
            return std::exp(-b * pre * std::pow(x, expo)) * pdf_ds_intracluster(x, cb, R);
        };
        law.norm = assoc_prob_small(p, spec);
    }
    if (!(law.norm > 0.0))
        throw DivisionByZero("make_serving_law: association probability is zero");
    return law;
}

inline double pdf_serving_distance(double x, Tier tier, const NetworkParams& p,
                                   const QuadSpec& spec = assoc_quad_defaults()) {
    const ServingDistanceLaw law = make_serving_law(tier, p, spec);
    if (x < law.lo || x > law.hi) return 0.0;
    return law.pdf(x);
}

} // namespace mcnet

#endif
