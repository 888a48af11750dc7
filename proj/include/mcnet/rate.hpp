#ifndef MCNET_RATE_HPP
#define MCNET_RATE_HPP

#include <cmath>

#include "mcnet/association.hpp"
#include "mcnet/distributions.hpp"
#include "mcnet/errors.hpp"
#include "mcnet/params.hpp"
#include "mcnet/quadrature.hpp"

namespace mcnet {

// Power / exponent / bias of an interfering tier relative to the serving one.
struct HatRatios {
    double p_hat = 1.0;
    double alpha_hat = 1.0;
    double b_hat = 1.0;
};

inline double tier_power(const NetworkParams& p, Tier t) {
    return t == Tier::Macro ? p.p_macro_w : p.p_small_w;
}
inline double tier_alpha(const NetworkParams& p, Tier t) {
    return t == Tier::Macro ? p.alpha_macro : p.alpha_small;
}
inline double tier_bias(const NetworkParams& p, Tier t) {
    return t == Tier::Macro ? p.b_macro : p.b_small;
}
inline double tier_density(const NetworkParams& p, Tier t) {
    return t == Tier::Macro ? p.lambda_m : p.lambda_s();
}

inline HatRatios hat_ratios(const NetworkParams& p, Tier interferer, Tier serving) {
    HatRatios h;
    h.p_hat = tier_power(p, interferer) / tier_power(p, serving);
    h.alpha_hat = tier_alpha(p, interferer) / tier_alpha(p, serving);
    h.b_hat = tier_bias(p, interferer) / tier_bias(p, serving);
    return h;
}

// Nested tolerances for the rate double integral: the outer distance integral
// runs looser than the 1-D defaults because cost multiplies through nesting.
struct RateQuad {
    QuadSpec outer{1e-6, 1e-6, 2000};
    QuadSpec inner{1e-8, 1e-8, 2000};
    QuadSpec z{1e-10, 1e-9, 2000};
};

// Normalised interference integral
//   Z(gamma, alpha, b_hat) = gamma^(2/alpha) * Int_{(b_hat/gamma)^(2/alpha)}^inf du / (1 + u^(alpha/2)).
// Zero at gamma = 0 (the lower limit runs away faster than the prefactor grows).
inline double z_factor(double gamma, double alpha_i, double b_hat_i, const QuadSpec& spec = {}) {
    if (gamma < 0) throw ValidationError("z_factor: gamma must be >= 0");
    if (!(alpha_i > 2)) throw ValidationError("z_factor: alpha must exceed 2");
    if (!(b_hat_i > 0)) throw ValidationError("z_factor: b_hat must be > 0");
    if (gamma == 0.0) return 0.0;
    const double lower = std::pow(b_hat_i / gamma, 2.0 / alpha_i);
    const double half_exp = alpha_i / 2.0;
    auto integrand = [half_exp](double u) { return 1.0 / (1.0 + std::pow(u, half_exp)); };
    return std::pow(gamma, 2.0 / alpha_i) * integrate_semi_infinite(integrand, lower, spec);
}

// Laplace transform of tier i's interference, evaluated at the rate-threshold
// argument (e^t - 1) P_k^-1 x^alpha_k for a user served by tier k at distance
// x. The small tier is treated as a plane-wide homogeneous field of density
// lambda_m * c_bar.
inline double laplace_interference(Tier interferer, Tier serving, double x, double t,
                                   const NetworkParams& p, const QuadSpec& zspec = {}) {
    if (!(x > 0)) throw ValidationError("laplace_interference: x must be > 0");
    if (t < 0) throw ValidationError("laplace_interference: t must be >= 0");
    if (t == 0.0) return 1.0;
    const HatRatios h = hat_ratios(p, interferer, serving);
    const double lambda_i = tier_density(p, interferer);
    if (lambda_i == 0.0) return 1.0;
    const double alpha_i = tier_alpha(p, interferer);
    const double gamma = std::expm1(t);
    const double z = z_factor(gamma, alpha_i, h.b_hat, zspec);
    const double expo = -M_PI * lambda_i * std::pow(h.p_hat, 2.0 / alpha_i) *
                        std::pow(x, 2.0 / h.alpha_hat) * z;
    return std::exp(expo);
}

namespace detail {

// log of the product of both tiers' Laplace terms (plus the noise factor when
// N0 > 0) at (x, t) for a user served by tier k.
inline double log_laplace_product(Tier serving, double x, double t, const NetworkParams& p,
                                  const QuadSpec& zspec) {
    const double gamma = std::expm1(t);
    double expo = 0.0;
    for (Tier i : {Tier::Macro, Tier::Small}) {
        const double lambda_i = tier_density(p, i);
        if (lambda_i == 0.0) continue;
        const HatRatios h = hat_ratios(p, i, serving);
        const double alpha_i = tier_alpha(p, i);
        expo -= M_PI * lambda_i * std::pow(h.p_hat, 2.0 / alpha_i) *
                std::pow(x, 2.0 / h.alpha_hat) * z_factor(gamma, alpha_i, h.b_hat, zspec);
    }
    if (p.noise_w > 0.0) {
        const double alpha_k = tier_alpha(p, serving);
        expo -= gamma * p.noise_w * std::pow(x, alpha_k) / tier_power(p, serving);
    }
    return expo;
}

// Integrand values below 1e-12 are cut to zero before the semi-infinite
// mapping; the product decays super-exponentially through Z.
inline constexpr double kLogCutoff = -27.631021115928547; // ln(1e-12)

} // namespace detail

// Average ergodic rate (nats per channel use) of a user served by tier k:
// the inner threshold integral of the interference Laplace product, averaged
// over the tier's serving-distance law.
inline double rate_tier(Tier k, const NetworkParams& p, const RateQuad& q = {}) {
    const ServingDistanceLaw law = make_serving_law(k, p);

    auto outer = [&](double x) {
        const double weight = law.unnorm(x);
        if (weight == 0.0) return 0.0;
        auto inner = [&](double t) {
            const double expo = detail::log_laplace_product(k, x, t, p, q.z);
            if (expo < detail::kLogCutoff) return 0.0;
            return std::exp(expo);
        };
        return weight * integrate_semi_infinite(inner, 0.0, q.inner);
    };
    return integrate_finite(outer, law.lo, law.hi, q.outer) / law.norm;
}

// C_j(t) of the direct whole-network expression: the tier-j coefficient
// collecting the bias term and the Z integral.
inline double interference_coefficient(double t, Tier j, Tier k, const NetworkParams& p,
                                       const QuadSpec& zspec = {}) {
    const HatRatios h = hat_ratios(p, j, k);
    const double alpha_j = tier_alpha(p, j);
    const double lambda_j = tier_density(p, j);
    const double gamma = std::expm1(t);
    return lambda_j * std::pow(h.p_hat, 2.0 / alpha_j) *
           (std::pow(h.b_hat, 2.0 / alpha_j) + z_factor(gamma, alpha_j, h.b_hat, zspec));
}

// The whole-network rate written as one pair of double integrals, evaluated
// with the printed operator layout (one unbalanced parenthesis resolved by
// closing the exponent after the final subtracted term). Kept strictly as a
// cross-check: the composed per-tier assembly is the authoritative value, and
// the relative difference between the two is part of the report.
inline double rate_total_direct_form(const NetworkParams& p, const RateQuad& q = {}) {
    const double R = p.cluster_radius_m;
    const double beta = M_PI * p.lambda_m * R * R;
    const double lambda_s = p.lambda_s();

    // macro-served half
    const double pref_m = 2.0 * M_PI * p.lambda_m * std::exp(-beta) / (1.0 - std::exp(-beta));
    const HatRatios hs_m = hat_ratios(p, Tier::Small, Tier::Macro);
    auto macro_outer = [&](double x) {
        auto inner = [&](double t) {
            double e = 0.0;
            for (Tier j : {Tier::Macro, Tier::Small})
                e += std::pow(x, 2.0 / hat_ratios(p, j, Tier::Macro).alpha_hat) *
                     interference_coefficient(t, j, Tier::Macro, p, q.z);
            e += lambda_s * std::pow(hs_m.p_hat * hs_m.b_hat, 2.0 / p.alpha_small) *
                 std::pow(x, 2.0 / hs_m.alpha_hat);
            e -= p.lambda_m * x * x;
            const double expo = -M_PI * e;
            if (expo < detail::kLogCutoff) return 0.0;
            return std::exp(expo);
        };
        return x * integrate_semi_infinite(inner, 0.0, q.inner);
    };
    const double macro_half = pref_m * integrate_finite(macro_outer, 0.0, R, q.outer);

    if (p.c_bar < 1) return macro_half;

    // small-served half
    const HatRatios hm_s = hat_ratios(p, Tier::Macro, Tier::Small);
    auto small_outer = [&](double x) {
        const double kernel = pdf_ds_intracluster(x, p.c_bar, R);
        if (kernel == 0.0) return 0.0;
        auto inner = [&](double t) {
            double e = 0.0;
            for (Tier j : {Tier::Macro, Tier::Small})
                e += std::pow(x, 2.0 / hat_ratios(p, j, Tier::Small).alpha_hat) *
                     interference_coefficient(t, j, Tier::Small, p, q.z);
            e += p.lambda_m * std::pow(hm_s.p_hat * hm_s.b_hat, 2.0 / p.alpha_macro) *
                 std::pow(x, 2.0 / hm_s.alpha_hat);
            const double expo = -M_PI * e;
            if (expo < detail::kLogCutoff) return 0.0;
            return std::exp(expo);
        };
        return kernel * integrate_semi_infinite(inner, 0.0, q.inner);
    };
    const double small_half = integrate_finite(small_outer, 0.0, 2.0 * R, q.outer);

    return macro_half + small_half;
}

struct RateReport {
    double rate_macro = 0.0;      // nats per channel use
    double rate_small = 0.0;      // nats per channel use
    double rate_total_eq17 = 0.0; // mixture assembly (authoritative)
    double rate_total_eq18 = 0.0; // direct whole-network expression (cross-check)
    double rel_diff = 0.0;        // |eq17 - eq18| / |eq17|
    double a_macro = 0.0;
    double a_small = 0.0;
};

// Assembles the network rate as the association-weighted mixture of per-tier
// rates, and evaluates the direct expression alongside it.
inline RateReport rate_total(const NetworkParams& p, const RateQuad& q = {}) {
    RateReport rep;
    rep.a_macro = assoc_prob_macro(p, DsModel::GlobalMcp);
    rep.rate_macro = rate_tier(Tier::Macro, p, q);
    if (p.c_bar >= 1) {
        rep.a_small = assoc_prob_small(p);
        rep.rate_small = rate_tier(Tier::Small, p, q);
    } else if (p.c_bar > 0) {
        throw DegenerateCluster("rate_total: 0 < c_bar < 1 has no small-tier distance law");
    }
    rep.rate_total_eq17 = rep.a_macro * rep.rate_macro + rep.a_small * rep.rate_small;
    rep.rate_total_eq18 = rate_total_direct_form(p, q);
    rep.rel_diff = std::abs(rep.rate_total_eq17 - rep.rate_total_eq18) /
                   std::max(std::abs(rep.rate_total_eq17), 1e-300);
    return rep;
}

} // namespace mcnet

#endif
