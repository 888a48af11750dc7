#ifndef MCNET_PARAMS_HPP
#define MCNET_PARAMS_HPP

#include <cmath>
#include <string>

#include "mcnet/errors.hpp"

namespace mcnet {

// Which law models the distance to the nearest small BS.
//   GlobalMcp    - contact distance of the whole clustered field, seen from a
//                  uniformly random location of the plane.
//   IntraCluster - minimum distance to the daughters of the user's own
//                  cluster only.
enum class DsModel { GlobalMcp, IntraCluster };

inline const char* to_string(DsModel m) {
    return m == DsModel::GlobalMcp ? "global_mcp" : "intra_cluster";
}

// All physical and model parameters, in linear units. Powers are watts and
// biases are dimensionless multipliers; dBm / dB exist only at the
// configuration boundary.
struct NetworkParams {
    double p_macro_w = 0.0;        // macro transmit power, W
    double p_small_w = 0.0;        // small-cell transmit power, W
    double b_macro = 1.0;          // macro association bias, linear
    double b_small = 1.0;          // small association bias, linear
    double alpha_macro = 4.0;      // macro path-loss exponent
    double alpha_small = 4.0;      // small path-loss exponent
    double lambda_m = 0.0;         // macro BS density, 1/m^2 (= cluster parent density)
    double c_bar = 0.0;            // mean number of small BS per cluster
    double cluster_radius_m = 0.0; // cluster disk radius R, m
    double lambda_u = 0.0;         // in-cluster user density, 1/m^2
    double noise_w = 0.0;          // thermal noise N0, W

    // Density of the small tier over the whole plane.
    double lambda_s() const { return lambda_m * c_bar; }
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Returns the parameters unchanged iff every invariant holds; otherwise
// throws ValidationError naming the first violated invariant.
inline NetworkParams validate(const NetworkParams& p) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(p.p_macro_w) || !(p.p_macro_w > 0))
        throw ValidationError("p_macro_w: transmit power must be strictly positive");
    if (!finite(p.p_small_w) || !(p.p_small_w > 0))
        throw ValidationError("p_small_w: transmit power must be strictly positive");
    if (!finite(p.b_macro) || p.b_macro < 0)
        throw ValidationError("b_macro: association bias must be >= 0");
    if (!finite(p.b_small) || p.b_small < 0)
        throw ValidationError("b_small: association bias must be >= 0");
    if (!finite(p.alpha_macro) || !(p.alpha_macro > 2))
        throw ValidationError("alpha_macro: path-loss exponent must exceed 2");
    if (!finite(p.alpha_small) || !(p.alpha_small > 2))
        throw ValidationError("alpha_small: path-loss exponent must exceed 2");
    if (!finite(p.lambda_m) || !(p.lambda_m > 0))
        throw ValidationError("lambda_m: macro density must be strictly positive");
    if (!finite(p.c_bar) || p.c_bar < 0)
        throw ValidationError("c_bar: mean cluster size must be >= 0");
    if (!finite(p.cluster_radius_m) || !(p.cluster_radius_m > 0))
        throw ValidationError("cluster_radius_m: cluster radius must be strictly positive");
    if (!finite(p.lambda_u) || !(p.lambda_u > 0))
        throw ValidationError("lambda_u: user density must be strictly positive");
    if (!finite(p.noise_w) || p.noise_w < 0)
        throw ValidationError("noise_w: noise power must be >= 0");
    return p;
}

} // namespace mcnet

#endif
