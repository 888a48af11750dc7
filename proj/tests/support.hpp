#ifndef MCNET_TESTS_SUPPORT_HPP
#define MCNET_TESTS_SUPPORT_HPP

#include <cmath>

#include "mcnet/params.hpp"

namespace mcnet_tests {

// Default parameter set used across the suite: 53/33 dBm transmit powers,
// unit biases, common path-loss exponent 4, one macro BS per pi*500^2 m^2,
// one small BS per cluster on 100 m disks.
inline mcnet::NetworkParams baseline_params() {
    mcnet::NetworkParams p;
    p.p_macro_w = mcnet::dbm_to_watts(53.0);
    p.p_small_w = mcnet::dbm_to_watts(33.0);
    p.b_macro = 1.0;
    p.b_small = 1.0;
    p.alpha_macro = 4.0;
    p.alpha_small = 4.0;
    p.lambda_m = 1.0 / (M_PI * 500.0 * 500.0);
    p.c_bar = 1.0;
    p.cluster_radius_m = 100.0;
    p.lambda_u = 1e-4;
    p.noise_w = 0.0;
    return p;
}

} // namespace mcnet_tests

#endif
