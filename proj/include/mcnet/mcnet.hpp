#ifndef MCNET_MCNET_HPP
#define MCNET_MCNET_HPP

// Two-tier heterogeneous network model: macro BSs as a homogeneous PPP,
// small BSs clustered on disks around them, users confined to the disks.
// Analytical association/serving-distance/rate pipeline plus a Monte Carlo
// harness that cross-validates it.

#include "mcnet/association.hpp"
#include "mcnet/config.hpp"
#include "mcnet/csv.hpp"
#include "mcnet/distributions.hpp"
#include "mcnet/errors.hpp"
#include "mcnet/geometry.hpp"
#include "mcnet/montecarlo.hpp"
#include "mcnet/params.hpp"
#include "mcnet/quadrature.hpp"
#include "mcnet/rate.hpp"
#include "mcnet/rng.hpp"

#define MCNET_VERSION "0.1.0"

#endif
