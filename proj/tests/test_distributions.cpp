#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mcnet/distributions.hpp"
#include "mcnet/quadrature.hpp"
#include "support.hpp"

using namespace mcnet;
using mcnet_tests::baseline_params;

namespace {

// CCDF/PDF consistency and unit mass, on a 100-point grid.
void check_law(const ContactLaw& law, double hi_for_grid) {
    const QuadSpec spec{1e-12, 1e-10, 4000};
    const double mass = integrate_finite(law.pdf, law.lo, hi_for_grid, spec);
    CHECK(mass == Catch::Approx(1.0).margin(1e-6));
    for (int i = 0; i <= 100; ++i) {
        const double r = law.lo + (hi_for_grid - law.lo) * i / 100.0;
        CHECK(law.pdf(r) >= 0.0);
        const double tail = 1.0 - integrate_finite(law.pdf, law.lo, r, spec);
        CHECK(law.ccdf(r) == Catch::Approx(tail).margin(1e-6));
    }
}

} // namespace

TEST_CASE("contact CCDF of the plain field") {
    const double lam = 1.0 / (M_PI * 500.0 * 500.0);
    CHECK(ccdf_contact_ppp(0.0, lam) == 1.0);
    CHECK(ccdf_contact_ppp(500.0, lam) == Catch::Approx(std::exp(-1.0)).epsilon(1e-14));
    SECTION("depends only on lambda r^2") {
        for (double k : {0.5, 2.0, 10.0})
            CHECK(ccdf_contact_ppp(123.0 / k, k * k * lam) ==
                  Catch::Approx(ccdf_contact_ppp(123.0, lam)).epsilon(1e-14));
    }
}

TEST_CASE("clustered-field contact CCDF equals the plain one at the plane density") {
    const double lam = 3e-6;
    for (double r : {0.0, 10.0, 100.0, 900.0}) {
        CHECK(ccdf_contact_mcp_global(r, lam, 4.0) ==
              Catch::Approx(ccdf_contact_ppp(r, 4.0 * lam)).epsilon(1e-14));
    }
    CHECK(ccdf_contact_mcp_global(1234.0, lam, 0.0) == 1.0);
    CHECK(ccdf_contact_mcp_global(0.0, lam, 4.0) == 1.0);
}

TEST_CASE("disk-membership probability") {
    NetworkParams p = baseline_params();
    p.lambda_m = 1.0 / (M_PI * p.cluster_radius_m * p.cluster_radius_m); // unit exponent
    CHECK(prob_user_in_disk(p) == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    p = baseline_params();
    p.cluster_radius_m = 1e-6;
    CHECK(prob_user_in_disk(p) < 1e-15);
}

TEST_CASE("conditional macro-distance density") {
    const NetworkParams p = baseline_params();
    const double R = p.cluster_radius_m;
    CHECK(pdf_dm_conditional(R * 1.001, p) == 0.0);
    CHECK(pdf_dm_conditional(-1.0, p) == 0.0);
    const double mass =
        integrate_finite([&](double r) { return pdf_dm_conditional(r, p); }, 0.0, R,
                         QuadSpec{1e-13, 1e-12, 4000});
    CHECK(mass == Catch::Approx(1.0).margin(1e-8));
    check_law(dm_conditional_law(p), R);
}

TEST_CASE("pair-distance law of a disk") {
    const double R = 73.0;
    const ContactLaw law = disk_pair_distance_law(R);

    SECTION("support endpoints") {
        CHECK(pair_distance_cdf(0.0, R) == 0.0);
        CHECK(pair_distance_cdf(2.0 * R, R) == 1.0);
        CHECK(law.ccdf(0.0) == 1.0);
        CHECK(law.ccdf(2.0 * R) == 0.0);
    }

    SECTION("mean pair distance is 128 R / (45 pi)") {
        const double mean = integrate_finite([&](double l) { return l * law.pdf(l); }, 0.0,
                                             2.0 * R, QuadSpec{1e-12, 1e-11, 4000});
        CHECK(mean == Catch::Approx(128.0 * R / (45.0 * M_PI)).margin(1e-4));
    }

    SECTION("tail equals the bracketed survival expression pointwise") {
        for (int i = 0; i <= 200; ++i) {
            const double l = 2.0 * R * i / 200.0;
            const double x = l / (2.0 * R);
            const double rad = std::sqrt(std::max(1.0 - x * x, 0.0));
            const double bracket = (l / (M_PI * R)) * (1.0 + l * l / (2.0 * R * R)) * rad -
                                   (2.0 / M_PI) * (l * l / (R * R) - 1.0) * std::acos(std::min(x, 1.0));
            CHECK(1.0 - pair_distance_cdf(l, R) == Catch::Approx(bracket).margin(1e-12));
        }
    }

    SECTION("law consistency") { check_law(law, 2.0 * R); }
}

TEST_CASE("own-cluster minimum-distance density") {
    const double R = 100.0;

    SECTION("single daughter reduces to the pair law") {
        for (int i = 0; i <= 50; ++i) {
            const double r = 2.0 * R * i / 50.0;
            CHECK(pdf_ds_intracluster(r, 1.0, R) ==
                  Catch::Approx(pair_distance_pdf(r, R)).margin(1e-14));
        }
    }

    SECTION("unit mass for several cluster sizes") {
        for (double c : {1.0, 2.0, 5.0, 10.0}) {
            const double mass = integrate_finite(
                [&](double r) { return pdf_ds_intracluster(r, c, R); }, 0.0, 2.0 * R,
                QuadSpec{1e-12, 1e-10, 4000});
            CHECK(mass == Catch::Approx(1.0).margin(1e-6));
        }
    }

    SECTION("stochastically decreasing in the cluster size") {
        for (int i = 1; i < 40; ++i) {
            const double r = 2.0 * R * i / 40.0;
            double prev = ccdf_ds_intracluster(r, 1.0, R);
            for (double c : {2.0, 3.0, 5.0, 8.0, 10.0}) {
                const double cur = ccdf_ds_intracluster(r, c, R);
                CHECK(cur <= prev + 1e-15);
                prev = cur;
            }
        }
    }

    SECTION("fewer than one daughter is degenerate") {
        CHECK_THROWS_AS(pdf_ds_intracluster(10.0, 0.5, R), DegenerateCluster);
        CHECK_THROWS_AS(ds_intracluster_law(0.0, R), DegenerateCluster);
    }

    SECTION("non-integer sizes are valid densities") { check_law(ds_intracluster_law(2.7, R), 2.0 * R); }
}

TEST_CASE("plain-field law object is consistent out to the dump horizon") {
    const double lam = 1e-5;
    ContactLaw law = contact_law_ppp(lam);
    // unit mass over the effective support
    const double mass = integrate_finite(law.pdf, 0.0, 3.0 / std::sqrt(lam),
                                         QuadSpec{1e-12, 1e-10, 4000});
    CHECK(mass == Catch::Approx(1.0).margin(1e-8));
    for (int i = 0; i <= 50; ++i) {
        const double r = i * 3.0 / (50.0 * std::sqrt(lam));
        const double tail = 1.0 - integrate_finite(law.pdf, 0.0, r, QuadSpec{1e-12, 1e-10, 4000});
        CHECK(law.ccdf(r) == Catch::Approx(tail).margin(1e-8));
    }
}
