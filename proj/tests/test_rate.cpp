#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mcnet/rate.hpp"
#include "support.hpp"

using namespace mcnet;
using mcnet_tests::baseline_params;

TEST_CASE("normalized interference integral") {
    SECTION("zero threshold gives zero") { CHECK(z_factor(0.0, 4.0, 1.0) == 0.0); }

    SECTION("exponent four, unit bias ratio: sqrt(g) atan(sqrt(g))") {
        for (double g : {0.1, 0.5, 1.0, 4.0, 25.0}) {
            const double oracle = std::sqrt(g) * std::atan(std::sqrt(g));
            CHECK(z_factor(g, 4.0, 1.0) == Catch::Approx(oracle).margin(1e-8));
        }
    }

    SECTION("exponent four, general bias ratio against the arctan antiderivative") {
        for (double b : {0.25, 2.0, 7.0}) {
            for (double g : {0.3, 1.0, 9.0}) {
                const double oracle =
                    std::sqrt(g) * (M_PI / 2 - std::atan(std::sqrt(b / g)));
                CHECK(z_factor(g, 4.0, b) == Catch::Approx(oracle).margin(1e-8));
            }
        }
    }

    SECTION("non-decreasing in the threshold") {
        double prev = 0.0;
        for (int i = 1; i <= 50; ++i) {
            const double g = 0.01 * std::pow(1.25, i);
            const double z = z_factor(g, 4.0, 1.0);
            CHECK(z >= prev);
            prev = z;
        }
    }

    SECTION("argument validation") {
        CHECK_THROWS_AS(z_factor(-1.0, 4.0, 1.0), ValidationError);
        CHECK_THROWS_AS(z_factor(1.0, 2.0, 1.0), ValidationError);
        CHECK_THROWS_AS(z_factor(1.0, 4.0, 0.0), ValidationError);
    }
}

TEST_CASE("interference Laplace transform") {
    NetworkParams p = baseline_params();
    p.c_bar = 4.0;

    SECTION("unity at zero threshold") {
        CHECK(laplace_interference(Tier::Macro, Tier::Macro, 50.0, 0.0, p) == 1.0);
        CHECK(laplace_interference(Tier::Small, Tier::Macro, 50.0, 0.0, p) == 1.0);
    }

    SECTION("monotone non-increasing in t and in x") {
        double prev_t = 2.0;
        for (double t : {0.0, 0.5, 1.0, 2.0, 4.0}) {
            const double v = laplace_interference(Tier::Small, Tier::Macro, 60.0, t, p);
            CHECK(v <= prev_t + 1e-15);
            prev_t = v;
        }
        double prev_x = 2.0;
        for (double x : {1.0, 20.0, 60.0, 150.0}) {
            const double v = laplace_interference(Tier::Macro, Tier::Macro, x, 1.0, p);
            CHECK(v <= prev_x + 1e-15);
            prev_x = v;
        }
    }

    SECTION("single-tier product reduction") {
        NetworkParams solo = baseline_params();
        solo.c_bar = 0.0; // no small tier
        const double x = 80.0, t = 1.3;
        const double prod = laplace_interference(Tier::Macro, Tier::Macro, x, t, solo) *
                            laplace_interference(Tier::Small, Tier::Macro, x, t, solo);
        const double expected = std::exp(-M_PI * solo.lambda_m * x * x *
                                         z_factor(std::expm1(t), solo.alpha_macro, 1.0));
        CHECK(prod == Catch::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("interference coefficient at zero threshold keeps only the bias term") {
    NetworkParams p = baseline_params();
    p.c_bar = 3.0;
    p.b_macro = 2.5;
    for (Tier k : {Tier::Macro, Tier::Small}) {
        for (Tier j : {Tier::Macro, Tier::Small}) {
            const HatRatios h = hat_ratios(p, j, k);
            const double alpha_j = tier_alpha(p, j);
            const double expected = tier_density(p, j) * std::pow(h.p_hat, 2.0 / alpha_j) *
                                    std::pow(h.b_hat, 2.0 / alpha_j);
            CHECK(interference_coefficient(0.0, j, k, p) == Catch::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("per-tier rates are positive and finite at representative parameters") {
    for (double c : {1.0, 4.0}) {
        NetworkParams p = baseline_params();
        p.c_bar = c;
        const double rm = rate_tier(Tier::Macro, p);
        const double rs = rate_tier(Tier::Small, p);
        CHECK(rm > 0.0);
        CHECK(rs > 0.0);
        CHECK(std::isfinite(rm));
        CHECK(std::isfinite(rs));
    }
}

TEST_CASE("rates are invariant to a joint transmit-power scale without noise") {
    NetworkParams p = baseline_params();
    p.c_bar = 2.0;
    const RateReport base = rate_total(p);
    NetworkParams q = p;
    q.p_macro_w *= 3.7;
    q.p_small_w *= 3.7;
    const RateReport scaled = rate_total(q);
    CHECK(scaled.rate_macro == Catch::Approx(base.rate_macro).margin(1e-6));
    CHECK(scaled.rate_small == Catch::Approx(base.rate_small).margin(1e-6));
    CHECK(scaled.rate_total_eq17 == Catch::Approx(base.rate_total_eq17).margin(1e-6));
}

TEST_CASE("mixture assembly identity") {
    NetworkParams p = baseline_params();
    p.c_bar = 2.0;
    const RateReport rep = rate_total(p);
    CHECK(std::abs(rep.rate_total_eq17 -
                   (rep.a_macro * rep.rate_macro + rep.a_small * rep.rate_small)) < 1e-9);
    CHECK(rep.rel_diff >= 0.0);
    INFO("direct-form value " << rep.rate_total_eq18 << " vs composed " << rep.rate_total_eq17
                              << " (rel diff " << rep.rel_diff << ")");
}

TEST_CASE("single-tier network rate") {
    NetworkParams p = baseline_params();
    p.c_bar = 0.0;
    const RateReport rep = rate_total(p);
    CHECK(rep.a_macro == Catch::Approx(1.0).margin(1e-12));
    CHECK(rep.rate_small == 0.0);
    CHECK(rep.rate_total_eq17 == Catch::Approx(rep.rate_macro).epsilon(1e-12));
}

TEST_CASE("thermal noise lowers the rate") {
    NetworkParams p = baseline_params();
    p.c_bar = 1.0;
    const double without = rate_tier(Tier::Macro, p);
    p.noise_w = 1e-9;
    const double with_noise = rate_tier(Tier::Macro, p);
    CHECK(with_noise < without);
}
