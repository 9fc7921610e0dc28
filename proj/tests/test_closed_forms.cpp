// Closed-form binary-Hamming capacities and exponents against frozen values
// computed independently (direct formula evaluation and a separate
// Gallager-form optimizer for the single-user exponent).
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpexp/errors.hpp"
#include "gpexp/exponents.hpp"
#include "gpexp/pmf.hpp"

using namespace gpexp;

namespace {
bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
} // namespace

TEST_CASE("public/degenerate capacity g* matches frozen values") {
    // Middle regime: h(D1) - h(D2).
    CHECK(near(g_star(0.4, 0.2), 0.249022499567306, 1e-12));
    CHECK(near(g_star(0.4, 0.2), binary_entropy(0.4) - binary_entropy(0.2), 1e-15));
    // Linear regime below the tangency point (value scales linearly in D1).
    CHECK(near(g_star(0.1, 0.2), 0.062285428215843, 1e-12));
    CHECK(near(g_star(0.05, 0.2), 0.031142714107921, 1e-12));
    CHECK(near(g_star(0.05, 0.2), 0.5 * g_star(0.1, 0.2), 1e-15));
    // Saturation: D1 > 1/2 gives the jamming-free value 1 - h(D2).
    CHECK(near(g_star(0.5, 0.2), 0.278071905112638, 1e-12));
    CHECK(near(g_star(0.5, 0.2), 1.0 - binary_entropy(0.2), 1e-15));
    CHECK(g_star(0.7, 0.2) == g_star(0.51, 0.2));
}

TEST_CASE("g* regime structure: continuity, monotonicity, endpoints") {
    const double d2 = 0.2;
    const double delta2 = 1.0 - std::exp2(-binary_entropy(d2));
    // Tangency point between the linear and entropy-difference regimes.
    CHECK(near(g_star(delta2 - 1e-9, d2), g_star(delta2 + 1e-9, d2), 1e-7));
    // Continuity at the saturation boundary D1 = 1/2.
    CHECK(near(g_star(0.5 - 1e-9, d2), g_star(0.5, d2), 1e-7));
    CHECK(g_star(0.0, d2) == 0.0);
    double prev = -1.0;
    for (double d1 = 0.0; d1 <= 0.55; d1 += 0.01) {
        const double v = g_star(d1, d2);
        CHECK(v >= prev - 1e-12);
        CHECK(v <= 1.0 - binary_entropy(d2) + 1e-12);
        prev = v;
    }
    // Larger attack budgets can only reduce the value.
    CHECK(g_star(0.4, 0.3) < g_star(0.4, 0.2));
    CHECK_THROWS_AS(g_star(-0.1, 0.2), ConfigError);
    CHECK_THROWS_AS(g_star(0.4, 0.6), ConfigError);
}

TEST_CASE("shared-state capacity c_priv matches the entropy-difference identity") {
    CHECK(near(c_priv(0.4, 0.2), 0.267659426334693, 1e-12));
    CHECK(near(c_priv(0.4, 0.2), binary_entropy(0.44) - binary_entropy(0.2), 1e-15));
    CHECK(near(star(0.4, 0.2), 0.44, 1e-15));
    for (double d1 : {0.1, 0.25, 0.4})
        for (double d2 : {0.05, 0.2, 0.35})
            CHECK(near(c_priv(d1, d2),
                       binary_entropy(star(d1, d2)) - binary_entropy(d2), 1e-15));
    // Noiseless attack: the decoder-known host supports h(D1) bits.
    CHECK(near(c_priv(0.4, 0.0), binary_entropy(0.4), 1e-15));
    CHECK(c_priv(0.0, 0.2) == 0.0);
    // Knowing the state at the decoder never hurts.
    CHECK(c_priv(0.4, 0.2) >= g_star(0.4, 0.2));
    CHECK_THROWS_AS(c_priv(0.4, -0.2), ConfigError);
}

TEST_CASE("hard-ball exponent closed forms are the capacity-gap line") {
    CHECK(near(er_cam_pub_closed(0.1, 0.4, 0.2), 0.149022499567306, 1e-12));
    CHECK(er_cam_pub_closed(0.3, 0.4, 0.2) == 0.0);
    CHECK(near(er_cam_deg_closed(0.0, 0.4, 0.2), 0.249022499567306, 1e-12));
    CHECK(near(er_cam_deg_closed(0.1, 0.4, 0.2), 0.149022499567306, 1e-12));
    for (double r : {0.0, 0.05, 0.12, 0.249, 0.4}) {
        CHECK(near(er_cam_pub_closed(r, 0.4, 0.2),
                   pos_part(g_star(0.4, 0.2) - r), 1e-15));
        CHECK(er_cam_pub_closed(r, 0.4, 0.2) == er_cam_deg_closed(r, 0.4, 0.2));
    }
}

TEST_CASE("jamming exponent equals the uncontested-capacity gap") {
    CHECK(near(jamming_exponent(0.0, 0.2), 0.278071905112638, 1e-12));
    CHECK(near(jamming_exponent(0.1, 0.2), 0.178071905112638, 1e-12));
    CHECK(jamming_exponent(0.28, 0.2) <= 1e-9); // above 1 - h(0.2)
    for (double d2 : {0.1, 0.2, 0.3}) {
        const double cap = 1.0 - binary_entropy(d2);
        for (double r : {0.0, 0.05, 0.5 * cap})
            CHECK(near(jamming_exponent(r, d2), cap - r, 1e-9));
        CHECK(jamming_exponent(cap + 0.05, d2) <= 1e-9);
    }
    double prev = jamming_exponent(0.0, 0.2);
    for (double r = 0.02; r <= 0.3; r += 0.02) {
        const double v = jamming_exponent(r, 0.2);
        CHECK(v <= prev + 1e-12);
        CHECK(v >= 0.0);
        prev = v;
    }
    CHECK_THROWS_AS(jamming_exponent(-0.1, 0.2), ConfigError);
    CHECK_THROWS_AS(jamming_exponent(0.1, 1.2), ConfigError);
}

TEST_CASE("shared-state game exponent matches frozen values") {
    // Linear segment at low rate (slope -1), then a curved tail.
    CHECK(near(private_wm_exponent(0.0, 0.4, 0.2), 0.262888656600114, 1e-9));
    CHECK(near(private_wm_exponent(0.1, 0.4, 0.2), 0.162888656600114, 1e-9));
    CHECK(near(private_wm_exponent(0.05, 0.4, 0.2),
               private_wm_exponent(0.0, 0.4, 0.2) - 0.05, 1e-6));
    CHECK(near(private_wm_exponent(0.27, 0.4, 0.2), 0.000012263776967, 1e-9));
    // Above capacity the value collapses to the inner attack-grid floor: the
    // discrete grid cannot land exactly on the optimal attack, so a residual
    // of order 1e-5 survives instead of an exact zero.
    CHECK(private_wm_exponent(0.4, 0.4, 0.2) <= 2e-5);
    CHECK(private_wm_exponent(0.8, 0.4, 0.2) <= 1e-12);
    double prev = private_wm_exponent(0.0, 0.4, 0.2);
    for (double r = 0.04; r <= 0.32; r += 0.04) {
        const double v = private_wm_exponent(r, 0.4, 0.2);
        CHECK(v <= prev + 1e-9);
        CHECK(v >= 0.0);
        prev = v;
    }
    CHECK_THROWS_AS(private_wm_exponent(-0.1, 0.4, 0.2), ConfigError);
}

TEST_CASE("single-user exponent for the binary symmetric channel") {
    const CondPmf bsc({2}, {2}, {0.9, 0.1, 0.1, 0.9});
    const std::vector<double> uniform{0.5, 0.5};
    // Frozen values independently confirmed against the Gallager form
    // max_rho E0(rho) - rho R to 1e-12.
    CHECK(near(dmc_exponent(0.1, uniform, bsc), 0.221928094887362, 1e-9));
    CHECK(near(dmc_exponent(0.2, uniform, bsc), 0.122307085080966, 1e-9));
    CHECK(near(dmc_exponent(0.3, uniform, bsc), 0.052062622415421, 1e-9));
    // Below the critical rate the curve is the cutoff-rate line R0 - R.
    const double r0 = 1.0 - std::log2(1.0 + 2.0 * std::sqrt(0.1 * 0.9));
    CHECK(near(dmc_exponent(0.1, uniform, bsc), r0 - 0.1, 1e-9));
    // Zero at and above capacity 1 - h(0.1).
    const double cap = 1.0 - binary_entropy(0.1);
    CHECK(dmc_exponent(cap + 0.01, uniform, bsc) <= 1e-9);
    CHECK(dmc_exponent(0.9, uniform, bsc) <= 1e-12);
    double prev = dmc_exponent(0.0, uniform, bsc);
    for (double r = 0.05; r <= 0.6; r += 0.05) {
        const double v = dmc_exponent(r, uniform, bsc);
        CHECK(v <= prev + 1e-9);
        CHECK(v >= 0.0);
        prev = v;
    }
}
