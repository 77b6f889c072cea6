#include "doctest.h"
#include "near.hpp"
#include "zm/special.hpp"

using namespace zm;
using zm::test::near;
using zm::test::rel_diff;

TEST_CASE("gamma values") {
    CHECK(rel_diff(gamma_value(0.5), std::sqrt(kPi)) < 1e-14);
    CHECK(rel_diff(gamma_value(5.0), 24.0) < 1e-14);
    CHECK(rel_diff(gamma_value(-0.5), -2 * std::sqrt(kPi)) < 1e-14);
    CHECK(rel_diff(gamma_value(CNum(0.3, 2.7)), CNum(0.028059879610273217, -0.009433071836457113)) < 1e-13);
    CHECK(rel_diff(gamma_value(CNum(-4.6, 0.25)), CNum(-0.03908879208002566, -0.007836900499182922)) < 1e-13);
    CHECK(rel_diff(gamma_value(CNum(12.5, -29)), CNum(-0.019527332164428046, 0.0052575340316516435)) < 1e-12);
}

TEST_CASE("gamma pole carries its location") {
    try {
        zm::gamma(CNum(-3.0));
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::pole);
        REQUIRE(e.where().has_value());
        CHECK(e.where()->real() == -3.0);
    }
}

TEST_CASE("gamma recurrence on a random grid") {
    zm::test::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        CNum z(rng.uniform(-29, 29), rng.uniform(-29, 29));
        if (std::abs(z - std::round(z.real())) < 1e-3) continue;
        CHECK(rel_diff(gamma_value(z + 1.0), z * gamma_value(z)) < 1e-12);
    }
}

TEST_CASE("digamma") {
    CHECK(near(digamma_value(1.0), -kEulerGamma, 1e-15));
    CHECK(near(digamma_value(2.0), 1 - kEulerGamma, 4e-15));
    CHECK(near(digamma_value(0.5), -kEulerGamma - 2 * std::log(2.0), 1e-15));
    CHECK(rel_diff(digamma_value(CNum(0.3, 2.7)), CNum(0.9902250038393319, 1.6456178565495811)) < 1e-13);
    CHECK(rel_diff(digamma_value(CNum(-2.4, 0.7)), CNum(1.1416686648551642, 2.8445880789508466)) < 1e-13);
    // series oracle sum_k (1/k - 1/(k + z - 1)) - gamma at z = 1/2
    double acc = -kEulerGamma;
    for (int k = 1; k <= 2000000; ++k) acc += 1.0 / k - 1.0 / (k - 0.5);
    CHECK(std::abs(acc - digamma_value(0.5).real()) < 1e-6);
    zm::test::Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        CNum z(rng.uniform(-20, 20), rng.uniform(-20, 20));
        if (std::abs(z - std::round(z.real())) < 1e-2) continue;
        CHECK(std::abs(digamma_value(z + 1.0) - digamma_value(z) - 1.0 / z) < 1e-11 * std::max(1.0, std::abs(digamma_value(z))));
    }
    CHECK_THROWS_AS(digamma(0.0), Error);
}

TEST_CASE("pochhammer") {
    CHECK(rel_diff(pochhammer(0.5, 3), 0.5 * 1.5 * 2.5) < 1e-15);
    CHECK(pochhammer(-2.0, 5) == CNum(0.0));
    CNum x(0.3, 0.2);
    CHECK(rel_diff(pochhammer(x, 80), gamma_value(x + 80.0) / gamma_value(x)) < 1e-11);
    CHECK(pochhammer(-3.0, 70) == CNum(0.0));
}

TEST_CASE("hurwitz_series") {
    CHECK(rel_diff(hurwitz_series(2.0, 1.0).value, kPi * kPi / 6) < 1e-13);
    CHECK(rel_diff(hurwitz_series(3.0, 1.0).value, 1.2020569031595942) < 1e-12);
    CHECK(rel_diff(hurwitz_series(2.0, 0.5).value, kPi * kPi / 2) < 1e-13);
    CHECK(rel_diff(hurwitz_series(CNum(2.5, 1), 0.3).value, CNum(7.852880705201321, 18.59314353431856)) < 1e-12);
    CHECK_THROWS_AS(hurwitz_series(1.0, 1.0), Error);
    auto r = hurwitz_series(1.1, 0.7);
    CHECK(r.converged);
    CHECK(r.abs_err <= 1e-12 * std::abs(r.value));
}

TEST_CASE("hurwitz_em") {
    CHECK(near(hurwitz_em(0.0, 1 - 0.3).value, -0.2, 1e-14));
    CHECK(near(hurwitz_em(-1.0, 1.0).value, -1.0 / 12, 1e-14));
    CHECK(rel_diff(hurwitz_em(2.0, 1.0).value, kPi * kPi / 6) < 1e-13);
    CHECK(rel_diff(hurwitz_em(CNum(-2.5, 0.7), 0.4).value, CNum(-0.014818177877295764, -0.00494745795214244)) < 1e-11);
    CHECK(rel_diff(hurwitz_em(CNum(3, 2), 1.7).value, CNum(0.04454533811220887, -0.22385613413615804)) < 1e-12);
    CHECK(rel_diff(hurwitz_em(-2.7, 0.3).value, -0.006756546096526171) < 1e-11);
    CHECK_THROWS_AS(hurwitz_em(1.0, 1.0), Error);
}

TEST_CASE("hurwitz routes agree") {
    zm::test::Rng rng(3);
    for (int i = 0; i < 60; ++i) {
        CNum s(rng.uniform(1.1, 6), rng.uniform(-3, 3));
        double x = rng.uniform(0.1, 3);
        CHECK(rel_diff(hurwitz_series(s, x).value, hurwitz_em(s, x).value) < 1e-10);
    }
}

TEST_CASE("lerch_phi and polylog") {
    CHECK(rel_diff(lerch_phi(2.0, 1.0, 0.0).value, kPi * kPi / 6) < 1e-13);
    CHECK(rel_diff(lerch_phi(3.0, 1.0, 0.5).value, hurwitz_series(3.0, 1.5).value) < 1e-13);
    CHECK(rel_diff(lerch_phi(1.0, 0.5, 0.0).value, std::log(2.0)) < 1e-12);
    CHECK(rel_diff(polylog(2.0, 1.0).value, kPi * kPi / 6) < 1e-13);
    CHECK(rel_diff(polylog(1.0, 0.5).value, std::log(2.0)) < 1e-12);
    CNum e3 = std::exp(CNum(0, 2 * kPi * 0.3));
    CHECK(rel_diff(polylog(0.5, e3).value, CNum(-0.49969188981257734, 0.5108446701225472)) < 1e-12);
    CHECK(rel_diff(polylog(CNum(2, 1), 0.9 * std::exp(CNum(0, 0.2))).value, CNum(1.2445907128918197, 0.028376270094207838)) < 1e-12);
    CHECK(rel_diff(polylog(3.0, std::exp(CNum(0, 0.05))).value, CNum(1.1964372161160821, 0.08029362460058437)) < 1e-12);
    CHECK(rel_diff(lerch_phi(CNum(1.5, 0.5), CNum(0.3, 0.8), CNum(0.7, 0.4)).value, CNum(0.23014322104764304, 0.37530105151737203)) < 1e-12);
    CHECK(rel_diff(lerch_phi(1.0, std::exp(CNum(0, 0.1)), CNum(0.7, -0.3)).value, CNum(1.5310093591576632, 1.5300511407177517)) < 1e-12);
    CHECK_THROWS_AS(lerch_phi(2.0, 1.5, 0.0), Error);
    CHECK_THROWS_AS(polylog(-0.5, std::exp(CNum(0, 1.0))), Error);
    CHECK_THROWS_AS(polylog(1.0, 1.0), Error);
}

TEST_CASE("polylog duplication") {
    zm::test::Rng rng(9);
    for (int i = 0; i < 80; ++i) {
        CNum s(rng.uniform(1.2, 4), rng.uniform(-2, 2));
        double r = rng.uniform(0.05, 1.0);
        CNum z = r * std::exp(CNum(0, rng.uniform(-3.1, 3.1)));
        CNum lhs = polylog(s, z).value + polylog(s, -z).value;
        CNum rhs = std::exp((1.0 - s) * std::log(2.0)) * polylog(s, z * z).value;
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("upper incomplete gamma") {
    CHECK(rel_diff(upper_gamma(CNum(-2.5, 0.3), CNum(0, -7.3)), CNum(0.0011806184697992544, 0.0005464488207396116)) < 1e-13);
    CHECK(rel_diff(upper_gamma(-3.0, CNum(1e-3, 2e-3)), CNum(-29273234.559900675, 5413133.517774803)) < 1e-12);
    CHECK(rel_diff(upper_gamma(0.4, CNum(0.1, -0.2)), CNum(0.9840723323746983, 0.50356651464674)) < 1e-13);
    CHECK(rel_diff(upper_gamma(CNum(-1.5, -2), CNum(-3, -0.7)), CNum(0.0013394767927420624, -0.017888624383529818)) < 1e-12);
}
