#include "doctest.h"
#include "near.hpp"
#include "zm/hyper.hpp"
#include "zm/special.hpp"

using namespace zm;
using zm::test::rel_diff;

TEST_CASE("trivial arguments give one") {
    CHECK(f0f1(0.3, 0.0).value == CNum(1.0));
    CHECK(f1f1(0.3, 1.7, 0.0).value == CNum(1.0));
    CHECK(f1f2(0.3, 1.7, 2.2, 0.0).value == CNum(1.0));
    CHECK(f2f1(0.3, 1.7, 2.2, 0.0).value == CNum(1.0));
}

TEST_CASE("0F1 sine and cosine") {
    const double x = kPi;
    CHECK(std::abs(f0f1(1.5, -x * x / 4).value) < 1e-15);
    CHECK(std::abs(f0f1(0.5, -x * x / 4).value + 1.0) < 1e-14);
    CHECK(rel_diff(f0f1(CNum(0.4, 0.1), CNum(-9, 2)).value, CNum(1.6542015265819396, -0.755378719475279)) < 1e-12);
}

TEST_CASE("pole parameters are rejected") {
    CHECK_THROWS_AS(f0f1(-2.0, 1.0), Error);
    try {
        f1f1(0.5, 0.0, 1.0);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::pole);
    }
    CHECK_THROWS_AS(f2f1(1.0, 1.0, -3.0, 0.2), Error);
}

TEST_CASE("1F1 values and routes") {
    auto a = f1f1(CNum(-0.5, 0.3), 1.5, CNum(-12, 5));
    CHECK(rel_diff(a.value, CNum(1.993960218771613, -2.3020628081685883)) < 1e-9);
    auto b = f1f1(CNum(1.5, 0.2), CNum(-0.4, 0.3), CNum(3, -2));
    CHECK(rel_diff(b.value, CNum(723.777673861508, 212.88795994211424)) < 1e-12);
    auto c = f1f1(0.5, 1.5, CNum(0, 20 * kPi));
    CHECK(c.strategy == Strategy::integral_route);
    CHECK(rel_diff(c.value, CNum(0.07899367567883304, 0.0711007028103094)) < 1e-12);
    const CNum s(0.3, 0.2);
    auto d = f1f1(-s, 1.0 - s, CNum(-15, 9));
    CHECK(d.strategy == Strategy::integral_route);
    CHECK(rel_diff(d.value, CNum(2.57901574409785, 1.944440917058888)) < 1e-12);
}

TEST_CASE("1F1 integral route meets the direct series at the switch") {
    zm::test::Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        const CNum s(rng.uniform(-2.5, 2.5), rng.uniform(-1, 1));
        const double phase = rng.uniform(0.1, 2 * kPi - 0.1);
        const CNum z = std::polar(8.5, phase);
        const CNum routed = f1f1(-s, 1.0 - s, z).value;
        SeriesControl ctl;
        ctl.tol = 1e-15;
        // direct series by hand: terms (-s)_n z^n / ((1-s)_n n!) = -s z^n/((n-s) n!)
        CNum sum{}, t{1.0};
        for (int n = 0; n < 200; ++n) {
            sum += -s / (double(n) - s) * t;
            t *= z / double(n + 1);
        }
        CHECK(rel_diff(routed, sum) < 1e-10);
    }
}

TEST_CASE("1F2 values and refusal") {
    CHECK(rel_diff(f1f2(0.3, 1.2, CNum(0.7, -0.2), -30.0).value, CNum(0.16378611370267493, -0.06688589300301925)) < 1e-12);
    // 2 pi |a| d k > 40: argument -pi^2 a^2 d^2 k^2 with a d k = 7
    try {
        f1f2(0.25, 0.5, 1.25, -kPi * kPi * 49.0);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::cancellation);
    }
}

TEST_CASE("1F2 sine and cosine integrals") {
    // int_0^1 sin(2 pi x) x^{-1/2} dx at s = -1/2
    double s = -0.5, al = 2 * kPi, d = 1.0;
    CNum v = al * std::pow(d, 1 - s) / (1 - s) *
             f1f2((1 - s) / 2, 1.5, 1 + (1 - s) / 2, -al * al * d * d / 4).value;
    CHECK(rel_diff(v, 0.34341567836369824) < 1e-12);
    s = -1.2;
    al = kPi;
    CNum w = -std::pow(d, -s) / s * f1f2(-s / 2, 0.5, 1 - s / 2, -al * al * d * d / 4).value;
    CHECK(rel_diff(w, -0.09030918539054544) < 1e-12);
}

TEST_CASE("exponential Mellin integral through 1F1") {
    const double s = -1.5, a = 0.8, k = 1, d = 1;
    CNum v = -1.0 / (s * std::pow(d, s)) * f1f1(-s, 1 - s, CNum(0, 2 * kPi * a * k * d)).value;
    CHECK(rel_diff(v, CNum(-0.24052296709382615, -0.02479246420247987)) < 1e-12);
}

TEST_CASE("2F1 routes") {
    CHECK(rel_diff(f2f1(1, 1, 2, 0.5).value, 2 * std::log(2.0)) < 1e-12);
    SeriesControl tight;
    tight.tol = 1e-16;
    CHECK(rel_diff(f2f1(1, 1, 2, 0.5, CutSide::none, tight).value, 2 * std::log(2.0)) < 1e-15);
    auto p = f2f1(0.3, CNum(1.2, 0.5), 2.1, CNum(-2.5, 0.3));
    CHECK(rel_diff(p.value, CNum(0.7699160073220106, -0.04830644140870842)) < 1e-12);
    auto e = f2f1(0.4, 0.7, 1.9, CNum(0.9, 0.3));
    CHECK(e.strategy == Strategy::integral_route);
    CHECK(rel_diff(e.value, CNum(1.1783888299587937, 0.13790573587405328)) < 1e-11);
    CHECK(rel_diff(f2f1(1, 0.75, 1.75, -3.0).value, 0.5183877665754719) < 1e-13);
    CHECK(rel_diff(f2f1(1, CNum(-1.3, 0.4), CNum(-0.3, 0.4), CNum(5, -2)).value,
                   CNum(63.573346232855734, 1.8210787357280045)) < 1e-12);
}

TEST_CASE("2F1 on the cut needs a side") {
    try {
        f2f1(1, 0.6, 1.6, 3.0);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::branch);
    }
    CHECK_THROWS_AS(f2f1(0.5, 0.6, 1.6, 1.0), Error);
    CHECK(rel_diff(f2f1(1, 0.6, 1.6, 3.0, CutSide::below).value, CNum(0.24301691057811525, -0.9750533309036661)) < 1e-12);
    CHECK(rel_diff(f2f1(1, 2, 3, 3.0, CutSide::above).value, CNum(-0.8206993734577657, 0.6981317007977318)) < 1e-12);
}

TEST_CASE("Kummer connection examples") {
    CHECK(kummer_check(0.5, 1.0) < 1e-11);
    CHECK(kummer_check(CNum(0.3, 0.2), CNum(2, 1)) < 1e-10);
    CHECK(kummer_sides(0.4, -0.5).conjugated_power);
    CHECK(kummer_check(0.4, -0.5) < 1e-10);
    CHECK(kummer_check(0.4, -2.5) < 1e-10);
    CHECK(kummer_check(0.3, 0.5) < 1e-10);
    CHECK_THROWS_AS(kummer_check(2.0, 0.5), Error);
    CHECK_THROWS_AS(kummer_check(0.5, -1.0), Error);
}

TEST_CASE("Kummer connection on random points") {
    zm::test::Rng rng(2024);
    int n = 0;
    while (n < 100) {
        const CNum s(rng.uniform(-3, 3), rng.uniform(-3, 3));
        if (std::abs(s - std::round(s.real())) < 0.05) continue;
        const CNum z = std::polar(std::exp(rng.uniform(std::log(0.1), std::log(10.0))), rng.uniform(-kPi, kPi));
        ++n;
        CHECK(kummer_check(s, z) < 1e-9);
    }
}

TEST_CASE("1F1 shift recurrence") {
    CHECK(f1f1_shift(-0.5, CNum(0, 20 * kPi), 0).value == f1f1(0.5, 1.5, CNum(0, 20 * kPi)).value);
    auto r = f1f1_shift(-0.5, CNum(0, 20 * kPi), 8);
    CHECK(r.strategy == Strategy::recurrence_shifted);
    CHECK(rel_diff(r.value, CNum(0.07899367567883304, 0.0711007028103094)) < 1e-9);
    zm::test::Rng rng(77);
    for (int i = 0; i < 60; ++i) {
        const CNum s(rng.uniform(-3, 0.8), rng.uniform(-1, 1));
        const CNum w = std::polar(rng.uniform(0.5, 6), rng.uniform(-kPi, kPi));
        const int n = 1 + static_cast<int>(rng.next() % 6);
        CHECK(rel_diff(f1f1_shift(s, w, n).value, f1f1(-s, 1.0 - s, w).value) < 1e-11);
    }
    CHECK_THROWS_AS(f1f1_shift(-1.0, 1.0, 3), Error);
}

TEST_CASE("2F1 shift and its remainder bound") {
    const ShiftedF2F1 one = f2f1_shift(-1.5, 0.7, 5.0, 1);
    CHECK(rel_diff(one.value.value, 0.05094731100844115) < 1e-12);
    const ShiftedF2F1 six = f2f1_shift(-1.5, 0.7, 5.0, 6);
    CHECK(rel_diff(six.value.value, 0.05094731100844115) < 1e-10);
    CHECK(std::abs(six.remainder) <= six.remainder_bound);
    CHECK(std::isfinite(six.remainder_bound));
    const ShiftedF2F1 cplx = f2f1_shift(CNum(0.3, 1.1), CNum(0.4, -0.2), CNum(-2.5, 0.3), 4);
    const CNum s(0.3, 1.1), ad(0.4, -0.2), bk(-2.5, 0.3);
    const CNum direct = ad / (1.0 - s) * f2f1(1.0, 1.0 - s, 2.0 - s, -ad / bk).value / bk;
    CHECK(rel_diff(cplx.value.value, direct) < 1e-11);
    CHECK(std::abs(cplx.remainder) <= cplx.remainder_bound);
}

TEST_CASE("identity suite") {
    for (const auto& r : hyper_identity_suite()) {
        INFO(r.name << " " << r.point << " residual " << r.residual);
        CHECK(r.pass);
    }
}
