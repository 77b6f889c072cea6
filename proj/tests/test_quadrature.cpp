#include "doctest.h"
#include "near.hpp"
#include "zm/branchc.hpp"
#include "zm/quadrature.hpp"
#include "zm/special.hpp"

using namespace zm;
using zm::test::rel_diff;

TEST_CASE("tanh-sinh handles endpoint singularities") {
    auto r = tanh_sinh([](double x) { return CNum(std::pow(x, -0.9)); }, 0.0, 1.0, 1e-14);
    CHECK(std::abs(r.value - 10.0) < 1e-10);
    auto l = tanh_sinh([](double x) { return CNum(std::log(x)); }, 0.0, 1.0, 1e-14);
    CHECK(std::abs(l.value + 1.0) < 1e-13);
}

TEST_CASE("Gauss-Kronrod on a smooth piece") {
    auto r = gauss_kronrod([](double x) { return CNum(std::cos(x), std::sin(3 * x)); }, 0.0, 2.0, 1e-14);
    CHECK(std::abs(r.value - CNum(std::sin(2.0), (1 - std::cos(6.0)) / 3)) < 1e-14);
    CHECK(r.err_est < 1e-13);
}

TEST_CASE("sine Mellin integral over the half line") {
    IntegrandSpec sp;
    sp.kind = Kernel::exp_kernel;
    sp.s = -0.5;
    sp.a = 1.0;
    auto r = integrate(sp, 1e-10);
    CHECK(std::abs(r.value.imag() - std::sqrt(kPi / 2)) < 1e-8);
    CHECK(std::abs(r.value.real() - std::sqrt(kPi / 2)) < 1e-8);
}

TEST_CASE("log-sine over one period vanishes") {
    IntegrandSpec sp;
    sp.kind = Kernel::log_sine;
    sp.s = -1.0;  // x^{-s-1} = 1
    sp.lo = 0.0;
    sp.hi = 1.0;
    sp.breakpoints = {0.5};
    auto r = integrate(sp, 1e-12);
    CHECK(std::abs(r.value) < 1e-10);
}

TEST_CASE("fractional-part Mellin integral gives zeta(2)") {
    IntegrandSpec sp;
    sp.kind = Kernel::frac_part;
    sp.s = 2.0;
    sp.lo = 1.0;
    auto r = integrate(sp, 1e-11);
    const double zeta2 = kPi * kPi / 6;
    CHECK(std::abs(2.0 * r.value / kPi - (zeta2 - 2 + 0.5)) < 1e-9);
    CHECK(r.err_est < 1e-9);
}

TEST_CASE("gamma integral identity") {
    for (double s : {-0.3, -0.5, -0.7}) {
        for (double a : {1.0, -1.0, 2 * kPi, -2 * kPi}) {
            IntegrandSpec sp;
            sp.kind = Kernel::exp_kernel;
            sp.s = s;
            sp.a = a;
            auto r = integrate(sp, 1e-10);
            const CNum want = cpow(CNum(0, -a), CNum(s)) * gamma_value(-s);
            INFO("s=" << s << " a=" << a);
            CHECK(std::abs(r.value - want) < 1e-8);
        }
    }
}

TEST_CASE("regime errors at a zero endpoint") {
    IntegrandSpec sp;
    sp.kind = Kernel::frac_part;
    sp.s = 0.5;
    sp.a = 1.0;
    sp.b = 0.3;
    sp.hi = 2.0;
    try {
        integrate(sp, 1e-9);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::regime);
    }
    sp.s = -0.5;
    CHECK_NOTHROW(integrate(sp, 1e-9));
}

TEST_CASE("breakpoints save evaluations without changing the value") {
    IntegrandSpec sp;
    sp.kind = Kernel::frac_part;
    sp.s = 1.5;
    sp.a = 1.3;
    sp.b = 0.61;
    sp.lo = 1.0;
    sp.hi = 6.0;
    auto plain = integrate(sp, 1e-9);
    sp.breakpoints = kernel_breakpoints(sp, sp.hi);
    auto split = integrate(sp, 1e-9);
    CHECK(std::abs(plain.value - split.value) <= 10 * std::max(plain.err_est, split.err_est) + 1e-15);
    CHECK(4 * split.evals <= plain.evals);
}

TEST_CASE("halving the tolerance stays inside the error estimate") {
    struct Case {
        Kernel k;
        double s, a, b, lo, hi;
    };
    const Case cases[] = {{Kernel::frac_part, 2.0, 1.0, 0.0, 1.0, INFINITY},
                          {Kernel::sin_kernel, -0.5, 0.7, 0.2, 0.0, 2.0},
                          {Kernel::log_one_minus, -0.5, 1.0, 0.0, 0.0, 1.0},
                          {Kernel::floor_step, 2.5, 1.0, 0.0, 1.0, 3.0}};
    for (const auto& c : cases) {
        IntegrandSpec sp;
        sp.kind = c.k;
        sp.s = c.s;
        sp.a = c.a;
        sp.b = c.b;
        sp.lo = c.lo;
        sp.hi = c.hi;
        sp.breakpoints = kernel_breakpoints(sp, std::isfinite(c.hi) ? c.hi : c.lo);
        auto r1 = integrate(sp, 1e-8);
        auto r2 = integrate(sp, 5e-9);
        INFO(std::string(kernel_name(c.k)));
        CHECK(std::abs(r1.value - r2.value) <= r1.err_est);
    }
}

TEST_CASE("I oracle") {
    const double zeta2 = kPi * kPi / 6;
    auto r = I_oracle({2.0, 1.0, 0.0, 0.0, 1.0});
    CHECK(std::abs(r.value - kPi / 2 * (zeta2 - 1.5)) < 1e-9);
    auto q = I_oracle({2.5, 1.0, 0.3, 0.25, 1.0});
    CHECK(std::abs(q.value - CNum(-0.11523744458415917, 0.0)) < 1e-8);
    auto c = I_oracle({1.5, CNum(1, 0.5), CNum(0.2, -2), 0.25, 1.0});
    CHECK(std::abs(c.value - CNum(0.00084020387673820248, 0.052597261516733603)) < 1e-7);
    auto c2 = I_oracle({0.8, CNum(1, 0.5), CNum(0.2, -2), 0.25, 1.0});
    CHECK(std::abs(c2.value - CNum(0.0018179323644880957, 0.043157475235883835)) < 1e-6);
    CHECK_THROWS_AS(I_oracle({-0.5, 1.0, 0.0, 0.0, 1.0}), Error);
}
