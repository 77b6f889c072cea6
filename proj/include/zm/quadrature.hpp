#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "zm/types.hpp"

namespace zm {

struct QuadResult {
    CNum value{};
    double err_est = 0.0;
    std::int64_t evals = 0;
    std::int64_t pieces = 0;
};

using RealFn = std::function<CNum(double)>;

// double-exponential rule on [lo, hi]; tolerates integrable endpoint singularities
QuadResult tanh_sinh(const RealFn& f, double lo, double hi, double tol, int max_level = 9);
// adaptive 21-point Gauss-Kronrod bisection for smooth pieces
QuadResult gauss_kronrod(const RealFn& f, double lo, double hi, double tol, std::int64_t budget = 200000);

enum class Kernel { frac_part, log_sine, sin_kernel, exp_kernel, floor_step, log_one_minus };

const char* kernel_name(Kernel k);

// Each kernel is multiplied by x^{-s-1}:
//   frac_part      pi (1/2 - {Re a x + Re b})
//   log_sine       plog(4 sin^2(pi (a x + b)))
//   sin_kernel     sin(2 pi (a k x + b k + c))
//   exp_kernel     exp(i a x)
//   floor_step     floor(a x + {b})
//   log_one_minus  plog(1 - a x)
struct IntegrandSpec {
    Kernel kind = Kernel::frac_part;
    CNum s{}, a{1.0}, b{}, c{};
    double k = 1.0;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    std::vector<double> breakpoints;
};

CNum eval_kernel(const IntegrandSpec& spec, double x);

// breakpoints of the kernel strictly inside (lo, min(hi, cap))
std::vector<double> kernel_breakpoints(const IntegrandSpec& spec, double cap);

QuadResult integrate(const IntegrandSpec& spec, double tol, std::int64_t budget = 4000000);

// Semi-infinite integral of g on [x0, inf), g = periodic * x^{-power}. next_edge steps
// half periods; partial integrals at 4 * 2^i periods are extrapolated in 1/X.
// tail_bound(X) must bound |int_X^inf g| (used when extrapolation stalls).
QuadResult oscillatory_tail(const RealFn& g, double x0, const std::function<double(double)>& next_edge, CNum power,
                            bool singular_edges, double tol, std::int64_t budget,
                            const std::function<double(double)>& tail_bound);

struct OracleCase {
    CNum s{}, a{1.0}, b{}, c{};
    double d = 1.0;
};

// I_s(a, b, c, d) by direct integration, Re s > 0
QuadResult I_oracle(const OracleCase& cs, double tol = 1e-9);

}  // namespace zm
