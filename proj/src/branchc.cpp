#include "zm/branchc.hpp"

#include <cmath>

namespace zm {

CNum plog(CNum z) {
    if (z == CNum(0.0, 0.0)) throw Error(ErrorKind::domain, "plog(0)", z);
    if (z.imag() == 0.0) {
        if (z.real() > 0.0) return {std::log(z.real()), 0.0};
        return {std::log(-z.real()), kPi};
    }
    return std::log(z);
}

CNum cpow(CNum a, CNum b) {
    if (a == CNum(0.0, 0.0)) {
        if (b.real() > 0.0) return 0.0;
        throw Error(ErrorKind::domain, "0^b with Re b <= 0", b);
    }
    if (a.imag() == 0.0 && a.real() > 0.0 && b.imag() == 0.0) return std::pow(a.real(), b.real());
    return std::exp(b * plog(a));
}

double frac(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

CNum frac(CNum z) { return {frac(z.real()), z.imag()}; }

CNum floorc(CNum z) { return {std::floor(z.real()), 0.0}; }

int sgn2(double x) { return x >= 0.0 ? 1 : -1; }

CNum logsin_half_reduced(CNum z) {
    double re = z.real(), im = z.imag();
    if (im == 0.0 && re == std::floor(re)) throw Error(ErrorKind::domain, "log-sine singularity at integer", z);
    int sg = sgn2(im);
    CNum e = std::exp(CNum(0.0, 2.0 * kPi * sg) * z);
    return CNum(0.0, kPi * (0.5 - frac(sg * re))) + plog(1.0 - e);
}

CNum logsin_split(CNum z) { return 2.0 * logsin_half_reduced(z) + 2.0 * kPi * std::abs(z.imag()); }

BranchPlan branch_plan(CNum a, CNum b, double d, DMinusRule rule) {
    BranchPlan p{d, 1};
    double ia = a.imag(), ib = b.imag();
    if (ia != 0.0 && -ib / ia > d) p.d_plus = -ib / ia;
    if (ia == 0.0 && ib == 0.0) return p;
    if (rule == DMinusRule::statement) {
        p.d_minus = sgn2(2.0 * p.d_plus * ia + ib);
        return p;
    }
    if (ia == 0.0) {
        p.d_minus = sgn2(ib);
        return p;
    }
    double v = ia * p.d_plus + ib;
    p.d_minus = (p.d_plus > d || v == 0.0) ? sgn2(ia) : sgn2(v);
    return p;
}

}  // namespace zm
