#include "zm/hyper.hpp"

#include <limits>
#include <sstream>

#include "zm/branchc.hpp"
#include "zm/quadrature.hpp"
#include "zm/special.hpp"

namespace zm {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::direct_series: return "direct_series";
        case Strategy::recurrence_shifted: return "recurrence_shifted";
        case Strategy::integral_route: return "integral_route";
    }
    return "?";
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const CNum kI{0.0, 1.0};

struct SeriesOut {
    CNum sum{};
    double err = 0.0;
    std::int64_t terms = 0;
    double max_term = 0.0;
};

// sum_{n>=0} t_n with t_0 = 1 and t_{n+1} = t_n ratio(n); rho bounds |ratio| for large n
template <class Ratio>
SeriesOut run_series(Ratio ratio, double rho, const SeriesControl& ctl, const char* what) {
    SeriesOut out;
    CompensatedSum acc;
    CNum t{1.0};
    int small = 0;
    for (std::int64_t n = 0; n < ctl.max_terms; ++n) {
        acc.add(t);
        out.max_term = std::max(out.max_term, std::abs(t));
        const CNum tn = t * ratio(n);
        out.terms = n + 1;
        if (tn == CNum(0.0)) {
            out.sum = acc.value();
            out.err = 4.0 * kEps * out.max_term;
            return out;
        }
        const double s = std::abs(acc.value());
        if (std::abs(tn) <= ctl.tol * s) {
            ++small;
        } else {
            small = 0;
        }
        if (small >= ctl.consecutive_small) {
            const double q = std::max(std::abs(ratio(n + 1)), rho);
            if (q < 1.0) {
                const double tail = std::abs(tn) / (1.0 - q);
                if (tail <= ctl.tol * s) {
                    out.sum = acc.value();
                    out.err = tail + 4.0 * kEps * out.max_term * std::sqrt(double(n + 1));
                    return out;
                }
            }
        }
        if (!is_finite(tn)) break;
        t = tn;
    }
    throw Error(ErrorKind::convergence, std::string(what) + ": series did not converge within max_terms");
}

void require_not_pole(CNum p, const char* what) {
    if (is_nonpositive_integer(p)) throw Error(ErrorKind::pole, std::string(what) + ": parameter is a nonpositive integer", p);
}

bool near_eq(CNum x, CNum y) { return std::abs(x - y) <= 4.0 * kEps * std::max(1.0, std::abs(x)); }

bool on_cut(CNum w) { return w.imag() == 0.0 && w.real() > 1.0; }

// beta int_0^1 u^{beta-1} / (1 - w u) du; when the pole u0 = 1/w is near [0, 1] the path is bent
// through 1/2 -+ 0.4i on the side away from it (for u0 on the segment, away from the approach side)
HyperEval unit_euler_integral(CNum beta, CNum w, CutSide side) {
    const CNum u0 = 1.0 / w;
    const CNum bm1 = beta - 1.0;
    const double clamp = std::min(1.0, std::max(0.0, u0.real()));
    const bool near = std::abs(u0 - clamp) < 0.5;
    QuadResult q1, q2;
    if (!near) {
        RealFn g = [&](double u) -> CNum { return cpow(CNum(u), bm1) / (1.0 - w * u); };
        q1 = tanh_sinh(g, 0.0, 1.0, 1e-16, 10);
    } else {
        double dir = u0.imag() > 0.0 ? -1.0 : 1.0;
        if (on_cut(w)) dir = side == CutSide::below ? -1.0 : 1.0;
        const CNum P(0.5, 0.4 * dir);
        const CNum Pb = cpow(P, beta);
        RealFn g1 = [&](double t) -> CNum { return Pb * cpow(CNum(t), bm1) / (1.0 - w * P * t); };
        RealFn g2 = [&](double t) -> CNum {
            const CNum u = P + (1.0 - P) * t;
            return cpow(u, bm1) / (1.0 - w * u) * (1.0 - P);
        };
        q1 = tanh_sinh(g1, 0.0, 1.0, 1e-16, 10);
        q2 = tanh_sinh(g2, 0.0, 1.0, 1e-16, 10);
    }
    HyperEval r;
    r.value = beta * (q1.value + q2.value);
    r.abs_err = std::abs(beta) * (q1.err_est + q2.err_est);
    r.strategy = Strategy::integral_route;
    r.terms = q1.evals + q2.evals;
    return r;
}

}  // namespace

HyperEval f0f1(CNum beta, CNum z, const SeriesControl& ctl) {
    require_not_pole(beta, "0F1");
    if (z == CNum(0.0)) return {CNum(1.0), 0.0, Strategy::direct_series, 1};
    auto out = run_series([&](std::int64_t n) { return z / ((beta + double(n)) * double(n + 1)); }, 0.0, ctl, "0F1");
    return {checked(out.sum, "0F1"), out.err, Strategy::direct_series, out.terms};
}

HyperEval f1f1(CNum alpha, CNum beta, CNum z, const SeriesControl& ctl) {
    require_not_pole(beta, "1F1");
    if (z == CNum(0.0)) return {CNum(1.0), 0.0, Strategy::direct_series, 1};
    const bool shape = near_eq(beta - alpha, CNum(1.0));
    const bool positive_real = z.imag() == 0.0 && z.real() > 0.0;
    const CNum s = -alpha;
    if (shape && std::abs(z) > kF1F1DirectMax && !positive_real && !is_nonpositive_integer(-s)) {
        // 1F1(-s;1-s;w) = -s (-w)^s Gamma(-s) + s e^w G(-s, -w),  G = e^x x^{-nu} Gamma(nu, x)
        const CNum t1 = -s * cpow(-z, s) * gamma_value(-s);
        const CNum t2 = s * std::exp(z) * upper_gamma_scaled(-s, -z);
        HyperEval r;
        r.value = checked(t1 + t2, "1F1");
        r.abs_err = 16.0 * kEps * (std::abs(t1) + std::abs(t2));
        r.strategy = Strategy::integral_route;
        r.terms = 1;
        return r;
    }
    auto out = run_series([&](std::int64_t n) { return (alpha + double(n)) * z / ((beta + double(n)) * double(n + 1)); },
                          0.0, ctl, "1F1");
    return {checked(out.sum, "1F1"), out.err, Strategy::direct_series, out.terms};
}

HyperEval f1f2(CNum alpha, CNum beta, CNum gammaP, CNum z, const SeriesControl& ctl) {
    require_not_pole(beta, "1F2");
    require_not_pole(gammaP, "1F2");
    if (z == CNum(0.0)) return {CNum(1.0), 0.0, Strategy::direct_series, 1};
    if (2.0 * std::sqrt(std::abs(z)) > kF1F2ArgMax)
        throw Error(ErrorKind::cancellation, "1F2: argument too large for the direct series; use the 1F1 route", z);
    auto out = run_series(
        [&](std::int64_t n) {
            return (alpha + double(n)) * z / ((beta + double(n)) * (gammaP + double(n)) * double(n + 1));
        },
        0.0, ctl, "1F2");
    const double mag = std::abs(out.sum);
    if (kEps * out.max_term > 1e-3 * mag)
        throw Error(ErrorKind::cancellation, "1F2: relative cancellation above 1e-3", z);
    return {checked(out.sum, "1F2"), out.err, Strategy::direct_series, out.terms};
}

HyperEval f2f1_unit(CNum beta, CNum w, CutSide side, const SeriesControl& ctl) {
    if (beta == CNum(0.0)) return {CNum(1.0), 0.0, Strategy::direct_series, 1};
    require_not_pole(beta + 1.0, "2F1");
    if (w == CNum(1.0)) throw Error(ErrorKind::branch, "2F1: branch point z = 1", w);
    if (on_cut(w) && side == CutSide::none) throw Error(ErrorKind::branch, "2F1: argument on the cut [1, inf) needs a side", w);
    if (w == CNum(0.0)) return {CNum(1.0), 0.0, Strategy::direct_series, 1};
    if (std::abs(w) <= 1.0) {
        // beta sum_{n>=0} w^n/(n+beta) = 1 + beta Phi_1(w, beta)
        EvalResult phi = lerch_phi(CNum(1.0), w, beta, ctl);
        HyperEval r;
        r.value = checked(1.0 + beta * phi.value, "2F1");
        r.abs_err = std::abs(beta) * phi.abs_err + 4.0 * kEps * std::abs(r.value);
        r.strategy = Strategy::direct_series;
        r.terms = phi.terms;
        return r;
    }
    // shift beta to Re beta' >= 0.3 so the Euler integral converges at u = 0
    const long m = std::max(0L, static_cast<long>(std::ceil(0.3 - beta.real())));
    const CNum bp = beta + double(m);
    CompensatedSum prefix;
    CNum wn{1.0};
    for (long n = 0; n < m; ++n) {
        prefix.add(beta * wn / (double(n) + beta));
        wn *= w;
    }
    HyperEval inner = unit_euler_integral(bp, w, side);
    const CNum scale = beta / bp * wn;
    HyperEval r;
    r.value = checked(prefix.value() + scale * inner.value, "2F1");
    r.abs_err = std::abs(scale) * inner.abs_err + 4.0 * kEps * prefix.abs_sum;
    r.strategy = Strategy::integral_route;
    r.terms = inner.terms + m;
    return r;
}

HyperEval f2f1(CNum a, CNum b, CNum c, CNum z, CutSide side, const SeriesControl& ctl) {
    require_not_pole(c, "2F1");
    if (z == CNum(0.0)) return {CNum(1.0), 0.0, Strategy::direct_series, 1};
    if (z == CNum(1.0)) throw Error(ErrorKind::branch, "2F1: branch point z = 1", z);
    if (near_eq(a, CNum(1.0)) && near_eq(c, b + 1.0)) return f2f1_unit(b, z, side, ctl);
    if (near_eq(b, CNum(1.0)) && near_eq(c, a + 1.0)) return f2f1_unit(a, z, side, ctl);
    const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (!terminating && on_cut(z)) {
        if (side == CutSide::none) throw Error(ErrorKind::branch, "2F1: argument on the cut [1, inf)", z);
        throw Error(ErrorKind::branch, "2F1: cut boundary values only for the (1, b; b+1) shape", z);
    }
    auto direct = [&](CNum aa, CNum bb, CNum cc, CNum zz) {
        return run_series([&](std::int64_t n) {
            const double dn = double(n);
            return (aa + dn) * (bb + dn) * zz / ((cc + dn) * (dn + 1.0));
        }, std::abs(zz), ctl, "2F1");
    };
    if (terminating || std::abs(z) <= 0.8) {
        auto out = direct(a, b, c, z);
        return {checked(out.sum, "2F1"), out.err, Strategy::direct_series, out.terms};
    }
    const CNum wp = z / (z - 1.0);
    if (std::abs(wp) <= 0.8) {
        // Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
        auto out = direct(a, c - b, c, wp);
        const CNum pre = cpow(1.0 - z, -a);
        return {checked(pre * out.sum, "2F1"), std::abs(pre) * out.err, Strategy::direct_series, out.terms};
    }
    // Euler integral, needs Re c > Re b > 0 (parameters symmetric in a, b)
    CNum ea = a, eb = b;
    if (!(c.real() > eb.real() && eb.real() > 0.0)) std::swap(ea, eb);
    if (!(c.real() > eb.real() && eb.real() > 0.0))
        throw Error(ErrorKind::convergence, "2F1: no convergent route for this argument and parameters", z);
    const CNum pre = gamma_value(c) * rgamma_value(eb) * rgamma_value(c - eb);
    RealFn g = [&](double t) -> CNum {
        return cpow(CNum(t), eb - 1.0) * cpow(CNum(1.0 - t), c - eb - 1.0) * cpow(1.0 - z * t, -ea);
    };
    QuadResult q = tanh_sinh(g, 0.0, 1.0, 1e-15, 10);
    return {checked(pre * q.value, "2F1"), std::abs(pre) * q.err_est, Strategy::integral_route, q.evals};
}

KummerSides kummer_sides(CNum s, CNum z) {
    if (s.imag() == 0.0 && s.real() == std::round(s.real())) throw Error(ErrorKind::domain, "Kummer relation needs s not an integer", s);
    if (z == CNum(0.0) || z == CNum(-1.0)) throw Error(ErrorKind::domain, "Kummer relation excludes z = 0, -1", z);
    KummerSides k;
    k.conjugated_power = z.imag() == 0.0 && z.real() < 0.0 && z.real() > -1.0;
    const CNum p = k.conjugated_power ? std::conj(cpow(std::conj(z), std::conj(s))) : cpow(z, s);
    k.lhs = kPi / sinpi(s) * p;
    SeriesControl tight;
    tight.tol = 1e-17;
    const HyperEval f1 = f2f1_unit(1.0 - s, -z, CutSide::below, tight);
    const HyperEval f2 = f2f1_unit(s, -1.0 / z, CutSide::below, tight);
    k.rhs = z * f1.value / (1.0 - s) + f2.value / s;
    return k;
}

double kummer_check(CNum s, CNum z) {
    const KummerSides k = kummer_sides(s, z);
    return std::abs(k.lhs - k.rhs) / std::abs(k.lhs);
}

HyperEval f1f1_shift(CNum s, CNum w, int n) {
    if (n < 0) throw Error(ErrorKind::usage, "f1f1_shift: n must be >= 0");
    if (w == CNum(0.0)) throw Error(ErrorKind::domain, "f1f1_shift: w must be nonzero", w);
    auto natural = [](CNum x) { return x.imag() == 0.0 && x.real() >= 1.0 && x.real() == std::round(x.real()); };
    if (natural(s) || natural(s + double(n))) throw Error(ErrorKind::pole, "f1f1_shift: s or s+n is a positive integer", s);
    if (n == 0) return f1f1(-s, 1.0 - s, w);
    CompensatedSum acc;
    CNum poch{1.0}, wp{1.0};
    for (int m = 1; m <= n; ++m) {
        poch *= s + double(m - 1);
        wp *= w;
        acc.add(poch / wp);
    }
    const HyperEval inner = f1f1(-s - double(n), 1.0 - s - double(n), w);
    const CNum ew = std::exp(w);
    const CNum scale = poch / wp;
    HyperEval r;
    r.value = checked(-ew * acc.value() + scale * inner.value, "f1f1_shift");
    r.abs_err = std::abs(scale) * inner.abs_err + 8.0 * kEps * (std::abs(ew) * acc.abs_sum + std::abs(scale * inner.value));
    r.strategy = Strategy::recurrence_shifted;
    r.terms = inner.terms + n;
    return r;
}

ShiftedF2F1 f2f1_shift(CNum s, CNum ad, CNum bk, int n) {
    if (n < 1) throw Error(ErrorKind::usage, "f2f1_shift: n must be >= 1");
    if (bk == CNum(0.0) || ad + bk == CNum(0.0)) throw Error(ErrorKind::domain, "f2f1_shift: needs bk != 0 and ad + bk != 0", bk);
    CompensatedSum acc;
    CNum poch{1.0}, ratio_pow{1.0};
    double fact = 1.0;  // (m-1)!
    const CNum ratio = ad / (ad + bk);
    for (int m = 1; m <= n - 1; ++m) {
        poch *= 1.0 - s + double(m - 1);
        if (poch == CNum(0.0)) throw Error(ErrorKind::pole, "f2f1_shift: (1-s)_m vanishes", s);
        ratio_pow *= ratio;
        if (m > 1) fact *= double(m - 1);
        acc.add(ratio_pow * fact / poch);
    }
    const CNum poch_n = poch * (1.0 - s + double(n - 1));
    if (poch_n == CNum(0.0)) throw Error(ErrorKind::pole, "f2f1_shift: (1-s)_n vanishes", s);
    const CNum w = -ad / bk;
    const HyperEval f = f2f1(double(n), double(n) - s, 1.0 - s + double(n), w, CutSide::below);
    const CNum wn = cpow(ad / bk, CNum(double(n)));
    ShiftedF2F1 out;
    out.remainder = wn * f.value;
    const double eps = std::abs(w);
    if (eps < 1.0 && double(n) > s.real()) {
        out.remainder_bound = std::abs((s - double(n)) / (s.real() - double(n))) * std::pow(eps, n) * std::pow(1.0 - eps, -n);
        if (std::abs(out.remainder) > out.remainder_bound * (1.0 + 1e-9) + 1e-300)
            throw Error(ErrorKind::bound, "f2f1_shift: remainder exceeds its certified bound");
    } else {
        out.remainder_bound = std::numeric_limits<double>::infinity();
    }
    if (n > 1) fact *= double(n - 1);
    const CNum tail = fact * out.remainder / poch_n;
    out.value.value = checked(acc.value() + tail, "f2f1_shift");
    out.value.abs_err = std::abs(fact * wn / poch_n) * f.abs_err + 4.0 * kEps * (acc.abs_sum + std::abs(tail));
    out.value.strategy = Strategy::recurrence_shifted;
    out.value.terms = f.terms + n;
    return out;
}

HyperEval f2f1_pfaff_rhs(CNum s, CNum a) {
    const CNum v = a / (1.0 + a);
    const HyperEval f = f2f1(CNum(1.0), CNum(1.0), 2.0 - s, v);
    const CNum pre = v / (1.0 - s);
    return {checked(pre * f.value, "2F1"), std::abs(pre) * f.abs_err, f.strategy, f.terms};
}

namespace {

std::string fmt_point(std::initializer_list<CNum> xs) {
    std::ostringstream os;
    os.precision(6);
    os << "(";
    bool first = true;
    for (CNum x : xs) {
        if (!first) os << ", ";
        first = false;
        os << x.real();
        if (x.imag() != 0.0) os << (x.imag() < 0 ? "-" : "+") << std::abs(x.imag()) << "i";
    }
    os << ")";
    return os.str();
}

double rel(CNum x, CNum y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

// f_{s,k} through the 1F2(-s/2; 1/2, 1-s/2) / 1F2((1-s)/2; 3/2, (3-s)/2) pair
CNum fk_direct(CNum s, CNum a, CNum b, CNum c, double d, double k) {
    const CNum z = -kPi * kPi * a * a * d * d * k * k;
    const CNum th = 2.0 * (b * k + c);
    const CNum e1 = f1f2(-s / 2.0, CNum(0.5), 1.0 - s / 2.0, z).value;
    const CNum o1 = f1f2((1.0 - s) / 2.0, CNum(1.5), (3.0 - s) / 2.0, z).value;
    const CNum ds = cpow(CNum(d), -s);
    return sinpi(th) * ds / (s * k) * e1 - 2.0 * kPi * a * cospi(th) * d * ds / (1.0 - s) * o1;
}

// the same function through 1F2(1; 1/2-s/2, 1-s/2) / 1F2(1; 1-s/2, 3/2-s/2)
CNum fk_unit_numerator(CNum s, CNum a, CNum b, CNum c, double d, double k) {
    const CNum z = -kPi * kPi * a * a * d * d * k * k;
    const CNum th = 2.0 * (a * d * k + b * k + c);
    const CNum e1 = f1f2(CNum(1.0), 0.5 - s / 2.0, 1.0 - s / 2.0, z).value;
    const CNum o1 = f1f2(CNum(1.0), 1.0 - s / 2.0, 1.5 - s / 2.0, z).value;
    const CNum ds = cpow(CNum(d), -s);
    return ds / (s * k) * sinpi(th) * e1 - 2.0 * kPi * a * d * ds / (s * (1.0 - s)) * cospi(th) * o1;
}

}  // namespace

std::vector<IdentityResidual> hyper_identity_suite() {
    std::vector<IdentityResidual> out;
    auto push = [&](std::string name, std::string pt, double res, double tol) {
        out.push_back({std::move(name), std::move(pt), res, tol, res <= tol});
    };
    const CNum i2pi = 2.0 * kPi * kI;
    // (i) 1F1(-s;1-s;i2pi a) = e^{i2pi a} 1F1(1;1-s;-i2pi a)
    const CNum grid_i[][2] = {{0.7, 0.4}, {-1.3, 0.4}, {CNum(0.3, 0.5), 0.9}, {2.4, -0.25}, {-0.45, 1.3}};
    for (const auto& p : grid_i) {
        const CNum s = p[0], a = p[1];
        double res;
        try {
            const CNum lhs = f1f1(-s, 1.0 - s, i2pi * a).value;
            const CNum rhs = std::exp(i2pi * a) * f1f1(CNum(1.0), 1.0 - s, -i2pi * a).value;
            res = rel(lhs, rhs);
        } catch (const Error&) {
            res = std::numeric_limits<double>::infinity();
        }
        push("1F1 reflection", fmt_point({s, a}), res, 1e-9);
    }
    // (ii) two 1F2 representations of f_{s,k}
    struct G2 {
        CNum s, a, b, c;
        double d, k;
    };
    const G2 grid_ii[] = {{-0.8, 0.6, 0.2, 0.0, 1.0, 2.0},
                          {-1.5, 0.8, 0.3, 0.25, 1.0, 1.0},
                          {0.4, 0.3, 0.61, 0.0, 2.0, 3.0},
                          {CNum(-0.5, 0.7), CNum(0.4, 0.1), CNum(0.2, -0.3), 0.1, 1.0, 2.0}};
    for (const auto& g : grid_ii) {
        double res;
        try {
            res = rel(fk_unit_numerator(g.s, g.a, g.b, g.c, g.d, g.k), fk_direct(g.s, g.a, g.b, g.c, g.d, g.k));
        } catch (const Error&) {
            res = std::numeric_limits<double>::infinity();
        }
        push("f_sk 1F2 forms", fmt_point({g.s, g.a, g.b, g.c, g.d, g.k}), res, 1e-9);
    }
    // (iii) (a/(1-s)) 2F1(1,1-s;2-s;-a) vs the Pfaff rewrite
    const CNum grid_iii[][2] = {{0.25, 3.0}, {-0.7, 0.5}, {CNum(0.4, 0.3), CNum(1.5, 0.5)}, {1.6, 2.0}};
    for (const auto& p : grid_iii) {
        const CNum s = p[0], a = p[1];
        double res;
        try {
            const CNum lhs = a / (1.0 - s) * f2f1(CNum(1.0), 1.0 - s, 2.0 - s, -a).value;
            res = rel(lhs, f2f1_pfaff_rhs(s, a).value);
        } catch (const Error&) {
            res = std::numeric_limits<double>::infinity();
        }
        push("2F1 Pfaff rewrite", fmt_point({s, a}), res, 1e-9);
    }
    return out;
}

}  // namespace zm
