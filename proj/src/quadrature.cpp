#include "zm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <queue>

#include "zm/branchc.hpp"
#include "zm/special.hpp"

namespace zm {

namespace {

constexpr double kTanhSinhTMax = 6.0;

struct TsPoint {
    double x;
    double w;
};

// abscissa/weight of the tanh-sinh map at t; x computed from the nearer endpoint
bool ts_point(double t, double lo, double hi, TsPoint& out) {
    const double len = hi - lo;
    const double u = 0.5 * kPi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    const double dist = len * e / (1.0 + e);
    if (!(dist > 0.0)) return false;
    out.x = t < 0 ? lo + dist : hi - dist;
    if (out.x <= lo || out.x >= hi) return false;
    out.w = len * 0.5 * (0.5 * kPi * std::cosh(t)) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    return true;
}

}  // namespace

QuadResult tanh_sinh(const RealFn& f, double lo, double hi, double tol, int max_level) {
    QuadResult r;
    r.pieces = 1;
    if (hi == lo) return r;
    if (hi < lo) {
        auto q = tanh_sinh(f, hi, lo, tol, max_level);
        q.value = -q.value;
        return q;
    }
    CompensatedSum acc;
    auto add_point = [&](double t) {
        TsPoint p;
        if (!ts_point(t, lo, hi, p)) return;
        CNum v = f(p.x) * p.w;
        ++r.evals;
        if (is_finite(v)) acc.add(v);
    };
    double h = 0.5;
    for (double t = -kTanhSinhTMax; t <= kTanhSinhTMax + 1e-12; t += h) add_point(t);
    CNum prev = acc.value() * h;
    double err = std::abs(prev);
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        const long n = static_cast<long>(std::ceil(kTanhSinhTMax / h));
        for (long k = -n + 1; k < n; k += 2) add_point(k * h);
        CNum cur = acc.value() * h;
        err = std::abs(cur - prev);
        prev = cur;
        const double round = 4e-16 * acc.abs_sum * h;
        if (level >= 3 && (err <= tol * std::max(std::abs(cur), 1.0) || err <= round)) {
            err = std::max(err, round);
            break;
        }
    }
    r.value = prev;
    r.err_est = err;
    return r;
}

namespace {

constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208983034788, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double lo, hi;
    CNum value;
    double err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk21(const RealFn& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    CNum fc = f(c);
    CNum k = fc * kWgk[10], g{};
    for (int j = 0; j < 10; ++j) {
        const double dx = h * kXgk[j];
        CNum f1 = f(c - dx), f2 = f(c + dx);
        k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
    }
    return {lo, hi, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadResult gauss_kronrod(const RealFn& f, double lo, double hi, double tol, std::int64_t budget) {
    QuadResult r;
    if (hi == lo) return r;
    std::priority_queue<Segment> heap;
    Segment first = gk21(f, lo, hi);
    r.evals = 21;
    heap.push(first);
    CNum total = first.value;
    double err = first.err;
    while (err > tol * std::max(std::abs(total), 1.0) && r.evals + 42 <= budget) {
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break;
        heap.pop();
        Segment left = gk21(f, worst.lo, mid), right = gk21(f, mid, worst.hi);
        r.evals += 42;
        heap.push(left);
        heap.push(right);
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
    }
    {
        auto copy = heap;
        CompensatedSum acc;
        err = 0.0;
        while (!copy.empty()) {
            acc.add(copy.top().value);
            err += copy.top().err;
            copy.pop();
        }
        total = acc.value();
    }
    r.value = total;
    r.err_est = err;
    r.pieces = static_cast<std::int64_t>(heap.size());
    return r;
}

const char* kernel_name(Kernel k) {
    switch (k) {
        case Kernel::frac_part: return "frac-part";
        case Kernel::log_sine: return "log-sine";
        case Kernel::sin_kernel: return "sin-kernel";
        case Kernel::exp_kernel: return "exp-kernel";
        case Kernel::floor_step: return "floor-step";
        case Kernel::log_one_minus: return "log-one-minus";
    }
    return "?";
}

namespace {

CNum kernel_only(const IntegrandSpec& sp, double x) {
    switch (sp.kind) {
        case Kernel::frac_part:
            return kPi * (0.5 - frac(sp.a.real() * x + sp.b.real()));
        case Kernel::log_sine: {
            CNum sn = sinpi(sp.a * x + sp.b);
            const CNum arg = 4.0 * sn * sn;
            if (arg == CNum(0.0)) return {};
            return plog(arg);
        }
        case Kernel::sin_kernel: {
            CNum arg = 2.0 * (sp.a * sp.k * x + sp.b * sp.k + sp.c);
            return sinpi(arg);
        }
        case Kernel::exp_kernel:
            return std::exp(CNum(0, 1) * sp.a * x);
        case Kernel::floor_step:
            return std::floor(sp.a.real() * x + frac(sp.b.real()));
        case Kernel::log_one_minus:
            if (1.0 - sp.a * x == CNum(0.0)) return {};
            return plog(1.0 - sp.a * x);
    }
    return {};
}

// linear phase whose half-integers cut the kernel into sign-alternating cells
void kernel_phase(const IntegrandSpec& sp, double& p, double& q) {
    switch (sp.kind) {
        case Kernel::frac_part:
        case Kernel::log_sine:
        case Kernel::floor_step:
            p = sp.a.real();
            q = sp.b.real();
            if (sp.kind == Kernel::floor_step) q = frac(sp.b.real());
            return;
        case Kernel::sin_kernel:
            p = sp.a.real() * sp.k;
            q = sp.b.real() * sp.k + sp.c.real();
            return;
        case Kernel::exp_kernel:
            p = sp.a.real() / (2.0 * kPi);
            q = 0.0;
            return;
        case Kernel::log_one_minus:
            p = 0.0;
            q = 0.0;
            return;
    }
}

double next_half_edge(double p, double q, double x) {
    const double t = 2.0 * (p * x + q);
    double n = p > 0 ? std::floor(t) + 1.0 : std::ceil(t) - 1.0;
    double xn = (0.5 * n - q) / p;
    while (xn <= x * (1.0 + 1e-15) + 1e-300) {
        n += p > 0 ? 1.0 : -1.0;
        xn = (0.5 * n - q) / p;
    }
    return xn;
}

}  // namespace

CNum eval_kernel(const IntegrandSpec& spec, double x) {
    return kernel_only(spec, x) * cpow(CNum(x), -spec.s - 1.0);
}

std::vector<double> kernel_breakpoints(const IntegrandSpec& sp, double cap) {
    std::vector<double> out;
    const double top = std::min(sp.hi, cap);
    if (sp.kind == Kernel::log_one_minus) {
        if (sp.a.imag() == 0.0 && sp.a.real() != 0.0) {
            const double x = 1.0 / sp.a.real();
            if (x > sp.lo && x < top) out.push_back(x);
        }
        return out;
    }
    double p = 0.0, q = 0.0;
    kernel_phase(sp, p, q);
    if (p == 0.0) return out;
    // integer crossings are the discontinuities; half-integers only for sin/exp zeros
    const bool halves = sp.kind == Kernel::sin_kernel || sp.kind == Kernel::exp_kernel;
    double x = sp.lo;
    for (;;) {
        x = next_half_edge(p, q, x);
        if (!(x < top)) break;
        const double ph = 2.0 * (p * x + q);
        const bool integer = std::abs(ph / 2.0 - std::round(ph / 2.0)) < 1e-9;
        if (halves || integer) out.push_back(x);
        if (out.size() > 2000000) throw Error(ErrorKind::bound, "too many breakpoints");
    }
    return out;
}

namespace {

// k-th divided difference of y over nodes t
CNum divided_difference(const std::vector<double>& t, std::vector<CNum> y) {
    const std::size_t k = t.size() - 1;
    for (std::size_t m = 1; m <= k; ++m)
        for (std::size_t i = 0; i + m <= k; ++i) y[i] = (y[i + 1] - y[i]) / (t[i + m] - t[i]);
    return y[0];
}

// limit of S(X) = S + X^{-power} P(1/X) from samples at X[n..]
CNum power_extrapolate(const std::vector<double>& X, const std::vector<CNum>& S, std::size_t n, CNum power) {
    std::vector<double> t;
    std::vector<CNum> num, den;
    for (std::size_t i = n; i < X.size(); ++i) {
        const CNum inv_omega = cpow(CNum(X[i]), power);
        t.push_back(1.0 / X[i]);
        num.push_back(S[i] * inv_omega);
        den.push_back(inv_omega);
    }
    return divided_difference(t, num) / divided_difference(t, den);
}

}  // namespace

QuadResult oscillatory_tail(const RealFn& g, double x0, const std::function<double(double)>& next_edge, CNum power,
                            bool singular_edges, double tol, std::int64_t budget,
                            const std::function<double(double)>& tail_bound) {
    QuadResult r;
    CompensatedSum acc;
    double x = x0;
    double cell_err = 0.0;
    constexpr int kFirst = 4;
    constexpr int kLevels = 13;
    constexpr std::size_t kWindow = 9;
    std::vector<double> X;
    std::vector<CNum> S;
    CNum prev_est{};
    double diff = INFINITY;
    auto half_cell = [&](double lo, double hi) {
        QuadResult c = singular_edges ? tanh_sinh(g, lo, hi, tol * 1e-4, 10)
                                      : gauss_kronrod(g, lo, hi, tol * 1e-4, budget - r.evals);
        r.evals += c.evals;
        r.pieces += 1;
        cell_err += c.err_est;
        acc.add(c.value);
    };
    long periods = 0;
    for (int level = 0; level < kLevels && r.evals < budget; ++level) {
        const long target = static_cast<long>(kFirst) << level;
        while (periods < target && r.evals < budget) {
            const double xm = next_edge(x);
            const double xn = next_edge(xm);
            half_cell(x, xm);
            half_cell(xm, xn);
            x = xn;
            ++periods;
        }
        if (periods < target) break;
        X.push_back(x);
        S.push_back(acc.value());
        if (X.size() < 3) continue;
        const std::size_t n = X.size() > kWindow ? X.size() - kWindow : 0;
        const CNum est = power_extrapolate(X, S, n, power);
        if (X.size() > 3) {
            diff = std::abs(est - prev_est);
            if (diff <= 0.1 * tol) {
                r.value = est;
                r.err_est = diff + cell_err;
                return r;
            }
        }
        prev_est = est;
    }
    // no convergence: hard cutoff with the analytic tail bound
    r.value = acc.value();
    r.err_est = cell_err + tail_bound(x);
    return r;
}

QuadResult integrate(const IntegrandSpec& spec, double tol, std::int64_t budget) {
    if (!(spec.hi > spec.lo)) throw Error(ErrorKind::domain, "empty integration interval");
    if (spec.lo < 0.0) throw Error(ErrorKind::domain, "x^{-s-1} needs lo >= 0");
    for (std::size_t i = 0; i < spec.breakpoints.size(); ++i) {
        const double b = spec.breakpoints[i];
        if (!(b > spec.lo && b < spec.hi) || (i > 0 && !(b > spec.breakpoints[i - 1])))
            throw Error(ErrorKind::domain, "breakpoints must be sorted and strictly inside the interval");
    }
    const double rs = spec.s.real();
    if (spec.lo == 0.0) {
        const double tiny = 1e-200;
        const CNum k0 = kernel_only(spec, tiny);
        const bool log_at_zero = spec.kind == Kernel::log_sine && std::abs(k0) > 100.0;
        const double need = (std::abs(k0) > 1e-150 || log_at_zero) ? 0.0 : 1.0;
        if (rs >= need) throw Error(ErrorKind::regime, "non-integrable singularity at x = 0");
    }
    const bool infinite = !std::isfinite(spec.hi);
    if (infinite) {
        if (spec.kind == Kernel::floor_step || spec.kind == Kernel::log_one_minus)
            throw Error(ErrorKind::regime, "kernel has no semi-infinite form");
        if (rs <= -1.0) throw Error(ErrorKind::regime, "oscillatory tail needs Re s > -1");
        if ((spec.kind == Kernel::log_sine || spec.kind == Kernel::sin_kernel || spec.kind == Kernel::exp_kernel) &&
            spec.a.imag() != 0.0)
            throw Error(ErrorKind::regime, "semi-infinite kernel needs real a");
    }

    RealFn f = [&spec](double x) { return eval_kernel(spec, x); };
    const bool log_edges = spec.kind == Kernel::log_sine || spec.kind == Kernel::log_one_minus;

    std::vector<double> edges;
    edges.push_back(spec.lo);
    edges.insert(edges.end(), spec.breakpoints.begin(), spec.breakpoints.end());
    if (!infinite) edges.push_back(spec.hi);

    QuadResult r;
    CompensatedSum acc;
    const double piece_tol = tol / std::max<std::size_t>(1, edges.size());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        const bool singular = (lo == 0.0) || log_edges;
        QuadResult q = singular ? tanh_sinh(f, lo, hi, piece_tol, 10)
                                : gauss_kronrod(f, lo, hi, piece_tol, budget - r.evals);
        r.evals += q.evals;
        r.pieces += q.pieces;
        r.err_est += q.err_est;
        acc.add(q.value);
        if (r.evals > budget) throw Error(ErrorKind::bound, "quadrature budget exhausted");
    }
    if (infinite) {
        double p = 0.0, q = 0.0;
        kernel_phase(spec, p, q);
        double x0 = edges.back();
        if (x0 == 0.0) {
            // first cell from 0 handled by the singular rule
            const double x1 = next_half_edge(p, q, 0.0);
            QuadResult head = tanh_sinh(f, 0.0, x1, tol * 1e-2, 10);
            r.evals += head.evals;
            r.err_est += head.err_est;
            acc.add(head.value);
            x0 = x1;
        }
        const double kmax = spec.kind == Kernel::log_sine ? 4.0 : 2.0;
        const double period = 0.5 / std::abs(p);
        auto bound = [&](double X) {
            return kmax * std::pow(X, -rs - 1.0) * period * std::abs(spec.s + 1.0) / std::max(rs + 1.0, 1e-3);
        };
        auto nxt = [p, q](double x) { return next_half_edge(p, q, x); };
        QuadResult t = oscillatory_tail(f, x0, nxt, spec.s + 1.0, log_edges, tol, budget - r.evals, bound);
        r.evals += t.evals;
        r.pieces += t.pieces;
        r.err_est += t.err_est;
        acc.add(t.value);
    }
    r.value = acc.value();
    return r;
}

QuadResult I_oracle(const OracleCase& cs, double tol) {
    if (!(cs.s.real() > 0.0)) throw Error(ErrorKind::regime, "I oracle needs Re s > 0");
    if (cs.a.real() == 0.0) throw Error(ErrorKind::domain, "I oracle needs Re a != 0");
    if (!(cs.d > 0.0)) throw Error(ErrorKind::domain, "I oracle needs d > 0");
    const CNum c2 = cospi(2.0 * cs.c), s2 = sinpi(2.0 * cs.c);
    RealFn f = [&](double x) {
        const CNum z = cs.a * x + cs.b;
        CNum v = c2 * kPi * (0.5 - frac(z.real()));
        const bool at_integer = z.imag() == 0.0 && z.real() == std::round(z.real());
        if (s2 != CNum(0.0) && !at_integer) v -= s2 * logsin_half_reduced(z);
        return v * cpow(CNum(x), -cs.s - 1.0);
    };
    const double p = cs.a.real(), q = cs.b.real();
    const bool singular = std::abs(s2) != 0.0;
    std::vector<double> edges{cs.d};
    if (cs.a.imag() != 0.0) {
        const double xs = -cs.b.imag() / cs.a.imag();
        if (xs > cs.d) {
            double x = cs.d;
            for (;;) {
                x = next_half_edge(p, q, x);
                if (x >= xs) break;
                edges.push_back(x);
            }
            edges.push_back(xs);
        }
    }
    QuadResult r;
    CompensatedSum acc;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        QuadResult piece = singular ? tanh_sinh(f, edges[i], edges[i + 1], tol * 1e-3, 10)
                                    : gauss_kronrod(f, edges[i], edges[i + 1], tol * 1e-3);
        r.evals += piece.evals;
        r.pieces += 1;
        r.err_est += piece.err_est;
        acc.add(piece.value);
    }
    const double rs = cs.s.real();
    auto bound = [&](double X) {
        return 2.0 * kPi * std::abs(c2) * std::pow(X, -rs) / (rs * kPi * std::abs(p)) +
               4.0 * std::abs(s2) * std::pow(X, -rs) / (rs * kPi * std::abs(p));
    };
    auto nxt = [p, q](double x) { return next_half_edge(p, q, x); };
    QuadResult t = oscillatory_tail(f, edges.back(), nxt, cs.s + 1.0, singular, tol, 20000000, bound);
    r.evals += t.evals;
    r.pieces += t.pieces;
    r.err_est += t.err_est;
    acc.add(t.value);
    r.value = acc.value();
    return r;
}

}  // namespace zm
