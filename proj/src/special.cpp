#include "zm/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "zm/branchc.hpp"

namespace zm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// B_{2j} for j = 0..10
constexpr std::array<double, 11> kBern = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
};

void neumaier(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
        c += (s - t) + x;
    else
        c += (x - t) + s;
    s = t;
}

// reduce x to r in [-1, 1] with x = r + 2m
double reduce2(double x) { return x - 2.0 * std::nearbyint(x / 2.0); }

void sincospi_real(double x, double& s, double& c) {
    double r = reduce2(x);
    double sign_c = 1.0;
    if (r > 0.5) {
        r = 1.0 - r;
        sign_c = -1.0;
    } else if (r < -0.5) {
        r = -1.0 - r;
        sign_c = -1.0;
    }
    s = (r == 0.0) ? 0.0 : std::sin(kPi * r);
    c = (std::abs(r) == 0.5) ? 0.0 : sign_c * std::cos(kPi * r);
}

CNum stirling_lgamma(CNum w) {
    CNum w2 = 1.0 / (w * w);
    CNum t = 1.0 / w;
    CNum corr = 0.0;
    for (int j = 1; j <= 10; ++j) {
        corr += kBern[j] / (2.0 * j * (2.0 * j - 1.0)) * t;
        t *= w2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * kLog2Pi + corr;
}

// log Gamma for Re z >= 1/2 via upward shift, principal-style accumulation of logs
CNum lgamma_right(CNum z) {
    CNum w = z;
    CNum logs = 0.0;
    while (std::abs(w) < 15.0 || w.real() < 1.0) {
        logs += std::log(w);
        w += 1.0;
    }
    return stirling_lgamma(w) - logs;
}

CNum gamma_right(CNum z) {
    CNum w = z;
    CNum prod = 1.0;
    while (std::abs(w) < 15.0 || w.real() < 1.0) {
        prod *= w;
        w += 1.0;
    }
    return std::exp(stirling_lgamma(w)) / prod;
}

CNum digamma_right(CNum z) {
    CNum w = z;
    CNum acc = 0.0;
    while (std::abs(w) < 15.0 || w.real() < 1.0) {
        acc -= 1.0 / w;
        w += 1.0;
    }
    CNum w2 = 1.0 / (w * w);
    CNum t = w2;
    CNum series = std::log(w) - 0.5 / w;
    for (int j = 1; j <= 10; ++j) {
        series -= kBern[j] / (2.0 * j) * t;
        t *= w2;
    }
    return acc + series;
}

CNum hurwitz_term(CNum s, CNum y) {
    if (y.imag() == 0.0 && y.real() > 0.0 && s.imag() == 0.0) return std::pow(y.real(), -s.real());
    return std::exp(-s * plog(y));
}

// Gamma(nu, z) for integer nu <= 0 and small |z|: E1 series, then downward recurrence
CNum upper_gamma_int_small(int n, CNum z) {
    CNum e1 = -kEulerGamma - plog(z);
    CNum term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -z / static_cast<double>(k);
        CNum add = -term / static_cast<double>(k);
        e1 += add;
        if (std::abs(add) < kEps * std::abs(e1)) break;
    }
    CNum g = e1;
    CNum ez = std::exp(-z);
    for (int a = -1; a >= -n; --a) {
        // Gamma(a+1, z) = a Gamma(a, z) + z^a e^{-z}
        g = (g - cpow(z, static_cast<double>(a)) * ez) / static_cast<double>(a);
    }
    return g;
}

// lower-series form Gamma(nu) - sum (-1)^n z^{nu+n} / (n! (nu+n)), returns scaled value
CNum upper_gamma_scaled_series(CNum nu, CNum z) {
    CNum sum = 0.0;
    CNum term = 1.0;
    for (int n = 0; n < 400; ++n) {
        CNum add = term / (nu + static_cast<double>(n));
        sum += add;
        if (n > 2 && std::abs(add) < kEps * std::abs(sum)) break;
        term *= -z / static_cast<double>(n + 1);
    }
    // e^{z} z^{-nu} Gamma(nu) - e^{z} sum
    return std::exp(z) * (std::exp(-nu * plog(z)) * gamma_value(nu) - sum);
}

CNum upper_gamma_scaled_cf(CNum nu, CNum z) {
    const double tiny = 1e-300;
    CNum b = z + 1.0 - nu;
    CNum f = (b == CNum(0.0)) ? CNum(tiny) : b;
    CNum C = f, D = 0.0;
    for (int n = 1; n < 40000; ++n) {
        CNum an = -static_cast<double>(n) * (static_cast<double>(n) - nu);
        b += 2.0;
        D = b + an * D;
        if (D == CNum(0.0)) D = tiny;
        D = 1.0 / D;
        C = b + an / C;
        if (C == CNum(0.0)) C = tiny;
        CNum delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 2.0 * kEps) return 1.0 / f;
    }
    throw Error(ErrorKind::convergence, "incomplete gamma continued fraction", z);
}

}  // namespace

void CompensatedSum::add(CNum x) {
    double sr = sum.real(), cr = comp.real(), si = sum.imag(), ci = comp.imag();
    neumaier(sr, cr, x.real());
    neumaier(si, ci, x.imag());
    sum = {sr, si};
    comp = {cr, ci};
    abs_sum += std::abs(x);
}

double bernoulli2(int j) { return kBern.at(static_cast<std::size_t>(j)); }

double sinpi(double x) {
    double s, c;
    sincospi_real(x, s, c);
    return s;
}

double cospi(double x) {
    double s, c;
    sincospi_real(x, s, c);
    return c;
}

CNum sinpi(CNum z) {
    double s, c;
    sincospi_real(z.real(), s, c);
    double y = kPi * z.imag();
    return {s * std::cosh(y), c * std::sinh(y)};
}

CNum cospi(CNum z) {
    double s, c;
    sincospi_real(z.real(), s, c);
    double y = kPi * z.imag();
    return {c * std::cosh(y), -s * std::sinh(y)};
}

bool is_nonpositive_integer(CNum z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

CNum gamma_value(CNum z) {
    if (is_nonpositive_integer(z)) throw Error(ErrorKind::pole, "gamma pole", z);
    if (z.real() < 0.5) return checked(kPi / (sinpi(z) * gamma_right(1.0 - z)), "gamma");
    return checked(gamma_right(z), "gamma");
}

CNum rgamma_value(CNum z) {
    if (is_nonpositive_integer(z)) return 0.0;
    if (z.real() < 0.5) return checked(sinpi(z) * gamma_right(1.0 - z) / kPi, "rgamma");
    return checked(1.0 / gamma_right(z), "rgamma");
}

CNum lgamma_any(CNum z) {
    if (is_nonpositive_integer(z)) throw Error(ErrorKind::pole, "log gamma pole", z);
    if (z.real() < 0.5) return std::log(kPi) - std::log(sinpi(z)) - lgamma_right(1.0 - z);
    return lgamma_right(z);
}

CNum digamma_value(CNum z) {
    if (is_nonpositive_integer(z)) throw Error(ErrorKind::pole, "digamma pole", z);
    if (z.real() < 0.5) return checked(digamma_right(1.0 - z) - kPi * cospi(z) / sinpi(z), "digamma");
    return checked(digamma_right(z), "digamma");
}

EvalResult gamma(CNum z) {
    CNum v = gamma_value(z);
    return {v, 4.0 * kEps * std::abs(v) * (1.0 + std::abs(z)), 1, true};
}

EvalResult digamma(CNum z) {
    CNum v = digamma_value(z);
    return {v, 8.0 * kEps * (std::abs(v) + 1.0), 1, true};
}

CNum pochhammer(CNum x, long n) {
    if (n < 0) throw Error(ErrorKind::domain, "negative Pochhammer length");
    if (n <= 64) {
        CNum p = 1.0;
        for (long j = 0; j < n; ++j) p *= x + static_cast<double>(j);
        return p;
    }
    if (is_nonpositive_integer(x) && -x.real() < static_cast<double>(n)) return 0.0;
    return checked(std::exp(lgamma_any(x + static_cast<double>(n)) - lgamma_any(x)), "pochhammer");
}

EvalResult hurwitz_series(CNum s, CNum x, const SeriesControl& ctl) {
    if (s.real() <= 1.0) throw Error(ErrorKind::domain, "hurwitz_series needs Re s > 1 (use hurwitz_em)", s);
    if (is_nonpositive_integer(x)) throw Error(ErrorKind::domain, "hurwitz_series at x in Z<=0", x);
    long n = std::max<long>(16, static_cast<long>(std::ceil(std::abs(s))) + 16);
    if (x.real() < 0.0) n += static_cast<long>(std::ceil(-x.real()));
    CompensatedSum acc;
    long k = 0;
    while (true) {
        for (; k < n; ++k) acc.add(hurwitz_term(s, static_cast<double>(k) + x));
        CNum y = static_cast<double>(n) + x;
        CNum yms = hurwitz_term(s, y);
        CNum tail = y * yms / (s - 1.0) + 0.5 * yms + s / 12.0 * yms / y;
        CNum val = acc.value() + tail;
        double rem = std::abs(s * (s + 1.0) * (s + 2.0)) / 720.0 * std::pow(std::abs(y), -s.real() - 3.0);
        double err = rem + 2.0 * kEps * (acc.abs_sum + std::abs(tail));
        if (err <= ctl.tol * std::abs(val) || 4 * n > ctl.max_terms) {
            bool ok = err <= ctl.tol * std::max(std::abs(val), 1e-300);
            return {checked(val, "hurwitz_series"), err, n, ok};
        }
        n *= 4;
    }
}

EvalResult hurwitz_em(CNum s, CNum x) {
    if (s == CNum(1.0, 0.0)) throw Error(ErrorKind::pole, "Hurwitz zeta pole at s = 1", s);
    if (x.real() <= 0.0 && is_nonpositive_integer(x)) throw Error(ErrorKind::domain, "hurwitz_em at x in Z<=0", x);
    // extended precision: for Re s < 0 the partial sum cancels against the integral term
    using LC = std::complex<long double>;
    long n = static_cast<long>(std::ceil(10.0 + std::abs(s))) + 6;
    if (x.real() < 0.0) n += static_cast<long>(std::ceil(-x.real()));
    LC sl(s.real(), s.imag()), xl(x.real(), x.imag());
    auto term = [&](LC y) { return std::exp(-sl * std::log(y)); };
    LC acc = 0.0L;
    long double abs_sum = 0.0L;
    for (long k = 0; k < n; ++k) {
        LC t = term(static_cast<long double>(k) + xl);
        acc += t;
        abs_sum += std::abs(t);
    }
    LC y = static_cast<long double>(n) + xl;
    LC yms = term(y);
    acc += y * yms / (sl - 1.0L);
    acc += 0.5L * yms;
    // B_{2j}/(2j)! (s)_{2j-1} y^{-s-2j+1}
    LC poch = sl;
    LC ypow = yms / y;
    long double fact = 2.0L;
    CNum last = 0.0;
    for (int j = 1; j <= 9; ++j) {
        LC t = static_cast<long double>(kBern[j]) / fact * poch * ypow;
        if (j == 9) {
            last = CNum(static_cast<double>(t.real()), static_cast<double>(t.imag()));
            break;
        }
        acc += t;
        poch *= (sl + (2.0L * j - 1.0L)) * (sl + 2.0L * j);
        ypow /= y * y;
        fact *= (2.0L * j + 1.0L) * (2.0L * j + 2.0L);
    }
    CNum v(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    double err = std::abs(last) + 8.0 * static_cast<double>(std::numeric_limits<long double>::epsilon() * abs_sum) +
                 kEps * std::abs(v);
    return {checked(v, "hurwitz_em"), err, n, true};
}

EvalResult hurwitz_em(CNum s, double x) {
    if (!(x > 0.0)) throw Error(ErrorKind::domain, "hurwitz_em needs x > 0", CNum(x));
    return hurwitz_em(s, CNum(x));
}

CNum upper_gamma_scaled(CNum nu, CNum z) {
    if (z == CNum(0.0)) throw Error(ErrorKind::domain, "incomplete gamma at z = 0", z);
    double az = std::abs(z);
    bool neg_axis = z.imag() == 0.0 && z.real() < 0.0;
    if (az < 0.5 || neg_axis) {
        if (neg_axis && az > 30.0) throw Error(ErrorKind::branch, "incomplete gamma on the cut", z);
        if (is_nonpositive_integer(nu)) {
            int n = static_cast<int>(-nu.real());
            return std::exp(z) * std::exp(-nu * plog(z)) * upper_gamma_int_small(n, z);
        }
        return upper_gamma_scaled_series(nu, z);
    }
    return upper_gamma_scaled_cf(nu, z);
}

CNum upper_gamma(CNum nu, CNum z) {
    return checked(std::exp(-z + nu * plog(z)) * upper_gamma_scaled(nu, z), "upper_gamma");
}

namespace {

EvalResult lerch_direct(CNum s, CNum z, CNum x, const SeriesControl& ctl) {
    CompensatedSum acc;
    CNum zk = 1.0;
    int small = 0;
    double az = std::abs(z);
    for (long k = 1; k <= ctl.max_terms; ++k) {
        zk *= z;
        CNum t = zk * hurwitz_term(s, static_cast<double>(k) + x);
        acc.add(t);
        double at = std::abs(t);
        double tail = at * az / (1.0 - az) * std::pow(1.0 + 1.0 / k, std::max(0.0, -s.real()));
        if (at <= ctl.tol * std::abs(acc.value()) && tail <= ctl.tol * std::abs(acc.value())) {
            if (++small >= ctl.consecutive_small) return {acc.value(), tail + 2.0 * kEps * acc.abs_sum, k, true};
        } else {
            small = 0;
        }
        if (at == 0.0 && k > 4) return {acc.value(), 0.0, k, true};
    }
    throw Error(ErrorKind::convergence, "lerch_phi direct sum exhausted max_terms", z);
}

EvalResult lerch_abel(CNum s, CNum z, CNum x, const SeriesControl& ctl) {
    const int J = 40;
    double d1z = std::abs(1.0 - z);
    long n = static_cast<long>(std::ceil(2.0 * (std::abs(s) + J) / d1z)) + 16;
    if (x.real() < 0.0) n += static_cast<long>(std::ceil(-x.real()));
    if (n + J > ctl.max_terms) throw Error(ErrorKind::convergence, "lerch_phi: N exceeds max_terms", z);
    CompensatedSum acc;
    CNum zk = 1.0;
    for (long k = 1; k <= n; ++k) {
        zk *= z;
        acc.add(zk * hurwitz_term(s, static_cast<double>(k) + x));
    }
    // tail = z^{n+1} sum_j z^j Delta^j f(n+1) / (1-z)^{j+1}
    std::array<CNum, J + 1> diff;
    for (int j = 0; j <= J; ++j) diff[j] = hurwitz_term(s, static_cast<double>(n + 1 + j) + x);
    CNum pref = zk * z / (1.0 - z);
    CNum ratio = z / (1.0 - z);
    CNum tail = 0.0;
    CNum rp = 1.0;
    double last = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= J; ++j) {
        CNum term = pref * rp * diff[0];
        double at = std::abs(term);
        if (at > best && j > 4) break;
        best = std::min(best, at);
        tail += term;
        last = at;
        if (at <= 0.1 * ctl.tol * std::abs(acc.value() + tail)) break;
        for (int i = 0; i < J - j; ++i) diff[i] = diff[i + 1] - diff[i];
        rp *= ratio;
    }
    CNum v = acc.value() + tail;
    double err = last + 4.0 * kEps * (acc.abs_sum + std::abs(pref) * std::pow(2.0, J) * std::abs(diff[0]));
    return {v, err, n + J, err <= ctl.tol * std::max(std::abs(v), 1e-300)};
}

EvalResult lerch_em(CNum s, CNum z, CNum x, const SeriesControl& ctl) {
    CNum tau = plog(z);
    long n = static_cast<long>(std::ceil(4.0 * (std::abs(s) + 20.0))) + 8;
    if (x.real() < 0.0) n += static_cast<long>(std::ceil(-x.real()));
    if (n > ctl.max_terms) throw Error(ErrorKind::convergence, "lerch_phi: N exceeds max_terms", z);
    CompensatedSum acc;
    CNum zk = 1.0;
    for (long k = 1; k < n; ++k) {
        zk *= z;
        acc.add(zk * hurwitz_term(s, static_cast<double>(k) + x));
    }
    CNum y = static_cast<double>(n) + x;
    CNum zn = zk * z;
    // integral_N^inf e^{tau t} (t+x)^{-s} dt = e^{-tau x} (-tau)^{s-1} Gamma(1-s, -tau y)
    CNum w = -tau * y;
    CNum integral;
    {
        // Re(-tau) >= 0 and y near the positive axis, so (-tau)^{s-1} w^{1-s} = y^{1-s}
        CNum G = upper_gamma_scaled(1.0 - s, w);
        integral = zn * std::exp((1.0 - s) * plog(y)) * G;
    }
    acc.add(integral);
    CNum ys = hurwitz_term(s, y);
    acc.add(0.5 * zn * ys);
    // derivatives g^{(m)}(N) = z^N sum_i C(m,i) tau^{m-i} (-1)^i (s)_i y^{-s-i}
    const int M = 21;
    std::array<CNum, M + 1> ds;  // (-1)^i (s)_i y^{-s-i}
    CNum p = ys;
    for (int i = 0; i <= M; ++i) {
        ds[i] = p;
        p *= -(s + static_cast<double>(i)) / y;
    }
    std::array<CNum, M + 1> taup;
    taup[0] = 1.0;
    for (int i = 1; i <= M; ++i) taup[i] = taup[i - 1] * tau;
    auto deriv = [&](int m) {
        CNum sum = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= m; ++i) {
            sum += binom * taup[m - i] * ds[i];
            binom = binom * (m - i) / (i + 1.0);
        }
        return zn * sum;
    };
    double fact = 2.0;
    CNum last = 0.0;
    for (int j = 1; j <= 10; ++j) {
        CNum term = -kBern[j] / fact * deriv(2 * j - 1);
        if (j == 10) {
            last = term;
            break;
        }
        acc.add(term);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    CNum v = acc.value();
    double err = std::abs(last) + 4.0 * kEps * acc.abs_sum;
    return {v, err, n, err <= ctl.tol * std::max(std::abs(v), 1e-300)};
}

}  // namespace

EvalResult lerch_phi(CNum s, CNum z, CNum x, const SeriesControl& ctl) {
    double az = std::abs(z);
    if (az > 1.0 + 1e-14) throw Error(ErrorKind::domain, "lerch_phi needs |z| <= 1", z);
    if (is_nonpositive_integer(x) && x.real() <= -1.0) throw Error(ErrorKind::domain, "lerch_phi at x in Z<0", x);
    if (z == CNum(0.0)) return {0.0, 0.0, 0, true};
    if (z == CNum(1.0)) {
        if (s.real() <= 1.0) throw Error(ErrorKind::domain, "lerch_phi(s, 1, x) diverges for Re s <= 1", s);
        return hurwitz_series(s, 1.0 + x, ctl);
    }
    bool on_circle = az >= 1.0 - 1e-14;
    if (on_circle && s.real() <= 0.0)
        throw Error(ErrorKind::domain, "lerch_phi on |z| = 1 diverges for Re s <= 0", s);
    EvalResult r;
    if (az <= 0.5)
        r = lerch_direct(s, z, x, ctl);
    else if (std::abs(1.0 - z) >= 0.5)
        r = lerch_abel(s, z, x, ctl);
    else
        r = lerch_em(s, z, x, ctl);
    r.value = checked(r.value, "lerch_phi");
    return r;
}

EvalResult polylog(CNum s, CNum z, const SeriesControl& ctl) { return lerch_phi(s, z, 0.0, ctl); }

}  // namespace zm
