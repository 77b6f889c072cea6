#include "zm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "zm/branchc.hpp"
#include "zm/hyper.hpp"
#include "zm/quadrature.hpp"
#include "zm/special.hpp"

namespace zm {

namespace {

const CNum kI{0.0, 1.0};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_int(CNum z) { return z.imag() == 0.0 && z.real() == std::round(z.real()); }
double int_distance(CNum s) { return std::abs(s - std::round(s.real())); }

IdentityCase make_case(CNum s, CNum a, CNum b, CNum c, double d) {
    IdentityCase q;
    q.s = s;
    q.a = a;
    q.b = b;
    q.c = c;
    q.d = d;
    return q;
}

struct Job {
    std::string check;
    IdentityCase cs;
    int k = 0;
    double tol = 0.0;
    bool fixed_tol = false;
    // fills lhs, rhs, notes and optionally the residuals (a negative abs_resid means "compute")
    std::function<void(VerificationRecord&)> body;
};

VerificationRecord run_job(const Job& j, const std::string& suite, std::size_t index, const RunOptions& opt) {
    VerificationRecord r;
    r.suite = suite;
    r.index = index;
    r.check = j.check;
    r.cs = j.cs;
    r.k = j.k;
    r.tol = (opt.tol > 0.0 && !j.fixed_tol) ? opt.tol : j.tol;
    r.abs_resid = -1.0;
    try {
        j.body(r);
        if (r.abs_resid < 0.0) {
            r.abs_resid = std::abs(r.lhs - r.rhs);
            const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
            r.rel_resid = scale > 0.0 ? r.abs_resid / scale : 0.0;
        }
        finish_record(r);
    } catch (const Error& e) {
        r.lhs = r.rhs = CNum(kNaN, kNaN);
        r.abs_resid = r.rel_resid = kNaN;
        r.pass = false;
        r.notes = e.what();
    } catch (const std::exception& e) {
        r.lhs = r.rhs = CNum(kNaN, kNaN);
        r.abs_resid = r.rel_resid = kNaN;
        r.pass = false;
        r.notes = std::string("error: ") + e.what();
    }
    return r;
}

std::vector<double> real_points(const std::vector<CNum>& v) {
    std::vector<double> out;
    for (CNum z : v)
        if (z.imag() == 0.0) out.push_back(z.real());
    return out;
}

// ---------------------------------------------------------------- theorem1

std::vector<Job> theorem1_jobs(const GridSpec& g) {
    std::vector<Job> jobs;
    const auto as = real_points(g.a_points);
    const auto bs = real_points(g.b_points);
    auto add = [&](const std::string& check, const IdentityCase& q) {
        Job j;
        j.check = check;
        j.cs = q;
        j.tol = 1e-8;
        j.body = [q](VerificationRecord& r) {
            const IdentitySides sd = theorem1_check(q);
            r.lhs = sd.lhs;
            r.rhs = sd.rhs;
            r.notes = sd.notes;
        };
        jobs.push_back(std::move(j));
    };
    for (CNum s : g.s_points) {
        if (!(s.real() > 1.0) || int_distance(s) < g.exclusion_radius) continue;
        for (double a : as)
            for (double b : bs)
                for (double d : g.d_points) add("principal", make_case(s, a, b, 0.0, d));
    }
    for (CNum s : g.s_points) {
        if (!(s.real() < 1.0) || int_distance(s) < g.exclusion_radius) continue;
        for (double a : as)
            for (double b : bs) {
                if (is_int(b) && !(s.real() < 0.0)) continue;
                add("second", make_case(s, a, b, 0.0, 1.0));
            }
    }
    return jobs;
}

// ---------------------------------------------------------------- theorem2

constexpr double kTheorem2PoleRadius = 0.1;

std::vector<Job> theorem2_jobs(const GridSpec& g) {
    std::vector<Job> jobs;
    const auto as = real_points(g.a_points);
    const auto bs = real_points(g.b_points);
    auto add = [&](const std::string& check, const IdentityCase& q) {
        Job j;
        j.check = check;
        j.cs = q;
        j.tol = 1e-7;
        j.body = [q](VerificationRecord& r) {
            const IdentitySides sd = theorem2_check(q);
            r.lhs = sd.lhs;
            r.rhs = sd.rhs;
            r.notes = sd.notes;
        };
        jobs.push_back(std::move(j));
    };
    for (CNum s : g.s_points) {
        if (!(s.real() > 1.0) || int_distance(s) < std::max(kTheorem2PoleRadius, g.exclusion_radius)) continue;
        for (double a : as)
            for (double b : bs)
                for (double d : g.d_points) add("principal", make_case(s, a, b, 0.25, d));
    }
    std::vector<CNum> second{0.4};
    for (CNum s : g.s_points)
        if (s.real() < 1.0 && int_distance(s) >= kTheorem2PoleRadius && s != CNum(0.4)) second.push_back(s);
    for (CNum s : second)
        for (double a : as)
            for (double b : bs) {
                if (is_int(b)) continue;
                add("second", make_case(s, a, b, 0.25, 1.0));
            }
    return jobs;
}

// ---------------------------------------------------------------- convergence

std::vector<Job> convergence_jobs(const GridSpec& g, const RunOptions& opt) {
    std::vector<Job> jobs;
    SeriesControl ctl;
    ctl.max_terms = opt.max_terms;
    const auto as = real_points(g.a_points);
    const auto bs = real_points(g.b_points);

    // series against the quadrature oracle
    auto oracle_job = [&](const IdentityCase& q, double tol) {
        Job j;
        j.check = (q.a.imag() == 0.0 && q.b.imag() == 0.0) ? "oracle-real" : "oracle-complex";
        j.cs = q;
        j.tol = tol;
        j.body = [q, ctl](VerificationRecord& r) {
            OracleCase oc;
            oc.s = q.s;
            oc.a = q.a;
            oc.b = q.b;
            oc.c = q.c;
            oc.d = q.d;
            const QuadResult o = I_oracle(oc, 1e-9);
            r.lhs = I_series(q, ctl).value;
            r.rhs = o.value;
            std::ostringstream n;
            n.precision(3);
            n << "oracle err_est " << o.err_est;
            if (q.a.imag() != 0.0) {
                const BranchPlan st = q.plan(DMinusRule::statement);
                const BranchPlan pr = q.plan(DMinusRule::limit);
                if (st.d_minus != pr.d_minus) n << "; sgn(2 d+ Im a + Im b) rule gives d- = " << st.d_minus;
            }
            r.notes = n.str();
        };
        jobs.push_back(std::move(j));
    };
    for (CNum s : g.s_points) {
        if (!(s.real() > 0.0)) continue;
        for (double a : {as.front(), as.back()})
            for (double b : {bs.front(), bs[bs.size() / 2]})
                for (CNum c : g.c_points)
                    for (double d : {g.d_points.front(), g.d_points.back()}) oracle_job(make_case(s, a, b, c, d), 1e-6);
    }
    for (const auto& ab : g.complex_ab)
        for (CNum s : {CNum(1.5), CNum(0.8), CNum(2.5, 1.0)})
            for (CNum c : g.c_points) oracle_job(make_case(s, ab.first, ab.second, c, 1.0), 1e-5);

    // general assembly reduces to the real sum when Im a = Im b = 0
    for (CNum s : g.s_points)
        for (double a : as)
            for (double b : bs)
                for (CNum c : g.c_points)
                    for (double d : g.d_points) {
                        Job j;
                        j.check = "real-path";
                        j.cs = make_case(s, a, b, c, d);
                        j.tol = 1e-12;
                        const IdentityCase q = j.cs;
                        j.body = [q, ctl](VerificationRecord& r) {
                            r.lhs = I_series(q, ctl).value;
                            r.rhs = I_series_real(q, ctl).value;
                        };
                        jobs.push_back(std::move(j));
                    }

    // bounds v..ix: empirical sums must not exceed the bounds
    std::vector<IdentityCase> bcases;
    for (CNum s : g.s_points)
        for (double a : as)
            for (double b : bs)
                for (double d : g.d_points) bcases.push_back(make_case(s, a, b, 0.0, d));
    for (const auto& ab : g.complex_ab)
        for (CNum s : g.s_points) bcases.push_back(make_case(s, ab.first, ab.second, 0.0, 1.0));
    for (const IdentityCase& q : bcases) {
        static const char* items[] = {"v", "vi", "vii", "viii", "ix"};
        for (int i = 0; i < 5; ++i) {
            Job j;
            j.check = std::string("bound-") + items[i];
            j.cs = q;
            j.tol = 0.0;
            j.fixed_tol = true;
            j.body = [q, i](VerificationRecord& r) {
                const BoundCheck b = bound_checks(q)[i];
                r.lhs = b.empirical;
                r.rhs = b.bound;
                const double over = std::max(0.0, b.empirical - b.bound);
                r.abs_resid = b.applicable ? over : 0.0;
                r.rel_resid = b.applicable && std::isfinite(b.bound) ? over / std::max(1.0, b.bound) : 0.0;
                std::ostringstream n;
                n.precision(4);
                if (!b.applicable)
                    n << "not applicable in this regime";
                else
                    n << "empirical <= bound; margin " << b.margin;
                r.notes = n.str();
            };
            jobs.push_back(std::move(j));
        }
    }
    return jobs;
}

// ---------------------------------------------------------------- corollary-limit

std::vector<Job> corollary_limit_jobs(const GridSpec&, const RunOptions& opt) {
    std::vector<Job> jobs;
    SeriesControl ctl;
    ctl.max_terms = opt.max_terms;
    for (CNum s : {CNum(1.5), CNum(2.5, 1.0), CNum(-0.5), CNum(0.7, -0.3)})
        for (double a : {0.8, -0.7, 1.3})
            for (double delta : {0.5, 1.0}) {
                Job j;
                j.check = "decay";
                j.cs = make_case(s, a, CNum(0.3, 0.2), 0.25, 1.0);
                j.tol = std::log(2.0);
                j.fixed_tol = true;
                const IdentityCase q = j.cs;
                j.body = [q, delta, ctl](VerificationRecord& r) {
                    auto pair = [&](double ib) {
                        IdentityCase q1 = q;
                        q1.b = CNum(q.b.real(), ib);
                        IdentityCase q0 = q1;
                        q0.c = 0.0;
                        return std::abs(I_series(q1, ctl).value + kI * I_series(q0, ctl).value);
                    };
                    const double ratio = pair(q.b.imag() + delta) / pair(q.b.imag());
                    const double expect = std::exp(-2.0 * kPi * delta);
                    r.lhs = ratio;
                    r.rhs = expect;
                    r.abs_resid = r.rel_resid = std::abs(std::log(ratio / expect));
                    std::ostringstream n;
                    n << "ratio |I(1/4) + i I(0)| at Im b + " << delta << " over Im b; tol is a factor 2";
                    r.notes = n.str();
                };
                jobs.push_back(std::move(j));
            }
    return jobs;
}

// ---------------------------------------------------------------- hurwitz-identity

CNum li(CNum order, CNum z) { return polylog(order, z).value; }
CNum e2pi(double t) { return std::exp(2.0 * kPi * kI * frac(t)); }

std::vector<Job> hurwitz_jobs(const GridSpec& g) {
    std::vector<Job> jobs;
    const std::vector<CNum> cont_s{CNum(-2.9), CNum(-2.5, 0.7), CNum(-1.5), CNum(-0.5), CNum(0.5),
                                   CNum(0.3, 2.0), CNum(1.5, -1.0), CNum(2.5), CNum(3.0, 2.0), CNum(3.7, -0.4)};
    const std::pair<double, double> ad[] = {{1.0, 1.0}, {0.7, 2.0}, {1.3, 0.5}};
    int rot = 0;
    for (CNum s : cont_s)
        for (double b : {0.0, 0.1, 0.3, 0.7}) {
            const auto [a, d] = ad[rot++ % 3];
            Job j;
            j.check = "continuation";
            j.cs = make_case(s, a, b, 0.0, d);
            j.tol = 1e-9;
            j.body = [s, a, b, d](VerificationRecord& r) {
                r.lhs = hurwitz_continued(s, b, a, d).value;
                r.rhs = hurwitz_em(s, 1.0 - frac(b)).value;
                r.notes = "against Euler-Maclaurin";
            };
            jobs.push_back(std::move(j));
        }
    for (double b : {0.1, 0.3, 0.61, 0.7, 0.0}) {
        Job j;
        j.check = "value-at-zero";
        j.cs = make_case(0.0, 1.0, b, 0.0, 1.0);
        j.tol = 1e-8;
        j.body = [b](VerificationRecord& r) {
            r.lhs = hurwitz_continued(0.0, b).value;
            r.rhs = frac(b) - 0.5;
            r.notes = "zeta(0, 1 - {b}) = {b} - 1/2";
        };
        jobs.push_back(std::move(j));
    }
    {
        Job j;
        j.check = "zeta-minus-one";
        j.cs = make_case(-1.0, 1.0, 0.0, 0.0, 1.0);
        j.tol = 1e-9;
        j.body = [](VerificationRecord& r) {
            r.lhs = hurwitz_continued(-1.0, 0.0).value;
            r.rhs = -1.0 / 12.0;
            r.notes = "zeta(-1) = -1/12";
        };
        jobs.push_back(std::move(j));
    }
    std::vector<CNum> neg;
    for (CNum s : g.s_points)
        if (s.real() < 0.0 && int_distance(s) >= g.exclusion_radius) neg.push_back(s);
    neg.push_back(CNum(-0.3, 1.2));
    neg.push_back(CNum(-3.4, -0.6));
    for (CNum s : neg)
        for (double b : {0.1, 0.3, 0.7}) {
            Job j1;
            j1.check = "polylog-form";
            j1.cs = make_case(s, 1.0, b, 0.0, 1.0);
            j1.tol = 1e-9;
            j1.body = [s, b](VerificationRecord& r) {
                const CNum w = 1.0 - s;
                r.lhs = hurwitz_continued(s, b).value;
                r.rhs = gamma_value(w) / cpow(CNum(2.0 * kPi), w) *
                        (std::exp(kI * kPi / 2.0 * w) * li(w, e2pi(b)) + std::exp(-kI * kPi / 2.0 * w) * li(w, e2pi(-b)));
            };
            jobs.push_back(std::move(j1));
            Job j2;
            j2.check = "reflected-pair";
            j2.cs = j1.cs;
            j2.tol = 1e-9;
            j2.body = [s, b](VerificationRecord& r) {
                r.lhs = sinpi(s) * gamma_value(1.0 - s) * li(1.0 - s, e2pi(b)) /
                        (cpow(CNum(2.0), -s) * cpow(CNum(kPi), 1.0 - s));
                r.rhs = std::exp(-kI * kPi / 2.0 * s) * hurwitz_continued(s, b).value +
                        std::exp(kI * kPi / 2.0 * s) * hurwitz_continued(s, -b).value;
            };
            jobs.push_back(std::move(j2));
        }
    return jobs;
}

// ---------------------------------------------------------------- functional-equation

std::vector<Job> functional_equation_jobs(const GridSpec& g) {
    std::vector<Job> jobs;
    std::vector<CNum> ss;
    for (CNum s : g.s_points)
        if (s.real() > -2.0 && s.real() < 3.0) ss.push_back(s);
    for (CNum s : {CNum(-1.3, 2.0), CNum(0.3, 0.7), CNum(2.2, 1.0), CNum(-0.7, 0.4), CNum(0.5, 6.0)}) ss.push_back(s);
    const std::pair<double, double> ad[] = {{1.0, 1.0}, {0.7, 2.0}, {1.3, 0.5}};
    for (CNum s : ss) {
        if (int_distance(s) < g.exclusion_radius) continue;
        for (const auto& [a, d] : ad) {
            Job j;
            j.check = "riemann";
            j.cs = make_case(s, a, 0.0, 0.0, d);
            j.tol = 1e-9;
            j.body = [s, a = a, d = d](VerificationRecord& r) {
                r.lhs = hurwitz_continued(s, 0.0, a, d).value;
                r.rhs = cpow(CNum(2.0), s) * cpow(CNum(kPi), s - 1.0) * gamma_value(1.0 - s) * sinpi(s / 2.0) *
                        hurwitz_continued(1.0 - s, 0.0, a, d).value;
            };
            jobs.push_back(std::move(j));
        }
    }
    return jobs;
}

// ---------------------------------------------------------------- zero-characterization

std::vector<Job> zero_jobs(const GridSpec& g) {
    std::vector<Job> jobs;
    const CNum rho{2.0, 0.5};
    // first nontrivial zero, where the zeta-free identities must hold
    const CNum rho1{0.5, 14.134725141734693790};
    std::vector<double> apos;
    for (double a : real_points(g.a_points))
        if (a > 0.0) apos.push_back(a);
    for (CNum p : {rho, rho1})
        for (double a : apos)
            for (double d : g.d_points) {
                Job j;
                j.check = p == rho ? "fractional-part" : "fractional-part-at-zero";
                j.cs = make_case(p, a, 0.0, 0.0, d);
                j.tol = p == rho ? 1e-8 : 1e-10;
                j.body = [p, a, d](VerificationRecord& r) {
                    // zeta-free left side minus the series equals -(pi/p) a^p zeta(p)
                    IdentityCase q = make_case(p, a, 0.0, 0.0, d);
                    const CNum zeta = hurwitz_em(p, 1.0).value;
                    const CNum ap = cpow(CNum(a), p);
                    const CNum m_free = M_lhs(p, a, 0.0, d).value - ap * zeta;
                    r.lhs = kPi / p * m_free - I_series_real(q).value;
                    r.rhs = -kPi / p * ap * zeta;
                    r.notes = "measured discrepancy vs -(pi/rho) a^rho zeta(rho)";
                };
                jobs.push_back(std::move(j));
            }
    for (CNum p : {rho, rho1})
        for (double a : real_points(g.a_points))
            for (double d : g.d_points) {
                Job j;
                j.check = p == rho ? "log-sine" : "log-sine-at-zero";
                j.cs = make_case(p, a, 0.0, 0.25, d);
                j.tol = p == rho ? 1e-7 : 1e-10;
                j.body = [p, a, d](VerificationRecord& r) {
                    IdentityCase q = make_case(p, a, 0.0, 0.25, d);
                    r.lhs = H_lhs(p, a, 0.0, d).value + I_series_real(q).value;
                    r.rhs = -H_zeta_terms(p, a, 0.0);
                    r.notes = "measured discrepancy vs -(pi |a|^rho / rho) zeta(rho) (1/sin + 1/tan)";
                };
                jobs.push_back(std::move(j));
            }
    return jobs;
}

// ---------------------------------------------------------------- logsine-recurrence

std::vector<Job> logsine_jobs(const GridSpec& g) {
    std::vector<Job> jobs;
    {
        Job j;
        j.check = "ls-vanishing";
        j.cs = make_case(-1.0, 1.0, 0.0, 0.0, 1.0);
        j.k = 1;
        j.tol = 1e-10;
        j.body = [](VerificationRecord& r) {
            r.lhs = ls_closed(1, 1.0, 0.0, 1.0).value;
            r.rhs = 0.0;
        };
        jobs.push_back(std::move(j));
    }
    const auto as = real_points(g.a_points);
    const auto bs = real_points(g.b_points);
    for (int n : {1, 2, 3})
        for (double a : as)
            for (double b : bs)
                for (double d : g.d_points) {
                    Job j;
                    j.check = "ls-closed";
                    j.cs = make_case(-double(n), a, b, 0.0, d);
                    j.k = n;
                    j.tol = 1e-8;
                    j.body = [n, a, b, d](VerificationRecord& r) {
                        IntegrandSpec sp;
                        sp.kind = Kernel::log_sine;
                        sp.s = -double(n);
                        sp.a = a;
                        sp.b = b;
                        sp.lo = 0.0;
                        sp.hi = d;
                        sp.breakpoints = kernel_breakpoints(sp, sp.hi);
                        const QuadResult q = integrate(sp, 1e-12);
                        r.lhs = ls_closed(n, a, b, d).value;
                        r.rhs = -0.5 * q.value;
                        std::ostringstream o;
                        o.precision(3);
                        o << "quadrature err_est " << q.err_est;
                        r.notes = o.str();
                    };
                    jobs.push_back(std::move(j));
                }
    for (int n : {1, 2, 3})
        for (double a : as) {
            if (!(a > 0.0)) continue;
            for (double b : bs)
                for (double d : g.d_points) {
                    Job j;
                    j.check = "zeta-negative";
                    j.cs = make_case(-double(n), a, b, 0.0, d);
                    j.k = n;
                    j.tol = 1e-9;
                    j.body = [n, a, b, d](VerificationRecord& r) {
                        const IdentitySides sd = zeta_neg_recurrence(n, a, b, d);
                        r.lhs = sd.lhs;
                        r.rhs = sd.rhs;
                        r.notes = sd.notes;
                    };
                    jobs.push_back(std::move(j));
                }
        }
    return jobs;
}

// ---------------------------------------------------------------- hyper-identities

std::vector<Job> hyper_jobs() {
    std::vector<Job> jobs;
    const std::vector<IdentityResidual> res = hyper_identity_suite();
    for (const IdentityResidual& ir : res) {
        Job j;
        j.check = ir.name;
        j.tol = ir.tol;
        j.body = [ir](VerificationRecord& r) {
            r.lhs = std::isfinite(ir.residual) ? ir.residual : kNaN;
            r.rhs = 0.0;
            r.abs_resid = r.rel_resid = ir.residual;
            r.notes = "residual at " + ir.point;
        };
        jobs.push_back(std::move(j));
    }
    return jobs;
}

// ---------------------------------------------------------------- kummer

double unit_draw(std::mt19937_64& gen) { return double(gen() >> 11) * 0x1.0p-53; }

std::vector<Job> kummer_jobs(const GridSpec& g) {
    std::vector<Job> jobs;
    std::mt19937_64 gen(g.seed);
    auto kjob = [&](const std::string& check, CNum s, CNum z) {
        Job j;
        j.check = check;
        j.cs = make_case(s, z, 0.0, 0.0, 1.0);
        j.tol = 1e-9;
        j.body = [s, z](VerificationRecord& r) {
            const KummerSides k = kummer_sides(s, z);
            r.lhs = k.lhs;
            r.rhs = k.rhs;
            r.notes = k.conjugated_power ? "z = a; conjugated power on (-1, 0)" : "z = a";
        };
        jobs.push_back(std::move(j));
    };
    int made = 0;
    while (made < g.random_points) {
        const CNum s{-3.0 + 6.0 * unit_draw(gen), -3.0 + 6.0 * unit_draw(gen)};
        const double r = std::exp(std::log(0.1) + std::log(100.0) * unit_draw(gen));
        const double th = kPi * (2.0 * unit_draw(gen) - 1.0);
        if (int_distance(s) < g.exclusion_radius) continue;
        if (std::abs(th) > kPi - g.exclusion_radius) continue;
        kjob("random", s, std::polar(r, th));
        ++made;
    }
    for (CNum s : {CNum(0.4), CNum(0.3, 0.2), CNum(-1.7), CNum(2.6, -0.5)})
        for (double x : {-0.2, -0.5, -2.5, -4.0}) kjob("on-cut", s, x);
    return jobs;
}

// ---------------------------------------------------------------- oracle-consistency

std::vector<Job> oracle_jobs(const GridSpec& g) {
    std::vector<Job> jobs;
    const auto as = real_points(g.a_points);
    const auto bs = real_points(g.b_points);
    std::size_t rot = 0;
    for (CNum s : g.s_points) {
        if (!(s.real() < 0.0 && s.real() > -3.0)) continue;
        for (double a : as)
            for (double b : bs) {
                const double d = g.d_points[rot++ % g.d_points.size()];
                for (int k : {1, 2, 3, 5, 8, 13, 20}) {
                    Job j;
                    j.check = "sine-integral";
                    j.cs = make_case(s, a, b, 0.0, d);
                    j.k = k;
                    j.tol = 1e-8;
                    const IdentityCase q = j.cs;
                    j.body = [q, k](VerificationRecord& r) {
                        IntegrandSpec sp;
                        sp.kind = Kernel::sin_kernel;
                        sp.s = q.s;
                        sp.a = q.a;
                        sp.b = q.b;
                        sp.c = q.c;
                        sp.k = k;
                        sp.lo = 0.0;
                        sp.hi = q.d;
                        r.lhs = f_sk(q, k).value;
                        r.rhs = -integrate(sp, 1e-12).value / double(k);
                        r.notes = "f_{s,k} vs -(1/k) finite sine integral";
                    };
                    jobs.push_back(std::move(j));
                }
            }
    }
    for (CNum s : g.s_points) {
        if (!(s.real() > -0.9 && s.real() < 3.0)) continue;
        for (double a : as)
            for (double b : {bs.front(), bs.back()})
                for (CNum c : g.c_points) {
                    const double d = g.d_points[rot++ % g.d_points.size()];
                    for (int k : {1, 7, 20}) {
                        Job j;
                        j.check = "sine-tail";
                        j.cs = make_case(s, a, b, c, d);
                        j.k = k;
                        j.tol = 1e-7;
                        const IdentityCase q = j.cs;
                        j.body = [q, k](VerificationRecord& r) {
                            IntegrandSpec sp;
                            sp.kind = Kernel::sin_kernel;
                            sp.s = q.s;
                            sp.a = q.a;
                            sp.b = q.b;
                            sp.c = q.c;
                            sp.k = k;
                            sp.lo = q.d;
                            r.lhs = F_sk(q, k).value;
                            r.rhs = integrate(sp, 1e-10).value / double(k);
                            r.notes = "F_{s,k} vs (1/k) sine tail integral";
                        };
                        jobs.push_back(std::move(j));
                    }
                }
    }
    for (double s : {-0.3, -0.5, -0.7})
        for (double a : {1.0, -1.0, 2.0 * kPi, -2.0 * kPi}) {
            Job j;
            j.check = "gamma-integral";
            j.cs = make_case(s, a, 0.0, 0.0, 0.0);
            j.tol = 1e-8;
            j.body = [s, a](VerificationRecord& r) {
                IntegrandSpec sp;
                sp.kind = Kernel::exp_kernel;
                sp.s = s;
                sp.a = a;
                r.lhs = integrate(sp, 1e-10).value;
                r.rhs = cpow(CNum(0.0, -a), CNum(s)) * gamma_value(-s);
                r.notes = "int_0^inf e^{iax} x^{-s-1} dx vs (-ia)^s Gamma(-s)";
            };
            jobs.push_back(std::move(j));
        }
    {
        Job j;
        j.check = "mellin-zeta";
        j.cs = make_case(2.0, 1.0, 0.0, 0.0, 1.0);
        j.tol = 1e-9;
        j.body = [](VerificationRecord& r) {
            IntegrandSpec sp;
            sp.kind = Kernel::frac_part;
            sp.s = 2.0;
            sp.lo = 1.0;
            r.lhs = 2.0 / kPi * integrate(sp, 1e-12).value;
            r.rhs = kPi * kPi / 6.0 - 2.0 + 0.5;
            r.notes = "s int_1^inf (1/2 - {x}) x^{-s-1} dx = zeta(2) - 3/2 at s = 2";
        };
        jobs.push_back(std::move(j));
    }
    for (CNum s : g.s_points) {
        if (!(s.real() > 1.0)) continue;
        for (double a : {as.front(), as.back()})
            for (double b : {bs.front(), bs.back()})
                for (double d : {g.d_points.front(), g.d_points.back()}) {
                    Job j;
                    j.check = "mellin-frac";
                    j.cs = make_case(s, a, b, 0.0, d);
                    j.tol = 1e-9;
                    j.body = [s, a, b, d](VerificationRecord& r) {
                        IntegrandSpec sp;
                        sp.kind = Kernel::frac_part;
                        sp.s = s;
                        sp.a = a;
                        sp.b = b;
                        sp.lo = d;
                        r.lhs = M_lhs(s, a, b, d).value;
                        r.rhs = s / kPi * integrate(sp, 1e-12).value;
                        r.notes = "closed form vs s int_d^inf (1/2 - {ax+b}) x^{-s-1} dx";
                    };
                    jobs.push_back(std::move(j));
                }
    }
    return jobs;
}

const std::vector<SuiteInfo>& suites_static() {
    static const std::vector<SuiteInfo> v = {
        {"theorem1", "fractional-part Mellin identity vs the f+g series, both regimes and both signs of a"},
        {"theorem2", "log-sine identity H + zeta terms vs the series at c = 1/4, both regimes"},
        {"convergence", "I_s series vs quadrature, real-path reduction, bounds v..ix"},
        {"corollary-limit", "exponential approach of I(1/4) to -i I(0) as Im b grows"},
        {"hurwitz-identity", "continued Hurwitz zeta vs Euler-Maclaurin and the polylogarithm forms"},
        {"functional-equation", "Riemann functional equation through the continuation"},
        {"zero-characterization", "zeta-free identities off and at a zero of zeta"},
        {"logsine-recurrence", "generalized log-sine closed forms and zeta at negative integers"},
        {"hyper-identities", "1F1 reflection, 1F2 forms, 2F1 Pfaff and shift identities"},
        {"kummer", "Kummer connection relation on random points and on the cut"},
        {"oracle-consistency", "termwise sine integrals, Gamma integral and Mellin fractional-part integrals"},
    };
    return v;
}

}  // namespace

GridSpec default_grid() {
    GridSpec g;
    g.s_points = {CNum(2.5), CNum(3.0, 2.0), CNum(1.5, -1.0), CNum(0.5), CNum(-0.5), CNum(-1.5), CNum(-2.5, 0.7)};
    g.a_points = {CNum(-0.7), CNum(0.7), CNum(1.0), CNum(1.3)};
    g.b_points = {CNum(0.0), CNum(0.25), CNum(0.3), CNum(0.61)};
    g.c_points = {CNum(0.0), CNum(0.25)};
    g.d_points = {0.5, 1.0, 2.0};
    g.complex_ab = {{CNum(1.0, 0.5), CNum(0.2, -2.0)},
                    {CNum(1.0, 1.0), CNum(0.3, -2.0)},
                    {CNum(1.0, 0.5), CNum(0.3, 0.2)},
                    {CNum(0.7), CNum(0.1, -0.4)},
                    {CNum(-0.8), CNum(0.3, 1.0)}};
    return g;
}

void finish_record(VerificationRecord& r) {
    const double measure = std::abs(r.lhs) < 1.0 ? r.abs_resid : r.rel_resid;
    r.pass = std::isfinite(measure) && measure <= r.tol;
}

const std::vector<SuiteInfo>& suite_list() { return suites_static(); }

Report run_suite(const std::string& id, const GridSpec& grid, const RunOptions& opt) {
    std::vector<Job> jobs;
    if (id == "theorem1")
        jobs = theorem1_jobs(grid);
    else if (id == "theorem2")
        jobs = theorem2_jobs(grid);
    else if (id == "convergence")
        jobs = convergence_jobs(grid, opt);
    else if (id == "corollary-limit")
        jobs = corollary_limit_jobs(grid, opt);
    else if (id == "hurwitz-identity")
        jobs = hurwitz_jobs(grid);
    else if (id == "functional-equation")
        jobs = functional_equation_jobs(grid);
    else if (id == "zero-characterization")
        jobs = zero_jobs(grid);
    else if (id == "logsine-recurrence")
        jobs = logsine_jobs(grid);
    else if (id == "hyper-identities")
        jobs = hyper_jobs();
    else if (id == "kummer")
        jobs = kummer_jobs(grid);
    else if (id == "oracle-consistency")
        jobs = oracle_jobs(grid);
    else
        throw Error(ErrorKind::usage, "unknown suite '" + id + "'");

    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.suite = id;
    rep.records.resize(jobs.size());
    const int nthreads = std::max(1, std::min<int>(opt.threads, int(jobs.size())));
    if (nthreads == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) rep.records[i] = run_job(jobs[i], id, i, opt);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < jobs.size(); i = next++) rep.records[i] = run_job(jobs[i], id, i, opt);
            });
        for (auto& th : pool) th.join();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    rep.summary.cases = rep.records.size();
    for (const auto& r : rep.records) {
        if (r.pass) ++rep.summary.passes;
        if (std::isfinite(r.rel_resid))
            rep.summary.max_rel_resid = std::max(rep.summary.max_rel_resid, r.rel_resid);
        else
            rep.summary.max_rel_resid = std::numeric_limits<double>::infinity();
    }
    if (opt.timing) rep.summary.seconds = secs;
    return rep;
}

Format parse_format(const std::string& name) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    if (name == "plain") return Format::plain;
    throw Error(ErrorKind::usage, "unknown format '" + name + "' (json, csv, plain)");
}

// ---------------------------------------------------------------- serialization

namespace {

std::string num(double x) {
    if (std::isnan(x)) return "\"nan\"";
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string out = buf;
    // keep integral values floating so -0 survives parsing
    if (out.find_first_of(".e") == std::string::npos) out += ".0";
    return out;
}

std::string csv_num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string jstr(const std::string& s) { return nlohmann::json(s).dump(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

const std::vector<std::pair<const char*, std::function<double(const VerificationRecord&)>>>& numeric_fields() {
    static const std::vector<std::pair<const char*, std::function<double(const VerificationRecord&)>>> f = {
        {"s_re", [](const VerificationRecord& r) { return r.cs.s.real(); }},
        {"s_im", [](const VerificationRecord& r) { return r.cs.s.imag(); }},
        {"a_re", [](const VerificationRecord& r) { return r.cs.a.real(); }},
        {"a_im", [](const VerificationRecord& r) { return r.cs.a.imag(); }},
        {"b_re", [](const VerificationRecord& r) { return r.cs.b.real(); }},
        {"b_im", [](const VerificationRecord& r) { return r.cs.b.imag(); }},
        {"c_re", [](const VerificationRecord& r) { return r.cs.c.real(); }},
        {"c_im", [](const VerificationRecord& r) { return r.cs.c.imag(); }},
        {"d", [](const VerificationRecord& r) { return r.cs.d; }},
        {"lhs_re", [](const VerificationRecord& r) { return r.lhs.real(); }},
        {"lhs_im", [](const VerificationRecord& r) { return r.lhs.imag(); }},
        {"rhs_re", [](const VerificationRecord& r) { return r.rhs.real(); }},
        {"rhs_im", [](const VerificationRecord& r) { return r.rhs.imag(); }},
        {"abs_resid", [](const VerificationRecord& r) { return r.abs_resid; }},
        {"rel_resid", [](const VerificationRecord& r) { return r.rel_resid; }},
        {"tol", [](const VerificationRecord& r) { return r.tol; }},
    };
    return f;
}

}  // namespace

void emit(const Report& r, Format f, std::ostream& out) {
    if (f == Format::json) {
        out << "{\n  \"suite\": " << jstr(r.suite) << ",\n  \"summary\": {\"cases\": " << r.summary.cases
            << ", \"passes\": " << r.summary.passes << ", \"max_rel_resid\": " << num(r.summary.max_rel_resid)
            << ", \"seconds\": " << (r.summary.seconds ? num(*r.summary.seconds) : std::string("null")) << "},\n";
        out << "  \"records\": [";
        for (std::size_t i = 0; i < r.records.size(); ++i) {
            const VerificationRecord& v = r.records[i];
            out << (i ? ",\n    {" : "\n    {");
            out << "\"index\": " << v.index << ", \"check\": " << jstr(v.check);
            for (const auto& [name, get] : numeric_fields()) {
                if (std::string(name) == "lhs_re") out << ", \"k\": " << v.k;
                out << ", \"" << name << "\": " << num(get(v));
            }
            out << ", \"pass\": " << (v.pass ? "true" : "false") << ", \"notes\": " << jstr(v.notes) << "}";
        }
        out << (r.records.empty() ? "]\n}\n" : "\n  ]\n}\n");
        return;
    }
    if (f == Format::csv) {
        out << "suite,index,check";
        for (const auto& [name, get] : numeric_fields()) {
            if (std::string(name) == "lhs_re") out << ",k";
            out << "," << name;
        }
        out << ",pass,notes\n";
        for (const VerificationRecord& v : r.records) {
            out << csv_field(r.suite) << "," << v.index << "," << csv_field(v.check);
            for (const auto& [name, get] : numeric_fields()) {
                if (std::string(name) == "lhs_re") out << "," << v.k;
                out << "," << csv_num(get(v));
            }
            out << "," << (v.pass ? "true" : "false") << "," << csv_field(v.notes) << "\n";
        }
        return;
    }
    for (const VerificationRecord& v : r.records) {
        if (v.pass) continue;
        out << "FAIL " << r.suite << " #" << v.index << " " << v.check << " " << describe(v.cs);
        if (v.k) out << " k=" << v.k;
        out << " rel_resid=" << csv_num(v.rel_resid) << " " << v.notes << "\n";
    }
    out << r.suite << ": " << r.summary.passes << "/" << r.summary.cases << " passed, max rel resid "
        << csv_num(r.summary.max_rel_resid);
    if (r.summary.seconds) out << ", " << csv_num(*r.summary.seconds) << " s";
    out << "\n";
}

std::string emit_string(const Report& r, Format f) {
    std::ostringstream o;
    emit(r, f, o);
    return o.str();
}

Report parse_report_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::io, std::string("report parse: ") + e.what());
    }
    auto number = [](const nlohmann::json& v) -> double {
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            if (s == "nan") return kNaN;
            if (s == "inf") return std::numeric_limits<double>::infinity();
            if (s == "-inf") return -std::numeric_limits<double>::infinity();
            throw Error(ErrorKind::io, "report parse: bad number '" + s + "'");
        }
        return v.get<double>();
    };
    Report r;
    try {
        r.suite = j.at("suite").get<std::string>();
        const auto& sm = j.at("summary");
        r.summary.cases = sm.at("cases").get<std::size_t>();
        r.summary.passes = sm.at("passes").get<std::size_t>();
        r.summary.max_rel_resid = number(sm.at("max_rel_resid"));
        if (!sm.at("seconds").is_null()) r.summary.seconds = number(sm.at("seconds"));
        for (const auto& e : j.at("records")) {
            VerificationRecord v;
            v.suite = r.suite;
            v.index = e.at("index").get<std::size_t>();
            v.check = e.at("check").get<std::string>();
            v.k = e.at("k").get<int>();
            std::map<std::string, double> f;
            for (const auto& [name, get] : numeric_fields()) f[name] = number(e.at(name));
            v.cs.s = {f["s_re"], f["s_im"]};
            v.cs.a = {f["a_re"], f["a_im"]};
            v.cs.b = {f["b_re"], f["b_im"]};
            v.cs.c = {f["c_re"], f["c_im"]};
            v.cs.d = f["d"];
            v.lhs = {f["lhs_re"], f["lhs_im"]};
            v.rhs = {f["rhs_re"], f["rhs_im"]};
            v.abs_resid = f["abs_resid"];
            v.rel_resid = f["rel_resid"];
            v.tol = f["tol"];
            v.pass = e.at("pass").get<bool>();
            v.notes = e.at("notes").get<std::string>();
            r.records.push_back(std::move(v));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::io, std::string("report parse: ") + e.what());
    }
    return r;
}

CNum parse_complex(const std::string& text) {
    auto bad = [&] { return Error(ErrorKind::usage, "not a complex literal: '" + text + "'"); };
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw bad();
    // one signed number, optionally followed by 'i'; "i" alone means 1
    auto term = [&](std::size_t& pos, double& val, bool& imag) {
        double sign = 1.0;
        if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) sign = t[pos++] == '-' ? -1.0 : 1.0;
        if (pos < t.size() && t[pos] == 'i') {
            val = sign;
            imag = true;
            ++pos;
            return;
        }
        if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) throw bad();
        const char* b = t.c_str() + pos;
        char* e = nullptr;
        const double v = std::strtod(b, &e);
        if (e == b) throw bad();
        const std::string body(b, static_cast<const char*>(e));
        if (body.find_first_of("nN") != std::string::npos || body.find("x") != std::string::npos) throw bad();
        pos += std::size_t(e - b);
        val = sign * v;
        imag = pos < t.size() && t[pos] == 'i';
        if (imag) ++pos;
    };
    std::size_t pos = 0;
    double v1 = 0.0, v2 = 0.0;
    bool i1 = false, i2 = false;
    term(pos, v1, i1);
    if (pos == t.size()) return i1 ? CNum(0.0, v1) : CNum(v1, 0.0);
    if (i1 || (t[pos] != '+' && t[pos] != '-')) throw bad();
    term(pos, v2, i2);
    if (pos != t.size() || !i2) throw bad();
    return {v1, v2};
}

}  // namespace zm
