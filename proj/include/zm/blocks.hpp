#pragma once

#include <string>
#include <vector>

#include "zm/branchc.hpp"
#include "zm/types.hpp"

namespace zm {

struct Validity {
    bool re_s_gt_1 = false;
    bool a_real = false;
    bool b_real = false;
    bool b_integer = false;
    bool adb_integer = false;
    bool re_a_nonzero = false;
};

struct IdentityCase {
    CNum s{}, a{1.0}, b{}, c{};
    double d = 1.0;
    BranchPlan plan(DMinusRule rule = DMinusRule::limit) const { return branch_plan(a, b, d, rule); }
    Validity validity() const;
};

std::string describe(const IdentityCase& cs);

struct TailBoundParams {
    int k0 = 1;
    double eps = 0.0;
};
// k0: first k where 1 - (2 pi |a| k)^{1 + Re s} changes sign, else 1
TailBoundParams tail_bound_params(CNum s, CNum a, double eps = 0.0);

struct LogSinePlan {
    long n0 = 0, n1 = 1, n2 = 0;
    int omega = 0;
    std::vector<double> breakpoints;
};
// breakpoints Re(ax+b) in Z inside (0, d)
LogSinePlan logsine_plan_finite(const IdentityCase& cs);
// breakpoints inside (d, x_max); n1 is the first index, n2 the last listed
LogSinePlan logsine_plan_tail(const IdentityCase& cs, double x_max);

// f_{s,k}(a,b,c,d) and its cosine (1) and sine (2) parts; 1F2 for 2 pi |a| d k <= 8,
// the 1F1 pair otherwise
EvalResult f_sk(const IdentityCase& cs, int k);
EvalResult f_sk1(const IdentityCase& cs, int k);
EvalResult f_sk2(const IdentityCase& cs, int k);
EvalResult g_sk(CNum s, CNum a, CNum b, CNum c, int k);
// f_{s,k} + g_{s,k}
EvalResult F_sk(const IdentityCase& cs, int k);
// F_{s,k}(a,b,c+1/4,d) + i F_{s,k}(a,b,c,d)
EvalResult F_pair(const IdentityCase& cs, int k);
// the same pair after n integration-by-parts steps; n = 0 is F_pair
EvalResult F_shift(const IdentityCase& cs, int k, int n);
// int_x^inf e^{i alpha t} t^{-s-1} dt, continued in s
CNum mellin_exp_tail(CNum s, CNum alpha, double x);

// I_s(a,b,c,d) through the d+, d- assembly
EvalResult I_series(const IdentityCase& cs, const SeriesControl& ctl = {});
// sum_k f_{s,k} + g_{s,k} for real a, b
EvalResult I_series_real(const IdentityCase& cs, const SeriesControl& ctl = {});
// sum_k g_{s,k}(a,b,c) in closed form (Re s < 1 for b not in Z, Re s < 0 otherwise)
EvalResult g_sum(CNum s, CNum a, CNum b, CNum c);

CNum h_sk(CNum s, CNum a, CNum b, int k);
double h_s(CNum s, CNum a, CNum b, double d, const TailBoundParams& tb);

struct BoundCheck {
    std::string item;
    double empirical = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool applicable = true;
};
// items v..ix; inapplicable regimes are reported with applicable = false
std::vector<BoundCheck> bound_checks(const IdentityCase& cs);

// s (int_1^{(1-{b})/a} - int_1^d) floor(ax + {b}) x^{-s-1} dx, a > 0
EvalResult R_remainder(CNum s, double a, double b, double d);
// s int_d^inf (1/2 - {ax+b}) x^{-s-1} dx in closed form; lemma_sign flips ads/(s-1) to ads/(1-s)
EvalResult M_lhs(CNum s, double a, double b, double d, bool lemma_sign = false);

// int_0^d log(4 sin^2(pi(ax+b))) x^{-s-1} dx, Re s < 0
EvalResult logsine_mellin_finite(const IdentityCase& cs);
// int_d^inf log(4 sin^2(pi(ax+b))) x^{-s-1} dx, Re s > 1, real a and b
EvalResult logsine_mellin_tail(const IdentityCase& cs);

EvalResult H_lhs(CNum s, double a, double b, double d);
// (pi |a|^s / s)(zeta(s,1-{-b sgn a})/sin(pi s) + zeta(s,1-{b sgn a})/tan(pi s))
CNum H_zeta_terms(CNum s, double a, double b);

struct IdentitySides {
    CNum lhs{}, rhs{};
    double abs_resid = 0.0;
    double rel_resid = 0.0;
    std::string notes;
};
IdentitySides make_sides(CNum lhs, CNum rhs, std::string notes = {});

// principal identity for Re s > 1, second identity otherwise (d forced to 1)
IdentitySides theorem1_check(const IdentityCase& cs);
// log-sine identity; second display when Re s < 1 (d forced to 1)
IdentitySides theorem2_check(const IdentityCase& cs);

// zeta(s, 1 - {b}) solved from the fractional-part identity, a > 0
EvalResult hurwitz_continued(CNum s, double b, double a = 1.0, double d = 1.0);
// (d/ds) zeta(s, 1-{b}) at s = 0 by a circle mean
EvalResult hurwitz_derivative_at_zero(double b, double a = 1.0, double d = 1.0);
// zeta(s, 1-{b}) + 1/(1-s) at s = 1 by a circle mean
EvalResult hurwitz_regular_at_one(double b, double a = 1.0, double d = 1.0);

// -1/2 int_0^d log(4 sin^2(pi(ax+b))) x^{n-1} dx via polylogarithms
EvalResult ls_closed(int n, double a, double b, double d);
// zeta(-n, 1-{b}) identity: lhs with R, rhs polylog sum (a > 0)
IdentitySides zeta_neg_recurrence(int n, double a, double b, double d);

// mean of f over s0 + r i^j, j = 0..3: the value at s0 up to O(r^4) for holomorphic f
template <class F>
CNum circle_mean(F&& f, CNum s0, double r = 1e-3) {
    const CNum dirs[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    CNum acc{};
    for (const CNum& u : dirs) acc += f(s0 + r * u);
    return acc / 4.0;
}

}  // namespace zm
