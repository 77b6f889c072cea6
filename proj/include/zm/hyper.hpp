#pragma once

#include <string>
#include <vector>

#include "zm/types.hpp"

namespace zm {

enum class Strategy { direct_series, recurrence_shifted, integral_route };

const char* strategy_name(Strategy s);

struct HyperEval {
    CNum value{};
    double abs_err = 0.0;
    Strategy strategy = Strategy::direct_series;
    std::int64_t terms = 0;
};

// which side of the cut [1, inf) a 2F1 argument lying on it is taken from
enum class CutSide { none, above, below };

HyperEval f0f1(CNum beta, CNum z, const SeriesControl& ctl = {});
HyperEval f1f1(CNum alpha, CNum beta, CNum z, const SeriesControl& ctl = {});
HyperEval f1f2(CNum alpha, CNum beta, CNum gammaP, CNum z, const SeriesControl& ctl = {});
HyperEval f2f1(CNum a, CNum b, CNum c, CNum z, CutSide side = CutSide::none, const SeriesControl& ctl = {});

// 2F1(1, beta; beta + 1; w) on the whole plane (cut side needed on (1, inf))
HyperEval f2f1_unit(CNum beta, CNum w, CutSide side = CutSide::none, const SeriesControl& ctl = {});

// direct 1F1 series is trusted for |z| up to this value; beyond, the integral route
inline constexpr double kF1F1DirectMax = 8.0;
// 1F2 refuses arguments with 2 sqrt|z| above this (the 1F1 argument scale)
inline constexpr double kF1F2ArgMax = 40.0;

// (pi / sin pi s) z^s  vs  z 2F1(1,1-s;2-s;-z)/(1-s) + 2F1(1,s;1+s;-1/z)/s
struct KummerSides {
    CNum lhs{};
    CNum rhs{};
    bool conjugated_power = false;
};
KummerSides kummer_sides(CNum s, CNum z);
double kummer_check(CNum s, CNum z);

// 1F1(-s;1-s;w) = -e^w sum_{m=1}^n (s)_m / w^m + ((s)_n / w^n) 1F1(-s-n;1-s-n;w)
HyperEval f1f1_shift(CNum s, CNum w, int n);

struct ShiftedF2F1 {
    // (ad/(1-s)) 2F1(1,1-s;2-s;-ad/bk) / bk
    //   = sum_{m=1}^{n-1} (ad)^m (m-1)! / ((1-s)_m (ad+bk)^m) + (n-1)! remainder / (1-s)_n
    HyperEval value;
    CNum remainder{};           // (ad)^n 2F1(n, n-s; 1-s+n; -ad/bk) / bk^n
    double remainder_bound = 0; // |(s-n)/(Re s-n)| |ad/bk|^n (1-eps)^{-n}, inf if not applicable
};
ShiftedF2F1 f2f1_shift(CNum s, CNum ad, CNum bk, int n);

// (a/(1-s)) 2F1(1,1-s;2-s;-a) = ((a/(1+a))/(1-s)) 2F1(1,1;2-s;a/(1+a))
HyperEval f2f1_pfaff_rhs(CNum s, CNum a);

struct IdentityResidual {
    std::string name;
    std::string point;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};
std::vector<IdentityResidual> hyper_identity_suite();

}  // namespace zm
