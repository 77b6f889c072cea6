#pragma once

#include "zm/types.hpp"

namespace zm {

// compensated complex accumulator (Neumaier, per component)
struct CompensatedSum {
    CNum sum{};
    CNum comp{};
    double abs_sum = 0.0;
    void add(CNum x);
    CNum value() const { return sum + comp; }
};

// sin(pi z), cos(pi z), cot(pi z) with exact reduction of Re z
CNum sinpi(CNum z);
CNum cospi(CNum z);
double sinpi(double x);
double cospi(double x);

bool is_nonpositive_integer(CNum z);

// raw values; these throw the same errors as the EvalResult versions
CNum gamma_value(CNum z);
// log Gamma up to a multiple of 2 pi i; meant for exp(lgamma(x) - lgamma(y)) ratios
CNum lgamma_any(CNum z);
CNum digamma_value(CNum z);
CNum rgamma_value(CNum z);  // 1/Gamma, entire

EvalResult gamma(CNum z);
EvalResult digamma(CNum z);

// rising factorial (x)_n; direct product up to n = 64, gamma ratio above
CNum pochhammer(CNum x, long n);

EvalResult hurwitz_series(CNum s, CNum x, const SeriesControl& ctl = {});
EvalResult hurwitz_em(CNum s, double x);
EvalResult hurwitz_em(CNum s, CNum x);

// Phi_s(z, x) = sum_{k>=1} z^k (k + x)^{-s}
EvalResult lerch_phi(CNum s, CNum z, CNum x, const SeriesControl& ctl = {});
// Li_s(z) = sum_{k>=1} z^k k^{-s}
EvalResult polylog(CNum s, CNum z, const SeriesControl& ctl = {});

// e^{z} z^{-nu} Gamma(nu, z), principal branches; bounded for large |z|
CNum upper_gamma_scaled(CNum nu, CNum z);
// Gamma(nu, z) with principal z^nu
CNum upper_gamma(CNum nu, CNum z);

// Bernoulli numbers B_2 .. B_20 as doubles, index j gives B_{2j}
double bernoulli2(int j);

}  // namespace zm
