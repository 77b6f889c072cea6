#pragma once

#include "zm/types.hpp"

namespace zm {

// Principal logarithm, Im in (-pi, pi]. The negative real axis maps to +i*pi
// regardless of the sign of a zero imaginary part.
CNum plog(CNum z);

// a^b = exp(b plog a); 0^b = 0 for Re b > 0.
CNum cpow(CNum a, CNum b);

// {z} = {Re z} + i Im z
CNum frac(CNum z);
// z - {z} = floor(Re z)
CNum floorc(CNum z);
double frac(double x);

// +1 for x >= 0, -1 otherwise
int sgn2(double x);

// log(4 sin^2(pi z)) through the decaying-exponential factorization
CNum logsin_split(CNum z);

// (1/2) logsin_split(z) - pi |Im z|, i.e. i pi (1/2 - {sigma Re z}) + log(1 - e^{i 2 pi sigma z})
CNum logsin_half_reduced(CNum z);

struct BranchPlan {
    double d_plus = 0.0;
    int d_minus = 1;
};

enum class DMinusRule { limit, statement };

BranchPlan branch_plan(CNum a, CNum b, double d, DMinusRule rule = DMinusRule::limit);

}  // namespace zm
