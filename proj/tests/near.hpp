#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "zm/types.hpp"

namespace zm::test {

inline double rel_diff(CNum got, CNum want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// |got - want| <= tol * max(1, |want|)
inline bool near(CNum got, CNum want, double tol) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

// splitmix64, for hand-rolled property generators
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * (next() >> 11) * 0x1.0p-53; }
};

}  // namespace zm::test
