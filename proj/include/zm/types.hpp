#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace zm {

using CNum = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kLog2Pi = 1.83787706640934548356065947281123527;

enum class ErrorKind { domain, pole, convergence, branch, regime, cancellation, usage, bound, io };

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::optional<CNum> where = std::nullopt);
    ErrorKind kind() const { return kind_; }
    // the offending point, e.g. the pole hit by gamma
    std::optional<CNum> where() const { return where_; }

private:
    ErrorKind kind_;
    std::optional<CNum> where_;
};

struct EvalResult {
    CNum value{};
    double abs_err = 0.0;
    std::int64_t terms = 0;
    bool converged = true;
};

struct SeriesControl {
    double tol = 1e-12;
    std::int64_t max_terms = 1000000;
    int consecutive_small = 3;
};

// throws domain errors on NaN/Inf so nothing non-finite leaves the library
CNum checked(CNum z, const char* where);

inline bool is_finite(CNum z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace zm
