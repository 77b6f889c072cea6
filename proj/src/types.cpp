#include "zm/types.hpp"

namespace zm {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::pole: return "pole";
        case ErrorKind::convergence: return "convergence";
        case ErrorKind::branch: return "branch";
        case ErrorKind::regime: return "regime";
        case ErrorKind::cancellation: return "cancellation";
        case ErrorKind::usage: return "usage";
        case ErrorKind::bound: return "bound";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::optional<CNum> where)
    : std::runtime_error(std::string(kind_name(kind)) + " error: " + what), kind_(kind), where_(where) {}

CNum checked(CNum z, const char* where) {
    if (!is_finite(z)) throw Error(ErrorKind::domain, std::string("non-finite result in ") + where);
    return z;
}

}  // namespace zm
