#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace thinsem {

// Exact integer and rational types used throughout. Entries of semigroup
// elements, discriminants and Pell solutions routinely exceed 64 bits
// (the worked-example discriminant is ~1e16 and products during exact
// verification go beyond that).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation would exceed its configured enumeration,
// memory or iteration budget.  Mapped to a distinct CLI exit code.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// floor(sqrt(n)) for n >= 0, exact.
inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw ValidationError("isqrt_floor: negative input");
    if (n == 0) return 0;
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt_floor(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// Floor division (rounds toward -infinity), valid for q != 0.
inline Int floor_div(const Int& a, const Int& q) {
    Int d = a / q, r = a % q;
    if (r != 0 && ((r < 0) != (q < 0))) --d;
    return d;
}

inline std::int64_t to_i64(const Int& n, const char* what = "value") {
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
        throw ValidationError(std::string(what) + " does not fit in 64 bits");
    return static_cast<std::int64_t>(n);
}

inline double to_double(const Int& n) { return static_cast<double>(n); }
inline double to_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace thinsem
