#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>

#include "thinsem/numeric.hpp"

namespace thinsem {

// 2x2 integer matrix (a b; c d) with exact arithmetic.
struct Mat2 {
    Int a, b, c, d;

    Mat2() : a(1), b(0), c(0), d(1) {}
    Mat2(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2 identity() { return Mat2(); }

    // Generator (g 1; 1 0) of the continued-fraction semigroup.
    static Mat2 generator(std::int64_t g) { return Mat2(Int(g), 1, 1, 0); }

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
    Int norm_sq() const { return a * a + b * b + c * c + d * d; }
    double norm() const { return std::sqrt(to_double(norm_sq())); }

    Mat2 operator*(const Mat2& o) const {
        return Mat2(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
    }

    bool operator==(const Mat2& o) const = default;

    Mat2 pow(unsigned e) const {
        Mat2 r = identity(), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }
};

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "(" << m.a << " " << m.b << "; " << m.c << " " << m.d << ")";
}

// Fixed-width mirror used by enumeration kernels; callers guarantee the
// norm bound keeps every intermediate product inside 64 bits.
struct Mat2i {
    std::int64_t a, b, c, d;

    static Mat2i identity() { return {1, 0, 0, 1}; }
    std::int64_t trace() const { return a + d; }
    std::int64_t norm_sq() const { return a * a + b * b + c * c + d * d; }

    // Right-multiplication by the generator (g 1; 1 0).
    Mat2i times_generator(std::int64_t g) const { return {g * a + b, a, g * c + d, c}; }

    Mat2 to_mat2() const { return Mat2(Int(a), Int(b), Int(c), Int(d)); }
};

}  // namespace thinsem
