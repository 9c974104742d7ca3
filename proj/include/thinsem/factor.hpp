#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "thinsem/numeric.hpp"

namespace thinsem {

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

bool is_prime(const Int& n);

// Prime factorization by trial division up to 1e7 plus deterministic
// primality testing of the cofactor.  Inputs whose cofactor cannot be
// resolved at desk scale (two unknown large prime factors that would
// need to be split) are handled where only Omega / square-free data is
// required; factor() itself throws BudgetError in that case.
std::vector<std::pair<Int, int>> factor(const Int& n);

// Number of prime factors counted with multiplicity.  Works for any
// n <= ~1e20 even when the large cofactor cannot be split (a residual
// semiprime contributes 2 without being factored).
int almost_prime_class(const Int& n);

inline bool is_almost_prime(const Int& n, int R) { return almost_prime_class(n) <= R; }

struct SquarefreeDecomposition {
    Int sqf;           // square-free part
    Int cofactorRoot;  // n = sqf * cofactorRoot^2
};

SquarefreeDecomposition squarefree_part(const Int& n);

// sqf if sqf = 1 (mod 4), else 4*sqf; the discriminant of the quadratic
// field generated by sqrt(sqf).
inline Int fundamental_discriminant_from_sqf(const Int& sqf) {
    Int m4 = sqf % 4;
    if (m4 < 0) m4 += 4;
    return (m4 == 1) ? sqf : 4 * sqf;
}

bool is_squarefree(const Int& n);

// Moebius function of a square-free positive integer given its prime count.
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

}  // namespace thinsem
