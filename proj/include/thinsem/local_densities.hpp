#pragma once

#include <cstdint>
#include <vector>

#include "thinsem/numeric.hpp"

namespace thinsem {

// Dirichlet character mod 4.
inline int chi4(const Int& n) {
    Int m = n % 4;
    if (m < 0) m += 4;
    if (m == 0 || m == 2) return 0;
    return m == 1 ? 1 : -1;
}

// |SL_2(Z/q)| = q^3 prod_{p|q} (1 - p^-2) for square-free q.
Int sl2_size(const Int& q);

// beta(p) = (1/p)(1 + chi4(p)/p)(1 - 1/p^2)^-1, multiplicative over the
// prime factors of square-free q; the density of trace zero in SL_2(q).
Rat beta_prime(const Int& p);
Rat beta(const Int& q);

// rho(p) = p(p + chi4(p))/(p^2 - 1) - 1; satisfies 1 + rho(p) = p*beta(p).
Rat rho(const Int& p);

// #{g in SL_2(F_p) : tr g = 0} by literal enumeration of all p^4 matrices.
// The independent oracle for beta; p <= 31.
std::int64_t trace_zero_count_bruteforce(std::int64_t p);

// #{g in SL_2(Z/q)} by literal enumeration, for cross-checking sl2_size.
std::int64_t sl2_size_bruteforce(std::int64_t q);

// prod_{w <= p < z} (1 - beta(p))^-1 * (log w / log z).
double sieve_condition_ratio(double w, double z);

struct LocalDensity {
    Int q;
    Rat betaValue;
    std::vector<std::pair<Int, Rat>> rhoPerPrime;
    std::vector<std::pair<Int, int>> chi4PerPrime;
};

LocalDensity local_density(const Int& q);

}  // namespace thinsem
