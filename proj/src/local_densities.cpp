#include "thinsem/local_densities.hpp"

#include <cmath>

#include "thinsem/factor.hpp"

namespace thinsem {

namespace {

std::vector<Int> squarefree_prime_factors(const Int& q, const char* who) {
    if (q < 1) throw ValidationError(std::string(who) + ": modulus must be >= 1");
    auto fs = factor(q);
    std::vector<Int> ps;
    for (const auto& [p, e] : fs) {
        if (e > 1) throw ValidationError(std::string(who) + ": modulus must be square-free");
        ps.push_back(p);
    }
    return ps;
}

}  // namespace

Int sl2_size(const Int& q) {
    auto ps = squarefree_prime_factors(q, "sl2_size");
    Int n = 1;
    for (const Int& p : ps) n *= p * p * p - p;
    return n;
}

Rat beta_prime(const Int& p) {
    if (!is_prime(p)) throw ValidationError("beta_prime: input must be prime");
    Rat one(1);
    return Rat(1, p) * (one + Rat(chi4(p), p)) / (one - Rat(1, p * p));
}

Rat beta(const Int& q) {
    auto ps = squarefree_prime_factors(q, "beta");
    Rat b(1);
    for (const Int& p : ps) b *= beta_prime(p);
    return b;
}

Rat rho(const Int& p) {
    if (!is_prime(p)) throw ValidationError("rho: input must be prime");
    return Rat(p * (p + chi4(p)), p * p - 1) - 1;
}

std::int64_t trace_zero_count_bruteforce(std::int64_t p) {
    if (p < 2 || p > 31 || !is_prime_u64(p)) throw BudgetError("trace_zero_count_bruteforce: need a prime p <= 31");
    std::int64_t count = 0;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b)
            for (std::int64_t c = 0; c < p; ++c)
                for (std::int64_t d = 0; d < p; ++d)
                    if (((a * d - b * c) % p + p) % p == 1 && (a + d) % p == 0) ++count;
    return count;
}

std::int64_t sl2_size_bruteforce(std::int64_t q) {
    if (q < 1 || q > 40) throw BudgetError("sl2_size_bruteforce: q too large");
    std::int64_t count = 0;
    for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b)
            for (std::int64_t c = 0; c < q; ++c)
                for (std::int64_t d = 0; d < q; ++d)
                    if (((a * d - b * c) % q + q) % q == 1 % q) ++count;
    return count;
}

double sieve_condition_ratio(double w, double z) {
    if (!(w >= 2.0) || !(z > w)) throw ValidationError("sieve_condition_ratio: need 2 <= w < z");
    if (z > 1e7) throw BudgetError("sieve_condition_ratio: z beyond prime-table range");
    double prod = 1.0;
    for (std::int64_t p : primes_up_to(static_cast<std::int64_t>(std::ceil(z)) + 1)) {
        if (p < w) continue;
        if (p >= z) break;
        prod /= 1.0 - to_double(beta_prime(Int(p)));
    }
    return prod * std::log(w) / std::log(z);
}

LocalDensity local_density(const Int& q) {
    LocalDensity d;
    d.q = q;
    d.betaValue = beta(q);
    for (const Int& p : squarefree_prime_factors(q, "local_density")) {
        d.rhoPerPrime.emplace_back(p, rho(p));
        d.chi4PerPrime.emplace_back(p, chi4(p));
    }
    return d;
}

}  // namespace thinsem
