#include "thinsem/factor.hpp"

#include <algorithm>
#include <mutex>

namespace thinsem {

namespace {

constexpr std::int64_t kTrialBound = 10'000'000;  // primes below this are divided out
const Int kFactorCap = Int("100000000000000000000");  // 1e20 desk-scale guard

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

const std::vector<std::int64_t>& small_primes() {
    static std::vector<std::int64_t> primes = [] {
        std::vector<bool> comp(kTrialBound + 1, false);
        std::vector<std::int64_t> ps;
        for (std::int64_t i = 2; i <= kTrialBound; ++i) {
            if (!comp[i]) {
                ps.push_back(i);
                for (std::int64_t j = i * i; j <= kTrialBound; j += i) comp[j] = true;
            }
        }
        return ps;
    }();
    return primes;
}

// Classification of the cofactor left after trial division: with all prime
// factors > 1e7 and magnitude <= 1e20, only 1, p, p^2 and p*q are possible.
enum class Residual { One, Prime, PrimeSquare, Semiprime };

struct TrialResult {
    std::vector<std::pair<Int, int>> factors;  // fully resolved primes
    Int residual = 1;
    Residual kind = Residual::One;
};

TrialResult trial_factor(Int n) {
    if (n < 1) throw ValidationError("factorization requires n >= 1");
    if (n > kFactorCap) throw BudgetError("factorization input exceeds desk-scale cap 1e20");
    TrialResult out;
    if (n <= std::numeric_limits<std::uint64_t>::max()) {
        // machine-word fast path
        std::uint64_t m = static_cast<std::uint64_t>(n);
        for (std::int64_t p : small_primes()) {
            std::uint64_t up = static_cast<std::uint64_t>(p);
            if (up * up > m) break;
            if (m % up == 0) {
                int e = 0;
                while (m % up == 0) {
                    m /= up;
                    ++e;
                }
                out.factors.emplace_back(Int(p), e);
            }
        }
        n = m;
    } else {
        for (std::int64_t p : small_primes()) {
            Int pp = Int(p) * p;
            if (pp > n) break;
            if (n % p == 0) {
                int e = 0;
                while (n % p == 0) {
                    n /= p;
                    ++e;
                }
                out.factors.emplace_back(Int(p), e);
            }
        }
    }
    if (n == 1) return out;
    out.residual = n;
    if (n <= Int(kTrialBound) * kTrialBound) {
        out.kind = Residual::Prime;  // below square of trial bound, so prime
    } else if (is_prime(n)) {
        out.kind = Residual::Prime;
    } else {
        Int r;
        if (is_perfect_square(n, &r)) {
            out.residual = r;
            out.kind = Residual::PrimeSquare;
        } else {
            out.kind = Residual::Semiprime;
        }
    }
    return out;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n <= std::numeric_limits<std::uint64_t>::max())
        return is_prime_u64(static_cast<std::uint64_t>(n));
    // Large inputs only arise past the factorization cap; probabilistic
    // testing is not needed at desk scale.
    throw BudgetError("primality test beyond 64-bit range");
}

std::vector<std::pair<Int, int>> factor(const Int& n) {
    TrialResult t = trial_factor(n);
    switch (t.kind) {
        case Residual::One:
            break;
        case Residual::Prime:
            t.factors.emplace_back(t.residual, 1);
            break;
        case Residual::PrimeSquare:
            t.factors.emplace_back(t.residual, 2);
            break;
        case Residual::Semiprime:
            throw BudgetError("cofactor is a product of two primes above the trial bound");
    }
    std::sort(t.factors.begin(), t.factors.end());
    return t.factors;
}

int almost_prime_class(const Int& n) {
    TrialResult t = trial_factor(n);
    int omega = 0;
    for (const auto& [p, e] : t.factors) omega += e;
    switch (t.kind) {
        case Residual::One: break;
        case Residual::Prime: omega += 1; break;
        case Residual::PrimeSquare: omega += 2; break;
        case Residual::Semiprime: omega += 2; break;  // two distinct primes, unsplit
    }
    return omega;
}

SquarefreeDecomposition squarefree_part(const Int& n) {
    if (n < 1) throw ValidationError("squarefree_part requires n >= 1");
    TrialResult t = trial_factor(n);
    SquarefreeDecomposition d{1, 1};
    for (const auto& [p, e] : t.factors) {
        for (int i = 0; i < e / 2; ++i) d.cofactorRoot *= p;
        if (e % 2) d.sqf *= p;
    }
    switch (t.kind) {
        case Residual::One: break;
        case Residual::Prime: d.sqf *= t.residual; break;
        case Residual::PrimeSquare: d.cofactorRoot *= t.residual; break;
        case Residual::Semiprime: d.sqf *= t.residual; break;  // p*q with p != q is square-free
    }
    return d;
}

bool is_squarefree(const Int& n) {
    if (n < 1) throw ValidationError("is_squarefree requires n >= 1");
    return squarefree_part(n).cofactorRoot == 1;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
    if (bound > kTrialBound) throw BudgetError("prime table bound exceeds 1e7");
    const auto& ps = small_primes();
    auto it = std::upper_bound(ps.begin(), ps.end(), bound);
    return std::vector<std::int64_t>(ps.begin(), it);
}

}  // namespace thinsem
