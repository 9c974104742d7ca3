#pragma once

#include <vector>

#include "thinsem/mat2.hpp"
#include "thinsem/numeric.hpp"

namespace thinsem {

// Partial-quotient sequence.  An empty period means a finite (rational)
// expansion.  Quotients at index >= 1 are >= 1; the leading quotient may
// be 0 for values in (0,1).
struct ContinuedFraction {
    std::vector<Int> preperiod;
    std::vector<Int> period;

    bool is_finite() const { return period.empty(); }
    void validate() const;
};

// Euclidean expansion of num/den in canonical form: the last quotient of a
// multi-term expansion is >= 2, so equal rationals get equal expansions.
ContinuedFraction cf_expand_rational(const Int& num, const Int& den);

// Exact value of a finite continued fraction.
Rat cf_evaluate_rational(const ContinuedFraction& cf);

// Product of the generator matrices of a quotient list, (a0 1;1 0)(a1 1;1 0)...
Mat2 cf_matrix(const std::vector<Int>& quotients);

}  // namespace thinsem
