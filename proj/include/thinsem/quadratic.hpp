#pragma once

#include "thinsem/continued_fraction.hpp"
#include "thinsem/mat2.hpp"
#include "thinsem/numeric.hpp"

namespace thinsem {

// Real quadratic irrational (p + q*sqrt(D))/r in canonical form:
// D > 1 square-free, q != 0, r > 0, gcd(p, q, r) = 1.
struct QuadraticIrrational {
    Int p, q, r, D;

    double value() const;
    QuadraticIrrational conjugate() const;  // (p - q*sqrt(D))/r

    bool operator==(const QuadraticIrrational& o) const = default;
};

// Canonicalize (p + q*sqrt(d))/r where d > 0 need not be square-free.
// Rejects rational or degenerate inputs (d a perfect square, q = 0, r = 0).
QuadraticIrrational make_quadratic(const Int& p, const Int& q, const Int& r, const Int& d);

// Exact image (a*x + b)/(c*x + d) under a matrix with nonzero determinant.
QuadraticIrrational mobius_apply(const Mat2& m, const QuadraticIrrational& x);

// Surd expansion by the exact (P, Q) recurrence with state-repetition
// detection; preperiod and period are both minimal.
ContinuedFraction cf_expand_quadratic(const QuadraticIrrational& x);

// Value of an eventually periodic expansion, reconstructed exactly from the
// fixed point of the period matrix.  Needs the discriminant of the period
// matrix to be factorable; see cf_represents for the cap-free check.
QuadraticIrrational cf_evaluate_quadratic(const ContinuedFraction& cf);

// Exact round-trip check without factoring: x has the expansion cf iff the
// preimage of x under the preperiod map is fixed by the period matrix.
// All arithmetic stays in the field of x.
bool cf_represents(const ContinuedFraction& cf, const QuadraticIrrational& x);

// x > 1 with conjugate in (-1, 0); purely periodic expansions are exactly
// the expansions of such numbers.
bool is_reduced_surd(const QuadraticIrrational& x);

}  // namespace thinsem
