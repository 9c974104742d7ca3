#include "thinsem/continued_fraction.hpp"

namespace thinsem {

void ContinuedFraction::validate() const {
    if (preperiod.empty() && period.empty())
        throw ValidationError("continued fraction has no quotients");
    bool first = true;
    for (const Int& a : preperiod) {
        if (a < (first ? 0 : 1)) throw ValidationError("partial quotient below 1");
        first = false;
    }
    for (const Int& a : period) {
        if (a < 1) throw ValidationError("periodic partial quotient below 1");
    }
}

ContinuedFraction cf_expand_rational(const Int& num, const Int& den) {
    if (den < 1) throw ValidationError("cf_expand_rational: denominator must be >= 1");
    if (gcd(num < 0 ? Int(-num) : num, den) != 1)
        throw ValidationError("cf_expand_rational: numerator and denominator must be coprime");
    ContinuedFraction cf;
    Int p = num, q = den;
    while (q != 0) {
        Int a = floor_div(p, q);
        cf.preperiod.push_back(a);
        Int r = p - a * q;
        p = q;
        q = r;
    }
    // Canonical form: [..., a, 1] -> [..., a+1].
    if (cf.preperiod.size() > 1 && cf.preperiod.back() == 1) {
        cf.preperiod.pop_back();
        cf.preperiod.back() += 1;
    }
    return cf;
}

Rat cf_evaluate_rational(const ContinuedFraction& cf) {
    if (!cf.is_finite()) throw ValidationError("cf_evaluate_rational: expansion is periodic");
    if (cf.preperiod.empty()) throw ValidationError("cf_evaluate_rational: empty expansion");
    Rat x(cf.preperiod.back());
    for (auto it = cf.preperiod.rbegin() + 1; it != cf.preperiod.rend(); ++it) {
        x = Rat(*it) + 1 / x;
    }
    return x;
}

Mat2 cf_matrix(const std::vector<Int>& quotients) {
    Mat2 m = Mat2::identity();
    for (const Int& a : quotients) m = m * Mat2(a, 1, 1, 0);
    return m;
}

}  // namespace thinsem
