#include "thinsem/quadratic.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "thinsem/factor.hpp"

namespace thinsem {

double QuadraticIrrational::value() const {
    return (to_double(p) + to_double(q) * std::sqrt(to_double(D))) / to_double(r);
}

QuadraticIrrational QuadraticIrrational::conjugate() const {
    QuadraticIrrational c{p, -q, r, D};
    return c;
}

QuadraticIrrational make_quadratic(const Int& p_in, const Int& q_in, const Int& r_in, const Int& d) {
    if (r_in == 0) throw ValidationError("quadratic irrational: zero denominator");
    if (q_in == 0) throw ValidationError("quadratic irrational: rational input");
    if (d <= 0) throw ValidationError("quadratic irrational: radicand must be positive");
    auto dec = squarefree_part(d);
    if (dec.sqf == 1) throw ValidationError("quadratic irrational: radicand is a perfect square");
    Int p = p_in, q = q_in * dec.cofactorRoot, r = r_in;
    if (r < 0) {
        p = -p;
        q = -q;
        r = -r;
    }
    Int g = gcd(gcd(p < 0 ? Int(-p) : p, q < 0 ? Int(-q) : q), r);
    if (g > 1) {
        p /= g;
        q /= g;
        r /= g;
    }
    return QuadraticIrrational{p, q, r, dec.sqf};
}

QuadraticIrrational mobius_apply(const Mat2& m, const QuadraticIrrational& x) {
    if (m.det() == 0) throw ValidationError("mobius_apply: singular matrix");
    // (a(p+q sqrt D)/r + b) / (c(p+q sqrt D)/r + d)
    //   = (a p + b r + a q sqrt D) / (c p + d r + c q sqrt D); rationalize.
    Int u = m.a * x.p + m.b * x.r, v = m.a * x.q;
    Int s = m.c * x.p + m.d * x.r, t = m.c * x.q;
    // (u + v sqrt D)/(s + t sqrt D) = ((u + v sqrtD)(s - t sqrtD)) / (s^2 - t^2 D)
    Int den = s * s - t * t * x.D;
    if (den == 0) throw ValidationError("mobius_apply: image is degenerate");
    Int np = u * s - v * t * x.D;
    Int nq = v * s - u * t;
    return make_quadratic(np, nq, den, x.D);
}

bool is_reduced_surd(const QuadraticIrrational& x) {
    // x > 1  <=>  p + q sqrt(D) > r (r > 0), checked exactly.
    auto cmp_linear = [&](const Int& a, const Int& b, const Int& c) {
        // sign of (a + b sqrt(D)) - c  ==  sign of (a - c) + b sqrt(D)
        Int lin = a - c;
        if (b == 0) return lin > 0 ? 1 : (lin < 0 ? -1 : 0);
        // compare -lin with b sqrt(D): square with sign care
        if (b > 0) {
            if (lin >= 0) return 1;
            Int l2 = lin * lin, rhs = b * b * x.D;
            return l2 < rhs ? 1 : (l2 > rhs ? -1 : 0);
        }
        if (lin <= 0) return -1;
        Int l2 = lin * lin, rhs = b * b * x.D;
        return l2 > rhs ? 1 : (l2 < rhs ? -1 : 0);
    };
    bool gt1 = cmp_linear(x.p, x.q, x.r) > 0;
    // conjugate in (-1, 0): p - q sqrt(D) < 0 and p - q sqrt(D) > -r
    bool conj_neg = cmp_linear(x.p, -x.q, 0) < 0;
    bool conj_gt = cmp_linear(x.p, -x.q, -x.r) > 0;
    return gt1 && conj_neg && conj_gt;
}

ContinuedFraction cf_expand_quadratic(const QuadraticIrrational& x) {
    // Bring x to the form (P + sqrt(N)) / Q with Q | (N - P^2).
    Int P = x.p, Q = x.r, N = x.q * x.q * x.D;
    if (x.q < 0) {
        P = -P;
        Q = -Q;
    }
    if ((N - P * P) % Q != 0) {
        Int aQ = Q < 0 ? Int(-Q) : Q;
        P *= aQ;
        N *= aQ * aQ;
        Q *= aQ;
    }

    ContinuedFraction cf;
    std::vector<Int> quotients;
    std::map<std::pair<Int, Int>, size_t> seen;
    const Int sN = isqrt_floor(N);
    constexpr size_t kStateCap = 1'000'000;
    while (true) {
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            cf.preperiod.assign(quotients.begin(), quotients.begin() + it->second);
            cf.period.assign(quotients.begin() + it->second, quotients.end());
            cf.validate();
            return cf;
        }
        if (quotients.size() >= kStateCap)
            throw BudgetError("cf_expand_quadratic: state cap exceeded");
        seen.emplace(key, quotients.size());
        // floor((P + sqrt N)/Q) exactly; sqrt N is irrational here.
        Int a = (Q > 0) ? floor_div(P + sN, Q) : floor_div(P + sN + 1, Q);
        quotients.push_back(a);
        Int Pn = a * Q - P;
        Int Qn = (N - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
    }
}

QuadraticIrrational cf_evaluate_quadratic(const ContinuedFraction& cf) {
    if (cf.period.empty())
        throw ValidationError("cf_evaluate_quadratic: expansion is finite");
    cf.validate();
    // Purely periodic tail: attracting fixed point of the period matrix,
    // the positive root of c y^2 + (d - a) y - b = 0.
    Mat2 m = cf_matrix(cf.period);
    Int disc = m.trace() * m.trace() - 4 * m.det();
    QuadraticIrrational y = make_quadratic(m.a - m.d, 1, 2 * m.c, disc);
    if (cf.preperiod.empty()) return y;
    return mobius_apply(cf_matrix(cf.preperiod), y);
}

bool cf_represents(const ContinuedFraction& cf, const QuadraticIrrational& x) {
    if (cf.period.empty()) return false;
    cf.validate();
    // y = inverse preperiod map applied to x (adjugate acts as the inverse
    // up to the determinant, which cancels in the fractional linear action)
    QuadraticIrrational y = x;
    if (!cf.preperiod.empty()) {
        Mat2 m = cf_matrix(cf.preperiod);
        Mat2 adj(m.d, -m.b, -m.c, m.a);
        y = mobius_apply(adj, x);
    }
    // y must be the attracting fixed point of the period matrix: fixed by
    // it, larger than 1, with conjugate in (-1, 0).
    Mat2 per = cf_matrix(cf.period);
    return mobius_apply(per, y) == y && is_reduced_surd(y);
}

}  // namespace thinsem
