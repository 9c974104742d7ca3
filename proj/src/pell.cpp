#include "thinsem/pell.hpp"

namespace thinsem {

namespace {

// Real quadratic integer x + y*sqrt(delta) with exact multiplication.
struct Unit {
    Int x, y;
};

Unit mul(const Unit& u, const Unit& v, const Int& delta) {
    return Unit{u.x * v.x + delta * u.y * v.y, u.x * v.y + u.y * v.x};
}

}  // namespace

std::pair<std::pair<Int, Int>, int> pell_pm1_fundamental(const Int& delta) {
    if (delta <= 0) throw ValidationError("pell: delta must be positive");
    Int a0 = isqrt_floor(delta);
    if (a0 * a0 == delta) throw ValidationError("pell: delta is a perfect square");

    // Convergents of sqrt(delta); the first convergent with
    // p^2 - delta q^2 = +-1 is the fundamental unit of Z[sqrt(delta)].
    constexpr int kCap = 1'000'000;
    Int P = 0, Q = 1, a = a0;
    Int pPrev = 1, qPrev = 0, p = a0, q = 1;
    int len = 1;
    while (p * p - delta * q * q != 1 && p * p - delta * q * q != -1) {
        if (++len > kCap) throw BudgetError("pell: period cap exceeded");
        P = a * Q - P;
        Q = (delta - P * P) / Q;
        a = floor_div(P + a0, Q);
        Int pn = a * p + pPrev, qn = a * q + qPrev;
        pPrev = p;
        qPrev = q;
        p = pn;
        q = qn;
    }
    int norm = (p * p - delta * q * q == 1) ? 1 : -1;
    return {{p, q}, norm};
}

PellSolution pell_fundamental(const Int& delta) {
    if (delta <= 0) throw ValidationError("pell_fundamental: delta must be positive");
    if (is_perfect_square(delta)) throw ValidationError("pell_fundamental: delta is a perfect square");

    Int m4 = delta % 4;

    if (m4 == 0) {
        // t is forced even; (t/2)^2 - (delta/4) s^2 = 1.
        Int d4 = delta / 4;
        auto [xy, norm] = pell_pm1_fundamental(d4);
        Unit u{xy.first, xy.second};
        if (norm == -1) u = mul(u, u, d4);
        PellSolution sol{2 * u.x, u.y, delta};
        sol.verify();
        return sol;
    }

    if (m4 == 2 || m4 == 3) {
        // t, s are both forced even; (t/2, s/2) solves x^2 - delta y^2 = 1.
        auto [xy, norm] = pell_pm1_fundamental(delta);
        Unit u{xy.first, xy.second};
        if (norm == -1) u = mul(u, u, delta);
        PellSolution sol{2 * u.x, 2 * u.y, delta};
        sol.verify();
        return sol;
    }

    // delta = 1 (mod 4): solutions (t + s sqrt(delta))/2 are the norm-one
    // units of the order of discriminant delta.  The fundamental unit of
    // that order is either the fundamental unit u of Z[sqrt(delta)] or a
    // half-integral cube root of it; the cube root eta = (x + y sqrt)/2
    // satisfies x^3 - 3*n*x = 2*Tr(u) with n = N(eta) in {+-1}.
    auto [xy, norm] = pell_pm1_fundamental(delta);
    Unit u{xy.first, xy.second};

    Int bestT = 2 * u.x, bestS = 2 * u.y;
    int bestNorm = norm;
    {
        Int target = 2 * u.x;
        // integer cube root of target, then test nearby candidates
        Int lo = 0, hi = target;
        while (lo < hi) {
            Int mid = (lo + hi + 1) / 2;
            if (mid * mid * mid <= target)
                lo = mid;
            else
                hi = mid - 1;
        }
        for (Int x = lo - 2; x <= lo + 2; ++x) {
            if (x < 1) continue;
            for (int n : {1, -1}) {
                if (x * x * x - 3 * n * x != target) continue;
                Int y2num = x * x - 4 * n;
                if (y2num <= 0 || y2num % delta != 0) continue;
                Int y;
                if (!is_perfect_square(y2num / delta, &y)) continue;
                bestT = x;
                bestS = y;
                bestNorm = n;
            }
        }
    }

    // bestT/bestS now hold twice the fundamental unit of the order (or the
    // half-unit), with norm bestNorm; pass to the norm +1 subgroup.
    if (bestNorm == -1) {
        // (t + s sqrt)/2 squared: ((t^2 + delta s^2)/2 + t s sqrt) / 2
        Int t2 = (bestT * bestT + delta * bestS * bestS) / 2;
        Int s2 = bestT * bestS;
        bestT = t2;
        bestS = s2;
    }
    PellSolution sol{bestT, bestS, delta};
    sol.verify();
    if (sol.t <= 2) throw ValidationError("pell_fundamental: degenerate solution");
    return sol;
}

bool pell_trace_test(const Int& t, const Int& delta, Int* s_out) {
    if (t < 2) return false;
    Int m = t * t - 4;
    if (m % delta != 0) return false;
    Int s;
    if (!is_perfect_square(m / delta, &s)) return false;
    if (s_out) *s_out = s;
    return true;
}

}  // namespace thinsem
