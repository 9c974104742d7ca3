#include "thinsem/geodesics.hpp"

#include <cmath>

#include "thinsem/factor.hpp"

namespace thinsem {

QuadraticIrrational fixed_point(const Mat2& m) {
    Int t = m.trace();
    Int absT = t < 0 ? Int(-t) : t;
    if (absT <= 2) throw ValidationError("fixed_point: matrix is not hyperbolic");
    if (m.c == 0) throw ValidationError("fixed_point: lower-left entry is zero");
    Int disc = t * t - 4 * m.det();
    // cx + d at the fixed points equals the eigenvalues; the attracting one
    // has the larger magnitude, reached with the sign of the trace.
    int sign = t > 0 ? 1 : -1;
    return make_quadratic(m.a - m.d, sign, 2 * m.c, disc);
}

ClosedGeodesic make_closed_geodesic(const Mat2& m) {
    ClosedGeodesic g;
    g.m = m;
    g.alpha = fixed_point(m);
    g.expansion = cf_expand_quadratic(g.alpha);
    g.D = m.trace() * m.trace() - 4;
    auto dec = squarefree_part(g.D);
    g.sqf = dec.sqf;
    g.fundamental = fundamental_discriminant_from_sqf(dec.sqf);
    return g;
}

namespace {

// Value of the purely periodic expansion with the given quotient cycle,
// exact matrix fixed point converted to double at the end.
double purely_periodic_value(const std::vector<std::int64_t>& cycle) {
    Mat2 m = Mat2::identity();
    for (std::int64_t a : cycle) m = m * Mat2::generator(a);
    Int disc = m.trace() * m.trace() - 4 * m.det();
    Int lin = m.a - m.d;
    // positive root of c x^2 + (d-a) x - b
    return (to_double(lin) + std::sqrt(to_double(disc))) / (2.0 * to_double(m.c));
}

}  // namespace

double geodesic_height(const std::vector<std::int64_t>& period) {
    if (period.empty()) throw ValidationError("geodesic_height: empty period");
    for (std::int64_t a : period)
        if (a < 1) throw ValidationError("geodesic_height: partial quotients must be >= 1");
    const size_t L = period.size();
    double best = 0.0;
    std::vector<std::int64_t> forward(L), backward(L);
    for (size_t i = 0; i < L; ++i) {
        for (size_t j = 0; j < L; ++j) forward[j] = period[(i + j) % L];
        // backward expansion [a_{i-1}, a_{i-2}, ...]
        for (size_t j = 0; j < L; ++j) backward[j] = period[(i + L - 1 - j) % L];
        double alpha = purely_periodic_value(forward);
        double beta = 1.0 / purely_periodic_value(backward);
        best = std::max(best, (alpha + beta) / 2.0);
    }
    return best;
}

DiscriminantSet discriminant_set(const Alphabet& A, double normBound,
                                 const EnumerationOptions& opts) {
    TraceStats stats = trace_multiplicities(A, normBound, opts);
    DiscriminantSet out;
    for (const auto& [t, mult] : stats.multiplicities) {
        if (t <= 2) {
            out.skippedIdentityTrace += (t == 2);
            continue;
        }
        DiscriminantRow row;
        row.t = t;
        row.D = Int(t) * t - 4;
        auto dec = squarefree_part(row.D);
        row.sqf = dec.sqf;
        row.fundamental = fundamental_discriminant_from_sqf(dec.sqf);
        row.omega = almost_prime_class(dec.sqf);
        out.multiplicity[row.sqf] += 1;
        out.rows.push_back(row);
    }
    return out;
}

std::vector<PellTraceHit> pell_trace_search(const Alphabet& A, const Int& delta, double normBound,
                                            const EnumerationOptions& opts) {
    if (delta <= 0 || is_perfect_square(delta))
        throw ValidationError("pell_trace_search: delta must be positive and non-square");
    // First pass: which traces solve the Pell equation.
    TraceStats stats = trace_multiplicities(A, normBound, opts);
    std::map<std::int64_t, PellTraceHit> hits;
    for (const auto& [t, mult] : stats.multiplicities) {
        if (t <= 2) continue;
        Int s;
        if (pell_trace_test(Int(t), delta, &s)) hits.emplace(t, PellTraceHit{t, s, {}});
    }
    if (!hits.empty()) {
        enumerate_ball(A, normBound, [&](const Mat2& m) {
            auto it = hits.find(to_i64(m.trace(), "trace"));
            if (it != hits.end()) it->second.witnesses.push_back(m);
        }, opts);
    }
    std::vector<PellTraceHit> out;
    for (auto& [t, hit] : hits) out.push_back(std::move(hit));
    return out;
}

Census almost_prime_census(const std::vector<Int>& values, int R) {
    if (R < 0) throw ValidationError("almost_prime_census: R must be >= 0");
    Census c;
    c.total = values.size();
    for (const Int& v : values)
        if (almost_prime_class(v) <= R) ++c.count;
    c.ratio = c.total ? static_cast<double>(c.count) / static_cast<double>(c.total) : 0.0;
    return c;
}

}  // namespace thinsem
