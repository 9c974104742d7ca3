#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "thinsem/alphabet.hpp"
#include "thinsem/mat2.hpp"
#include "thinsem/pell.hpp"
#include "thinsem/quadratic.hpp"
#include "thinsem/semigroup.hpp"

namespace thinsem {

// Attracting fixed point of a hyperbolic matrix under the fractional
// linear action, i.e. the root of c x^2 + (d - a) x - b with |cx+d| > 1.
QuadraticIrrational fixed_point(const Mat2& m);

struct ClosedGeodesic {
    Mat2 m;
    QuadraticIrrational alpha;
    ContinuedFraction expansion;
    Int D;            // tr(m)^2 - 4
    Int sqf;          // square-free part of D
    Int fundamental;  // sqf or 4*sqf depending on sqf mod 4
};

ClosedGeodesic make_closed_geodesic(const Mat2& m);

// Apex height of the geodesic of a periodic quotient sequence: the maximum
// over cyclic positions of half the gap between the forward value
// [a_i; a_{i+1}, ...] and the backward value -[0; a_{i-1}, a_{i-2}, ...].
double geodesic_height(const std::vector<std::int64_t>& period);

struct DiscriminantRow {
    std::int64_t t;
    Int D;
    Int sqf;
    Int fundamental;
    int omega;  // prime factors of sqf with multiplicity
};

struct DiscriminantSet {
    std::map<Int, std::uint64_t> multiplicity;  // sqf value -> #traces mapping to it
    std::vector<DiscriminantRow> rows;          // one row per distinct trace > 2
    std::uint64_t skippedIdentityTrace = 0;     // t = 2 contributes D = 0 and is skipped
};

DiscriminantSet discriminant_set(const Alphabet& A, double normBound,
                                 const EnumerationOptions& opts = {});

struct PellTraceHit {
    std::int64_t t;
    Int s;
    std::vector<Mat2> witnesses;
};

// All traces t of the norm ball with t^2 - delta s^2 = 4 solvable.
std::vector<PellTraceHit> pell_trace_search(const Alphabet& A, const Int& delta, double normBound,
                                            const EnumerationOptions& opts = {});

struct Census {
    std::uint64_t total = 0;
    std::uint64_t count = 0;  // values with at most R prime factors
    double ratio = 0.0;
};

Census almost_prime_census(const std::vector<Int>& values, int R);

}  // namespace thinsem
