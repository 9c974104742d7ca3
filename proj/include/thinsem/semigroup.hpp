#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <vector>

#include "thinsem/alphabet.hpp"
#include "thinsem/fit.hpp"
#include "thinsem/mat2.hpp"

namespace thinsem {

struct EnumerationOptions {
    int threads = 0;                       // 0 = hardware concurrency
    std::uint64_t maxCount = 50'000'000;   // refusal cap on emitted matrices
};

// Streams every element of the determinant-one semigroup of the alphabet
// with Frobenius norm < normBound, each exactly once (identity included),
// in a deterministic order.  Throws BudgetError when the predicted or
// actual output exceeds opts.maxCount.
void enumerate_ball(const Alphabet& A, double normBound,
                    const std::function<void(const Mat2&)>& sink,
                    const EnumerationOptions& opts = {});

// Trace-multiplicity table over the norm ball.
struct TraceStats {
    double normBound = 0.0;
    std::map<std::int64_t, std::uint64_t> multiplicities;
    std::uint64_t total = 0;

    std::uint64_t multiplicity(std::int64_t t) const {
        auto it = multiplicities.find(t);
        return it == multiplicities.end() ? 0 : it->second;
    }
};

TraceStats trace_multiplicities(const Alphabet& A, double normBound,
                                const EnumerationOptions& opts = {});

void write_trace_stats_csv(const TraceStats& stats, std::ostream& os);

// Least-squares slope of log(ball count) against log(N).
FitResult hensley_fit(const Alphabet& A, const std::vector<double>& normBounds,
                      const EnumerationOptions& opts = {});

// Fixed point of the reduction mod q under right multiplication by all
// even generator pairs, together with the trace residues it reaches.
struct ModularClosure {
    std::int64_t q = 1;
    std::vector<std::array<std::int64_t, 4>> elements;
    std::set<std::int64_t> traceResidues;

    std::size_t size() const { return elements.size(); }
};

ModularClosure closure_mod_q(const Alphabet& A, std::int64_t q);

struct AdmissibilityResult {
    bool admissible = true;
    std::int64_t obstruction = 0;  // witness modulus when not admissible
};

// t passes every congruence obstruction for square-free q <= qMax.
AdmissibilityResult is_admissible(const Alphabet& A, const Int& t, std::int64_t qMax);

// gcd of all traces over the norm ball.
Int primitivity_gcd(const Alphabet& A, double normBound, const EnumerationOptions& opts = {});

}  // namespace thinsem
