#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "thinsem/alphabet.hpp"
#include "thinsem/mat2.hpp"
#include "thinsem/semigroup.hpp"

namespace thinsem {

// r_q(N) = #{gamma in ball : tr = 0 (q)} - (1/q) #ball, with multiplicity.
double remainder_rq(const TraceStats& stats, std::int64_t q);

// Same count against the true local density: #{tr = 0 (q)} - beta(q) #ball.
// The uniform 1/q main term carries an O(1) bias (beta(q) != 1/q), so decay
// is only visible against beta; both are reported side by side.
double remainder_rq_beta(const TraceStats& stats, std::int64_t q);

struct LevelRow {
    double alpha = 0.0;
    double Q = 0.0;          // N^alpha
    double sumAbsR = 0.0;    // uniform main term
    double sumAbsRBeta = 0.0;
    std::uint64_t total = 0;
    double ratio = 0.0;      // sumAbsR / total
    double ratioBeta = 0.0;
};

struct DistributionReport {
    double N = 0.0;
    Alphabet alphabet;
    std::vector<std::pair<std::int64_t, double>> remainders;      // (q, r_q), square-free q
    std::vector<std::pair<std::int64_t, double>> remaindersBeta;
    std::uint64_t total = 0;
    std::vector<LevelRow> rows;
};

DistributionReport level_sweep(const Alphabet& A, double N, const std::vector<double>& alphaGrid,
                               const EnumerationOptions& opts = {});

// Subset of the {1,2}-semigroup with norms below Y equidistributing mod
// every square-free q: a pigeonholed congruence class ball, translated to a
// representative of each class of SL_2(B).
struct AlephSet {
    double Y = 0.0;
    std::int64_t B = 2;
    double T = 0.0;                      // inner ball radius used
    std::vector<Mat2> elements;
    std::map<std::int64_t, double> discrepancy;  // probe modulus -> measured value
};

AlephSet construct_aleph(double Y, std::int64_t B, const EnumerationOptions& opts = {});

// max over classes of |#{a in S : a = a0 (q)}/|S| - 1/|SL2(q)||; exact over
// all classes (unreached classes contribute 1/|SL2(q)|).
double equidistribution_discrepancy(const std::vector<Mat2>& S, std::int64_t q);

// a_N(n) = #{(xi, a, omega) : tr(xi a omega) = n} over norm balls
// Xi (norm < X), Omega (norm < Z) and the given aleph set.
struct SequenceA {
    double X = 0, Y = 0, Z = 0, N = 0;
    std::uint64_t xiCount = 0, alephCount = 0, omegaCount = 0;
    std::map<std::int64_t, std::int64_t> a;  // n -> a_N(n)
    std::int64_t mass = 0;                   // |A| = sum_n a_N(n)

    std::int64_t mass_at_multiples_of(std::int64_t q) const;
};

SequenceA build_sequence_aN(const Alphabet& A, double X, double Y, double Z,
                            const AlephSet& aleph, const EnumerationOptions& opts = {});

struct MainTermDecomposition {
    double mainTerm = 0.0;       // M_q: divisor-restricted character sum
    double remainder = 0.0;      // |A_q| - M_q
    std::int64_t massAtQ = 0;    // |A_q|, exact
    double imagResidual = 0.0;   // |Im| of the accumulated sum, sanity only
};

// |A_q| = M_q + r(q) with M_q = (1/q) sum_{d | q, d < Q0 or d = 1}
// sum'_{r(d)} sum_n e_d(r n) a_N(n), complex accumulation with
// compensated summation.
MainTermDecomposition main_term_decomposition(const SequenceA& seq, std::int64_t q, double Q0);

struct E1Result {
    std::int64_t valueExact = 0;  // the sum is an exact integer (Ramanujan sums)
    double value = 0.0;           // |valueExact|
    double bound5 = 0.0;          // unconditional bound shape
    double bound6 = 0.0;          // additive-energy conditional bound shape
    double ratio5 = 0.0;
    double ratio6 = 0.0;
    std::uint64_t xiCount = 0, omegaCount = 0;
    std::vector<std::int64_t> moduli;
};

// E1(Q; a) = sum over square-free q in [Q, 2Q), xi, omega of the Ramanujan
// sum c_q(tr(xi a omega)), evaluated exactly via the divisor formula.
E1Result error_sum_E1(const Alphabet& A, double Q, const Mat2& aMat, double X, double Z,
                      const EnumerationOptions& opts = {});

// Same with an explicit modulus list (tests drive prime-only ranges).
std::int64_t e1_over_moduli(const std::vector<std::int64_t>& moduli, const std::vector<Mat2>& Xi,
                            const std::vector<Mat2>& Omega, const Mat2& aMat);

// Ramanujan sums c_q(n) for square-free q as a table over n mod q.
std::vector<std::int64_t> ramanujan_table(std::int64_t q);

struct DyadicErrorRow {
    double Q = 0.0;
    double maxAbsE1 = 0.0;  // max over aleph elements
    double bound5 = 0.0;
    double bound6 = 0.0;
};

struct ErrorAggregate {
    double directErrorSum = 0.0;  // sum_{q < Qmax} |r(q)| from the decomposition
    double dyadicMajorant = 0.0;  // log(Qmax) * sum over dyadic Q of max|E1|/Q
    std::vector<DyadicErrorRow> rows;
};

// Reproduces the dyadic aggregation of the q sum: the direct error total
// against the dyadic-block majorant built from E1.
ErrorAggregate aggregate_error_sums(const Alphabet& A, const SequenceA& seq,
                                    const AlephSet& aleph, double Qmax, double Q0,
                                    const EnumerationOptions& opts = {});

}  // namespace thinsem
