#include "thinsem/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "thinsem/factor.hpp"
#include "thinsem/local_densities.hpp"

namespace thinsem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t count_divisible(const TraceStats& stats, std::int64_t q) {
    std::uint64_t c = 0;
    for (const auto& [t, m] : stats.multiplicities)
        if (((t % q) + q) % q == 0) c += m;
    return c;
}

void require_squarefree_modulus(std::int64_t q, const char* who) {
    if (q < 1) throw ValidationError(std::string(who) + ": modulus must be >= 1");
    if (!is_squarefree(Int(q))) throw ValidationError(std::string(who) + ": modulus must be square-free");
}

}  // namespace

double remainder_rq(const TraceStats& stats, std::int64_t q) {
    require_squarefree_modulus(q, "remainder_rq");
    return static_cast<double>(count_divisible(stats, q)) -
           static_cast<double>(stats.total) / static_cast<double>(q);
}

double remainder_rq_beta(const TraceStats& stats, std::int64_t q) {
    require_squarefree_modulus(q, "remainder_rq_beta");
    return static_cast<double>(count_divisible(stats, q)) -
           to_double(beta(Int(q))) * static_cast<double>(stats.total);
}

DistributionReport level_sweep(const Alphabet& A, double N, const std::vector<double>& alphaGrid,
                               const EnumerationOptions& opts) {
    for (double a : alphaGrid)
        if (!(a > 0.0 && a < 1.0)) throw ValidationError("level_sweep: alpha must lie in (0,1)");
    DistributionReport rep;
    rep.N = N;
    rep.alphabet = A;
    TraceStats stats = trace_multiplicities(A, N, opts);
    rep.total = stats.total;
    if (stats.total == 0) throw ValidationError("level_sweep: empty ball");

    const double maxAlpha = *std::max_element(alphaGrid.begin(), alphaGrid.end());
    const std::int64_t qMax = static_cast<std::int64_t>(std::pow(N, maxAlpha));
    for (std::int64_t q = 1; q <= qMax; ++q) {
        if (!is_squarefree(Int(q))) continue;
        rep.remainders.emplace_back(q, remainder_rq(stats, q));
        rep.remaindersBeta.emplace_back(q, remainder_rq_beta(stats, q));
    }
    for (double alpha : alphaGrid) {
        LevelRow row;
        row.alpha = alpha;
        row.Q = std::pow(N, alpha);
        row.total = stats.total;
        for (size_t i = 0; i < rep.remainders.size(); ++i) {
            if (static_cast<double>(rep.remainders[i].first) >= row.Q) continue;
            row.sumAbsR += std::abs(rep.remainders[i].second);
            row.sumAbsRBeta += std::abs(rep.remaindersBeta[i].second);
        }
        row.ratio = row.sumAbsR / static_cast<double>(stats.total);
        row.ratioBeta = row.sumAbsRBeta / static_cast<double>(stats.total);
        rep.rows.push_back(row);
    }
    return rep;
}

namespace {

std::uint64_t pack_mod_mat(const Mat2& m, std::int64_t q) {
    auto red = [&](const Int& v) {
        Int r = v % q;
        if (r < 0) r += q;
        return static_cast<std::uint64_t>(r);
    };
    return (red(m.a) << 48) | (red(m.b) << 32) | (red(m.c) << 16) | red(m.d);
}

// Shortest even-word representatives of every class of SL_2(B), found by
// breadth-first search over generator pairs of the {1,2}-semigroup.
std::vector<Mat2> class_representatives(std::int64_t B, std::size_t classCount) {
    const Alphabet A0({1, 2});
    std::vector<Mat2> reps;
    std::unordered_map<std::uint64_t, Mat2> found;
    std::vector<Mat2> frontier{Mat2::identity()};
    found.emplace(pack_mod_mat(Mat2::identity(), B), Mat2::identity());
    std::vector<Mat2> gens;
    for (std::int64_t a : A0.letters)
        for (std::int64_t b : A0.letters)
            gens.push_back(Mat2::generator(a) * Mat2::generator(b));
    constexpr int kMaxLevel = 24;
    for (int level = 0; level < kMaxLevel && found.size() < classCount; ++level) {
        std::vector<Mat2> next;
        for (const auto& m : frontier) {
            for (const auto& g : gens) {
                Mat2 r = m * g;
                auto key = pack_mod_mat(r, B);
                if (!found.count(key)) {
                    found.emplace(key, r);
                    next.push_back(r);
                }
            }
        }
        frontier.swap(next);
    }
    if (found.size() < classCount)
        throw BudgetError("construct_aleph: class representatives not found within word budget; "
                          "reached " + std::to_string(found.size()) + " of " +
                          std::to_string(classCount));
    for (auto& [key, m] : found) reps.push_back(m);
    std::sort(reps.begin(), reps.end(), [&](const Mat2& x, const Mat2& y) {
        return pack_mod_mat(x, B) < pack_mod_mat(y, B);
    });
    return reps;
}

}  // namespace

AlephSet construct_aleph(double Y, std::int64_t B, const EnumerationOptions& opts) {
    require_squarefree_modulus(B, "construct_aleph");
    if (!(Y > 0)) throw ValidationError("construct_aleph: Y must be positive");
    AlephSet aleph;
    aleph.Y = Y;
    aleph.B = B;

    const Alphabet A0({1, 2});
    const std::size_t R = static_cast<std::size_t>(to_i64(sl2_size(Int(B)), "|SL2(B)|"));
    std::vector<Mat2> reps = class_representatives(B, R);
    double maxRepNorm = 0.0;
    for (const auto& x : reps) maxRepNorm = std::max(maxRepNorm, x.norm());

    // ||s' * s_T^{R-1} * x_j|| < T^R * max ||x_j||; keep that below Y.
    const double T = std::pow(Y / maxRepNorm, 1.0 / static_cast<double>(R));
    aleph.T = T;
    if (T * T <= 2.0)
        throw BudgetError("construct_aleph: Y too small, inner ball is empty at T=" +
                          std::to_string(T));

    std::vector<Mat2> ball;
    enumerate_ball(A0, T, [&](const Mat2& m) { ball.push_back(m); }, opts);

    // Pigeonhole a densest congruence class mod B.
    std::unordered_map<std::uint64_t, std::uint64_t> classCount;
    for (const auto& m : ball) ++classCount[pack_mod_mat(m, B)];
    std::uint64_t bestKey = 0, bestCount = 0;
    for (const auto& m : ball) {  // deterministic: first maximal in emission order
        auto key = pack_mod_mat(m, B);
        if (classCount[key] > bestCount) {
            bestCount = classCount[key];
            bestKey = key;
        }
    }
    Mat2 pivot;
    std::vector<Mat2> classBall;
    bool pivotSet = false;
    for (const auto& m : ball) {
        if (pack_mod_mat(m, B) == bestKey) {
            if (!pivotSet) {
                pivot = m;
                pivotSet = true;
            }
            classBall.push_back(m);
        }
    }

    Mat2 shift = pivot.pow(static_cast<unsigned>(R - 1));
    for (const auto& x : reps) {
        Mat2 tail = shift * x;
        for (const auto& s : classBall) aleph.elements.push_back(s * tail);
    }
    for (std::int64_t q : {2, 3, 5, 6, 7})
        aleph.discrepancy[q] = equidistribution_discrepancy(aleph.elements, q);
    return aleph;
}

double equidistribution_discrepancy(const std::vector<Mat2>& S, std::int64_t q) {
    require_squarefree_modulus(q, "equidistribution_discrepancy");
    if (q > 60000) throw BudgetError("equidistribution_discrepancy: modulus too large to pack");
    if (S.empty()) throw ValidationError("equidistribution_discrepancy: empty set");
    const double sl2 = to_double(sl2_size(Int(q)));
    const double uniform = 1.0 / sl2;
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    for (const auto& m : S) ++counts[pack_mod_mat(m, q)];
    double worst = counts.size() < static_cast<std::size_t>(sl2) ? uniform : 0.0;
    for (const auto& [key, c] : counts)
        worst = std::max(worst,
                         std::abs(static_cast<double>(c) / static_cast<double>(S.size()) - uniform));
    return worst;
}

std::int64_t SequenceA::mass_at_multiples_of(std::int64_t q) const {
    std::int64_t m = 0;
    for (const auto& [n, an] : a)
        if (((n % q) + q) % q == 0) m += an;
    return m;
}

SequenceA build_sequence_aN(const Alphabet& A, double X, double Y, double Z,
                            const AlephSet& aleph, const EnumerationOptions& opts) {
    if (std::abs(aleph.Y - Y) > 1e-9 * std::max(1.0, Y))
        throw ValidationError("build_sequence_aN: Y does not match the aleph set");
    SequenceA seq;
    seq.X = X;
    seq.Y = Y;
    seq.Z = Z;
    seq.N = X * Y * Z;
    if (seq.N > 1e12) throw BudgetError("build_sequence_aN: N = XYZ exceeds the trace budget");

    std::vector<Mat2> Xi, Omega;
    enumerate_ball(A, X, [&](const Mat2& m) { Xi.push_back(m); }, opts);
    enumerate_ball(A, Z, [&](const Mat2& m) { Omega.push_back(m); }, opts);
    seq.xiCount = Xi.size();
    seq.alephCount = aleph.elements.size();
    seq.omegaCount = Omega.size();

    const double work = static_cast<double>(Xi.size()) * static_cast<double>(aleph.elements.size()) *
                        static_cast<double>(Omega.size());
    if (work > 2e8) throw BudgetError("build_sequence_aN: triple-product budget exceeded");

    // tr(xi * P) with P = a*omega; all norms below X*Y*Z keep entries in range.
    struct M4 {
        std::int64_t a, b, c, d;
    };
    auto to4 = [](const Mat2& m) {
        return M4{to_i64(m.a, "entry"), to_i64(m.b, "entry"), to_i64(m.c, "entry"),
                  to_i64(m.d, "entry")};
    };
    std::vector<M4> prods;
    prods.reserve(aleph.elements.size() * Omega.size());
    for (const auto& al : aleph.elements)
        for (const auto& om : Omega) prods.push_back(to4(al * om));

    std::unordered_map<std::int64_t, std::int64_t> counts;
    for (const auto& xi : Xi) {
        M4 x = to4(xi);
        for (const auto& p : prods) {
            std::int64_t tr = x.a * p.a + x.b * p.c + x.c * p.b + x.d * p.d;
            ++counts[tr];
        }
    }
    for (const auto& [n, c] : counts) {
        seq.a[n] = c;
        seq.mass += c;
    }
    return seq;
}

std::vector<std::int64_t> ramanujan_table(std::int64_t q) {
    require_squarefree_modulus(q, "ramanujan_table");
    // c_q(n) = mu(q) * sum_{d | gcd(q, n)} d * mu(d)  for square-free q
    std::vector<std::int64_t> divisors{1};
    std::vector<std::int64_t> mu{1};
    std::int64_t m = q;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            size_t sz = divisors.size();
            for (size_t i = 0; i < sz; ++i) {
                divisors.push_back(divisors[i] * p);
                mu.push_back(-mu[i]);
            }
            m /= p;
        }
    }
    if (m > 1) {
        size_t sz = divisors.size();
        for (size_t i = 0; i < sz; ++i) {
            divisors.push_back(divisors[i] * m);
            mu.push_back(-mu[i]);
        }
    }
    std::int64_t muq = 1;
    for (size_t i = 0; i < divisors.size(); ++i)
        if (divisors[i] == q) muq = mu[i];
    std::vector<std::int64_t> table(q, 0);
    for (std::int64_t n = 0; n < q; ++n) {
        std::int64_t g = std::gcd(n == 0 ? q : n, q);
        std::int64_t s = 0;
        for (size_t i = 0; i < divisors.size(); ++i)
            if (g % divisors[i] == 0) s += divisors[i] * mu[i];
        table[n] = muq * s;
    }
    return table;
}

MainTermDecomposition main_term_decomposition(const SequenceA& seq, std::int64_t q, double Q0) {
    require_squarefree_modulus(q, "main_term_decomposition");
    MainTermDecomposition out;
    out.massAtQ = seq.mass_at_multiples_of(q);

    std::vector<std::int64_t> divisors;
    for (std::int64_t d = 1; d <= q; ++d)
        if (q % d == 0 && (d == 1 || static_cast<double>(d) < Q0)) divisors.push_back(d);

    // complex accumulation with Kahan compensation, imaginary part kept as
    // a numeric sanity output (the full sum is real)
    double sumRe = 0.0, sumIm = 0.0, compRe = 0.0, compIm = 0.0;
    auto add = [&](double re, double im) {
        double yRe = re - compRe, yIm = im - compIm;
        double tRe = sumRe + yRe, tIm = sumIm + yIm;
        compRe = (tRe - sumRe) - yRe;
        compIm = (tIm - sumIm) - yIm;
        sumRe = tRe;
        sumIm = tIm;
    };
    for (std::int64_t d : divisors) {
        for (std::int64_t r = 0; r < d; ++r) {
            if (std::gcd(r == 0 ? d : r, d) != 1) continue;
            for (const auto& [n, an] : seq.a) {
                double phase = kTwoPi * static_cast<double>(((r * (n % d)) % d + d) % d) /
                               static_cast<double>(d);
                add(static_cast<double>(an) * std::cos(phase), static_cast<double>(an) * std::sin(phase));
            }
        }
    }
    out.mainTerm = sumRe / static_cast<double>(q);
    out.imagResidual = std::abs(sumIm) / static_cast<double>(q);
    out.remainder = static_cast<double>(out.massAtQ) - out.mainTerm;
    return out;
}

std::int64_t e1_over_moduli(const std::vector<std::int64_t>& moduli, const std::vector<Mat2>& Xi,
                            const std::vector<Mat2>& Omega, const Mat2& aMat) {
    struct M4 {
        std::int64_t a, b, c, d;
    };
    auto to4 = [](const Mat2& m) {
        return M4{to_i64(m.a, "entry"), to_i64(m.b, "entry"), to_i64(m.c, "entry"),
                  to_i64(m.d, "entry")};
    };
    std::vector<M4> prods;
    prods.reserve(Omega.size());
    for (const auto& om : Omega) prods.push_back(to4(aMat * om));

    std::int64_t total = 0;
    for (std::int64_t q : moduli) {
        auto cq = ramanujan_table(q);
        for (const auto& xi : Xi) {
            M4 x = to4(xi);
            for (const auto& p : prods) {
                std::int64_t tr = x.a * p.a + x.b * p.c + x.c * p.b + x.d * p.d;
                total += cq[((tr % q) + q) % q];
            }
        }
    }
    return total;
}

E1Result error_sum_E1(const Alphabet& A, double Q, const Mat2& aMat, double X, double Z,
                      const EnumerationOptions& opts) {
    if (!(Q >= 1.0)) throw ValidationError("error_sum_E1: Q must be >= 1");
    E1Result res;
    std::vector<Mat2> Xi, Omega;
    enumerate_ball(A, X, [&](const Mat2& m) { Xi.push_back(m); }, opts);
    enumerate_ball(A, Z, [&](const Mat2& m) { Omega.push_back(m); }, opts);
    res.xiCount = Xi.size();
    res.omegaCount = Omega.size();
    for (std::int64_t q = static_cast<std::int64_t>(std::ceil(Q)); q < 2.0 * Q; ++q)
        if (is_squarefree(Int(q))) res.moduli.push_back(q);

    const double work = static_cast<double>(res.moduli.size()) * static_cast<double>(Xi.size()) *
                        static_cast<double>(Omega.size());
    if (work > 5e8) throw BudgetError("error_sum_E1: budget exceeded");

    res.valueExact = e1_over_moduli(res.moduli, Xi, Omega, aMat);
    res.value = std::abs(static_cast<double>(res.valueExact));
    const double xiC = static_cast<double>(Xi.size()), omC = static_cast<double>(Omega.size());
    res.bound5 = Q * std::sqrt(xiC) * omC * X *
                 (std::pow(omC, -1.0 / 6.0) + Q / std::pow(X, 0.25) + Q * Q / std::sqrt(X));
    res.bound6 = Q * std::sqrt(omC) * X * X * Z * (std::sqrt(Q / Z) + std::pow(Q, -0.125));
    res.ratio5 = res.value / res.bound5;
    res.ratio6 = res.value / res.bound6;
    return res;
}

ErrorAggregate aggregate_error_sums(const Alphabet& A, const SequenceA& seq,
                                    const AlephSet& aleph, double Qmax, double Q0,
                                    const EnumerationOptions& opts) {
    if (!(Qmax > Q0 && Q0 >= 1.0)) throw ValidationError("aggregate_error_sums: need 1 <= Q0 < Qmax");
    ErrorAggregate agg;
    for (std::int64_t q = 1; q < static_cast<std::int64_t>(Qmax); ++q) {
        if (!is_squarefree(Int(q))) continue;
        auto dec = main_term_decomposition(seq, q, Q0);
        agg.directErrorSum += std::abs(dec.remainder);
    }
    const double logQ = std::log(std::max(2.0, Qmax));
    for (double Q = Q0; Q < Qmax; Q *= 2.0) {
        DyadicErrorRow row;
        row.Q = Q;
        for (const auto& al : aleph.elements) {
            E1Result r = error_sum_E1(A, Q, al, seq.X, seq.Z, opts);
            row.maxAbsE1 = std::max(row.maxAbsE1, r.value);
            row.bound5 = r.bound5;
            row.bound6 = r.bound6;
        }
        agg.dyadicMajorant += logQ * row.maxAbsE1 / Q;
        agg.rows.push_back(row);
    }
    return agg;
}

}  // namespace thinsem
