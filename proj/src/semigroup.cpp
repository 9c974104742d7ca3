#include "thinsem/semigroup.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "thinsem/factor.hpp"

namespace thinsem {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Entries stay below N and one generator step multiplies them by at most
// (maxLetter + 1); keep every norm_sq computation inside int64.
void check_kernel_range(const Alphabet& A, double normBound) {
    const double grow = static_cast<double>(A.max_letter() + 1);
    if (!(normBound > 0) || normBound * grow > 1.0e9)
        throw BudgetError("norm bound too large for the 64-bit enumeration kernel");
}

// Depth-first walk over all words with norm_sq < limit, pruning on the
// norm monotonicity of generator multiplication.  visit is called on the
// determinant-one (even length) elements only.
template <typename Visit>
void dfs_from(const Alphabet& A, Mat2i m, bool even, std::int64_t limit, Visit&& visit) {
    struct Frame {
        Mat2i m;
        bool even;
    };
    std::vector<Frame> stack;
    stack.push_back({m, even});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.m.norm_sq() >= limit) continue;
        if (f.even) visit(f.m);
        for (auto it = A.letters.rbegin(); it != A.letters.rend(); ++it)
            stack.push_back({f.m.times_generator(*it), !f.even});
    }
}

std::int64_t norm_sq_limit(double normBound) {
    double l = normBound * normBound;
    return static_cast<std::int64_t>(std::ceil(l));  // strict: norm_sq < N^2
}

// Predict the ball count from two cheap probes and refuse early when a
// full enumeration would blow the cap.
void guard_predicted_count(const Alphabet& A, double normBound, std::uint64_t cap) {
    if (normBound <= 64.0) return;
    std::uint64_t c1 = 0, c2 = 0;
    dfs_from(A, Mat2i::identity(), true, norm_sq_limit(32.0), [&](const Mat2i&) { ++c1; });
    dfs_from(A, Mat2i::identity(), true, norm_sq_limit(64.0), [&](const Mat2i&) { ++c2; });
    if (c1 == 0 || c2 <= c1) return;
    const double slope = std::log2(static_cast<double>(c2) / static_cast<double>(c1));
    const double predicted = static_cast<double>(c2) * std::pow(normBound / 64.0, slope);
    if (predicted > 4.0 * static_cast<double>(cap))
        throw BudgetError("predicted ball size " + std::to_string(predicted) +
                          " exceeds the enumeration cap " + std::to_string(cap));
}

// All length-two prefixes, in lexicographic order of (a, b).
std::vector<Mat2i> prefix_pairs(const Alphabet& A) {
    std::vector<Mat2i> ps;
    for (std::int64_t a : A.letters)
        for (std::int64_t b : A.letters)
            ps.push_back(Mat2i::identity().times_generator(a).times_generator(b));
    return ps;
}

template <typename PerPrefix>
void run_partitioned(const Alphabet& A, double normBound, const EnumerationOptions& opts,
                     PerPrefix&& perPrefix) {
    check_kernel_range(A, normBound);
    guard_predicted_count(A, normBound, opts.maxCount);
    const auto prefixes = prefix_pairs(A);
    const int nthreads = std::min<int>(resolve_threads(opts.threads),
                                       static_cast<int>(prefixes.size()));
    const std::int64_t limit = norm_sq_limit(normBound);
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex errorMutex;
    auto worker = [&] {
        try {
            for (;;) {
                if (failed.load(std::memory_order_relaxed)) return;
                size_t i = next.fetch_add(1);
                if (i >= prefixes.size()) return;
                perPrefix(i, prefixes[i], limit);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(errorMutex);
            if (!error) error = std::current_exception();
            failed.store(true);
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

void enumerate_ball(const Alphabet& A, double normBound,
                    const std::function<void(const Mat2&)>& sink,
                    const EnumerationOptions& opts) {
    A.validate();
    if (normBound * normBound <= 2.0) return;  // ball below ||I|| is empty

    // Per-prefix buffers replayed in prefix order keep the emission order
    // deterministic regardless of the thread schedule.
    const auto prefixes = prefix_pairs(A);
    std::vector<std::vector<Mat2i>> buffers(prefixes.size());
    std::atomic<std::uint64_t> buffered{1};  // identity
    run_partitioned(A, normBound, opts, [&](size_t i, const Mat2i& p, std::int64_t limit) {
        std::uint64_t local = 0;
        dfs_from(A, p, true, limit, [&](const Mat2i& m) {
            buffers[i].push_back(m);
            if ((++local & 0xfff) == 0 &&
                buffered.load(std::memory_order_relaxed) + local > opts.maxCount)
                throw BudgetError("enumeration cap exceeded");
        });
        if (buffered.fetch_add(local) + local > opts.maxCount)
            throw BudgetError("enumeration cap exceeded");
    });
    sink(Mat2::identity());
    for (const auto& buf : buffers) {
        for (const Mat2i& m : buf) sink(m.to_mat2());
    }
}

TraceStats trace_multiplicities(const Alphabet& A, double normBound,
                                const EnumerationOptions& opts) {
    A.validate();
    TraceStats stats;
    stats.normBound = normBound;
    if (normBound * normBound <= 2.0) return stats;

    const auto prefixes = prefix_pairs(A);
    std::vector<std::unordered_map<std::int64_t, std::uint64_t>> partial(prefixes.size());
    std::atomic<std::uint64_t> seen{0};
    run_partitioned(A, normBound, opts, [&](size_t i, const Mat2i& p, std::int64_t limit) {
        auto& local = partial[i];
        std::uint64_t count = 0;
        dfs_from(A, p, true, limit, [&](const Mat2i& m) {
            ++local[m.trace()];
            ++count;
        });
        if (seen.fetch_add(count) + count > opts.maxCount)
            throw BudgetError("enumeration cap exceeded");
    });

    stats.multiplicities[2] += 1;  // identity
    stats.total = 1;
    for (const auto& local : partial) {
        for (const auto& [t, c] : local) {
            stats.multiplicities[t] += c;
            stats.total += c;
        }
    }
    return stats;
}

void write_trace_stats_csv(const TraceStats& stats, std::ostream& os) {
    os << "t,multiplicity\n";
    for (const auto& [t, m] : stats.multiplicities) os << t << "," << m << "\n";
}

FitResult hensley_fit(const Alphabet& A, const std::vector<double>& normBounds,
                      const EnumerationOptions& opts) {
    if (normBounds.size() < 3) throw ValidationError("hensley_fit: need at least 3 norm bounds");
    for (size_t i = 1; i < normBounds.size(); ++i)
        if (normBounds[i] <= normBounds[i - 1])
            throw ValidationError("hensley_fit: norm bounds must increase");
    std::vector<double> xs, ys;
    for (double N : normBounds) {
        TraceStats s = trace_multiplicities(A, N, opts);
        if (s.total == 0) throw ValidationError("hensley_fit: empty ball at N=" + std::to_string(N));
        xs.push_back(N);
        ys.push_back(static_cast<double>(s.total));
    }
    bool constant = true;
    for (double y : ys)
        if (y != ys.front()) constant = false;
    if (constant) throw ValidationError("hensley_fit: constant counts, nothing to fit");
    return loglog_fit(xs, ys);
}

namespace {

std::uint64_t pack_mod(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return (static_cast<std::uint64_t>(a) << 48) | (static_cast<std::uint64_t>(b) << 32) |
           (static_cast<std::uint64_t>(c) << 16) | static_cast<std::uint64_t>(d);
}

}  // namespace

ModularClosure closure_mod_q(const Alphabet& A, std::int64_t q) {
    A.validate();
    if (q < 1) throw ValidationError("closure_mod_q: modulus must be >= 1");
    if (q > 60000) throw BudgetError("closure_mod_q: modulus too large for packed states");
    ModularClosure cl;
    cl.q = q;
    if (q == 1) {
        cl.elements.push_back({0, 0, 0, 0});
        cl.traceResidues.insert(0);
        return cl;
    }

    std::vector<std::array<std::int64_t, 4>> gens;
    for (std::int64_t a : A.letters) {
        for (std::int64_t b : A.letters) {
            // (a 1;1 0)(b 1;1 0) = (ab+1 a; b 1)
            gens.push_back({(a % q) * (b % q) % q + 1 % q, a % q, b % q, 1 % q});
            gens.back()[0] %= q;
        }
    }

    std::unordered_set<std::uint64_t> seen;
    std::vector<std::array<std::int64_t, 4>> frontier{{1 % q, 0, 0, 1 % q}};
    seen.insert(pack_mod(frontier[0][0], frontier[0][1], frontier[0][2], frontier[0][3]));
    cl.elements.push_back(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::array<std::int64_t, 4>> next;
        for (const auto& m : frontier) {
            for (const auto& g : gens) {
                std::array<std::int64_t, 4> r = {
                    (m[0] * g[0] + m[1] * g[2]) % q, (m[0] * g[1] + m[1] * g[3]) % q,
                    (m[2] * g[0] + m[3] * g[2]) % q, (m[2] * g[1] + m[3] * g[3]) % q};
                if (seen.insert(pack_mod(r[0], r[1], r[2], r[3])).second) {
                    cl.elements.push_back(r);
                    next.push_back(r);
                }
            }
        }
        frontier.swap(next);
    }
    for (const auto& m : cl.elements) cl.traceResidues.insert((m[0] + m[3]) % q);
    return cl;
}

AdmissibilityResult is_admissible(const Alphabet& A, const Int& t, std::int64_t qMax) {
    if (qMax < 2) throw ValidationError("is_admissible: qMax must be >= 2");
    for (std::int64_t q = 2; q <= qMax; ++q) {
        if (!is_squarefree(Int(q))) continue;
        ModularClosure cl = closure_mod_q(A, q);
        Int res = t % q;
        if (res < 0) res += q;
        if (!cl.traceResidues.count(static_cast<std::int64_t>(res)))
            return {false, q};
    }
    return {true, 0};
}

Int primitivity_gcd(const Alphabet& A, double normBound, const EnumerationOptions& opts) {
    TraceStats s = trace_multiplicities(A, normBound, opts);
    if (s.total == 0) throw ValidationError("primitivity_gcd: empty ball");
    Int g = 0;
    for (const auto& [t, m] : s.multiplicities) g = gcd(g, Int(t));
    return g;
}

}  // namespace thinsem
