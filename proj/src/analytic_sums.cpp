#include "thinsem/analytic_sums.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

namespace thinsem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> e_of(double x) {
    double f = x - std::floor(x);
    return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Splits [lo, hi) into deterministic chunks; body(chunk, a, b) may run on
// any thread but the chunk boundaries depend only on the inputs.
template <typename Body>
int parallel_range(std::int64_t lo, std::int64_t hi, int threads, Body&& body) {
    const int n = std::max(1, threads);
    if (n == 1 || hi - lo < 2) {
        body(0, lo, hi);
        return 1;
    }
    std::int64_t chunk = (hi - lo + n - 1) / n;
    std::vector<std::thread> pool;
    int used = 0;
    for (int t = 0; t < n; ++t) {
        std::int64_t a = lo + t * chunk, b = std::min(hi, a + chunk);
        if (a >= b) break;
        ++used;
        pool.emplace_back([&body, t, a, b] { body(t, a, b); });
    }
    for (auto& th : pool) th.join();
    return used;
}

}  // namespace

BumpFunction BumpFunction::with_width(double W) {
    if (!(W > 10.0)) throw ValidationError("bump width must exceed 10");
    BumpFunction phi;
    phi.W = W;
    const double u = 10.0 / W;
    phi.scale = std::exp(1.0 / (1.0 - u * u) - 1.0);
    return phi;
}

double BumpFunction::operator()(double t) const {
    const double u = t / W;
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return scale * std::exp(1.0 - 1.0 / (1.0 - u2));
}

double BumpFunction::mass_1d() const {
    // plain Simpson grid; the integrand is smooth and compactly supported
    const int n = 20000;
    const double h = 2.0 * W / n;
    double s = (*this)(-W) + (*this)(W);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * (*this)(-W + i * h);
    return s * h / 3.0;
}

double bump_weight(const BumpFunction& phi, double X, std::int64_t a, std::int64_t b,
                   std::int64_t c, std::int64_t d) {
    return phi((a + d) / X) * phi((a - d) / X) * phi((b + c) / X) * phi((b - c) / X);
}

namespace {

// Visit every SL2(Z) point with all of |a|,|d| < boundAD and |b|,|c| < boundBC,
// via coprime (c, d) rows; emits each matrix exactly once.
template <typename Visit>
void visit_sl2_box(std::int64_t boundC, std::int64_t boundD, Visit&& visit) {
    for (std::int64_t c = -boundC + 1; c < boundC; ++c) {
        for (std::int64_t d = -boundD + 1; d < boundD; ++d) {
            if (std::gcd(c, d) != 1) continue;  // gcd(0, x) = |x|
            // base solution of a*d - b*c = 1
            std::int64_t a0, b0;
            if (c == 0) {
                a0 = d;  // d = +-1
                b0 = 0;
            } else {
                // extended gcd for inverse of d mod |c|
                std::int64_t old_r = std::abs(c), r = ((d % old_r) + old_r) % old_r;
                std::int64_t old_s = 0, s = 1;
                while (r != 0) {
                    std::int64_t qq = old_r / r;
                    std::int64_t tmp = old_r - qq * r;
                    old_r = r;
                    r = tmp;
                    tmp = old_s - qq * s;
                    old_s = s;
                    s = tmp;
                }
                // old_s * d = old_r = 1 (mod |c|)
                a0 = old_s;
                b0 = (a0 * d - 1) / c;
            }
            visit(c, d, a0, b0);
        }
    }
}

}  // namespace

Sl2SupportBall enumerate_sl2_support(double X, const BumpFunction& phi,
                                     const AnalyticOptions& opts) {
    if (!(X > 0)) throw ValidationError("enumerate_sl2_support: X must be positive");
    const double M = phi.W * X;  // support needs all |a+-d|, |b+-c| < M
    if (M > 30000.0) throw BudgetError("enumerate_sl2_support: support exceeds 16-bit coordinates");
    const double predicted = 14.0 * M * M;
    if (predicted > static_cast<double>(opts.maxPoints))
        throw BudgetError("enumerate_sl2_support: predicted point count exceeds cap");

    Sl2SupportBall ball;
    ball.X = X;
    const std::int64_t bound = static_cast<std::int64_t>(std::ceil(M));
    visit_sl2_box(bound, bound, [&](std::int64_t c, std::int64_t d, std::int64_t a0,
                                    std::int64_t b0) {
        // need |a| < M - |d| and |b| < M - |c| along a = a0 + k c, b = b0 + k d
        const double alim = M - std::abs(d), blim = M - std::abs(c);
        if (alim <= 0 || blim <= 0) return;
        double lo = -1e18, hi = 1e18;
        auto clamp_k = [&](double coeff, double base, double lim) {
            if (coeff == 0.0) {
                if (std::abs(base) >= lim) lo = 1, hi = 0;
                return;
            }
            double k1 = (-lim - base) / coeff, k2 = (lim - base) / coeff;
            lo = std::max(lo, std::min(k1, k2));
            hi = std::min(hi, std::max(k1, k2));
        };
        clamp_k(static_cast<double>(c), static_cast<double>(a0), alim);
        clamp_k(static_cast<double>(d), static_cast<double>(b0), blim);
        if (lo > hi) return;
        for (std::int64_t k = static_cast<std::int64_t>(std::floor(lo)) - 1;
             k <= static_cast<std::int64_t>(std::ceil(hi)) + 1; ++k) {
            std::int64_t a = a0 + k * c, b = b0 + k * d;
            double w = bump_weight(phi, X, a, b, c, d);
            if (w <= 0.0) continue;
            ball.pts.push_back({static_cast<std::int16_t>(a), static_cast<std::int16_t>(b),
                                static_cast<std::int16_t>(c), static_cast<std::int16_t>(d)});
            ball.weight.push_back(w);
            ball.mass += w;
        }
    });
    return ball;
}

std::vector<std::array<std::int32_t, 4>> sl2_norm_ball(double X, const AnalyticOptions& opts) {
    if (!(X > 0)) throw ValidationError("sl2_norm_ball: X must be positive");
    if (X > 100000.0) throw BudgetError("sl2_norm_ball: X too large");
    const double X2 = X * X;
    if (7.0 * X2 > static_cast<double>(opts.maxPoints))
        throw BudgetError("sl2_norm_ball: predicted count exceeds cap");
    std::vector<std::array<std::int32_t, 4>> out;
    const std::int64_t bound = static_cast<std::int64_t>(std::ceil(X));
    visit_sl2_box(bound, bound, [&](std::int64_t c, std::int64_t d, std::int64_t a0,
                                    std::int64_t b0) {
        const double rem = X2 - static_cast<double>(c * c + d * d);
        if (rem <= 0) return;
        // (a0+kc)^2 + (b0+kd)^2 < rem, a quadratic in k
        const double A = static_cast<double>(c * c + d * d);
        const double B = 2.0 * (static_cast<double>(a0) * c + static_cast<double>(b0) * d);
        const double C = static_cast<double>(a0) * a0 + static_cast<double>(b0) * b0 - rem;
        const double disc = B * B - 4 * A * C;
        if (disc <= 0) return;
        const double sq = std::sqrt(disc);
        const std::int64_t klo = static_cast<std::int64_t>(std::floor((-B - sq) / (2 * A))) - 1;
        const std::int64_t khi = static_cast<std::int64_t>(std::ceil((-B + sq) / (2 * A))) + 1;
        for (std::int64_t k = klo; k <= khi; ++k) {
            std::int64_t a = a0 + k * c, b = b0 + k * d;
            if (static_cast<double>(a * a + b * b + c * c + d * d) < X2)
                out.push_back({static_cast<std::int32_t>(a), static_cast<std::int32_t>(b),
                               static_cast<std::int32_t>(c), static_cast<std::int32_t>(d)});
        }
    });
    return out;
}

void enumerate_sl2_ball(double X, const BumpFunction& phi,
                        const std::function<void(const Mat2&)>& sink,
                        const AnalyticOptions& opts) {
    Sl2SupportBall ball = enumerate_sl2_support(X, phi, opts);
    for (const auto& p : ball.pts)
        sink(Mat2(Int(p[0]), Int(p[1]), Int(p[2]), Int(p[3])));
}

ExpSumResult exp_sum_sl2_prepared(const Sl2SupportBall& ball, std::int64_t q,
                                  const std::array<std::int64_t, 4>& s,
                                  const AnalyticOptions& opts) {
    if (q < 1) throw ValidationError("exp_sum_sl2: modulus must be >= 1");
    std::int64_t g = std::gcd(std::gcd(std::abs(s[0]), std::abs(s[1])),
                              std::gcd(std::abs(s[2]), std::abs(s[3])));
    if (g != 1) throw ValidationError("exp_sum_sl2: s must be a primitive vector");

    std::vector<std::complex<double>> table(q);
    for (std::int64_t r = 0; r < q; ++r) table[r] = e_of(static_cast<double>(r) / q);

    const int threads = resolve_threads(opts.threads);
    // per-chunk partial sums combined in chunk order for bit reproducibility
    std::vector<std::complex<double>> partial(static_cast<size_t>(threads) + 1, {0.0, 0.0});
    parallel_range(0, static_cast<std::int64_t>(ball.size()), threads,
                   [&](int chunk, std::int64_t lo, std::int64_t hi) {
                       std::complex<double> local{0.0, 0.0};
                       for (std::int64_t i = lo; i < hi; ++i) {
                           const auto& p = ball.pts[i];
                           std::int64_t dot = p[0] * s[0] + p[1] * s[1] + p[2] * s[2] + p[3] * s[3];
                           std::int64_t r = dot % q;
                           if (r < 0) r += q;
                           local += ball.weight[i] * table[r];
                       }
                       partial[static_cast<size_t>(chunk)] = local;
                   });
    std::complex<double> total{0.0, 0.0};
    for (const auto& z : partial) total += z;

    ExpSumResult res;
    res.value = total;
    res.mass = ball.mass;
    res.points = ball.size();
    const double X = ball.X;
    res.boundRHS = std::pow(static_cast<double>(q), -1.5) * X * X + std::pow(X, 1.5) +
                   static_cast<double>(q) * X;
    res.ratio = std::abs(total) / res.boundRHS;
    return res;
}

ExpSumResult exp_sum_sl2(double X, std::int64_t q, const std::array<std::int64_t, 4>& s,
                         const BumpFunction& phi, const AnalyticOptions& opts) {
    Sl2SupportBall ball = enumerate_sl2_support(X, phi, opts);
    return exp_sum_sl2_prepared(ball, q, s, opts);
}

std::vector<std::array<std::int64_t, 4>> seeded_primitive_vectors(int count, std::uint64_t seed,
                                                                  std::int64_t range) {
    if (count < 0 || range < 1) throw ValidationError("seeded_primitive_vectors: bad parameters");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(-range, range);
    std::vector<std::array<std::int64_t, 4>> out;
    while (static_cast<int>(out.size()) < count) {
        std::array<std::int64_t, 4> s{dist(rng), dist(rng), dist(rng), dist(rng)};
        std::int64_t g = std::gcd(std::gcd(std::abs(s[0]), std::abs(s[1])),
                                  std::gcd(std::abs(s[2]), std::abs(s[3])));
        if (g == 1) out.push_back(s);
    }
    return out;
}

std::complex<double> gauss_sum_Sr(std::int64_t r, std::int64_t a, std::int64_t k) {
    if (r < 1) throw ValidationError("gauss_sum_Sr: r must be >= 1");
    const std::int64_t am = ((a % r) + r) % r;
    const std::int64_t km = ((k % r) + r) % r;
    if (std::gcd(am, r) != 1) throw ValidationError("gauss_sum_Sr: a must be coprime to r");
    std::complex<double> sum{0.0, 0.0};
    for (std::int64_t y = 0; y < r; ++y) {
        std::int64_t phase = (am * ((y * y) % r) + km * y) % r;
        sum += e_of(static_cast<double>(phase) / r);
    }
    return sum / static_cast<double>(r);
}

std::complex<double> theta_sum_GX(double X, double theta, double lambda, const BumpFunction& phi) {
    if (!(X >= 1.0)) throw ValidationError("theta_sum_GX: X must be >= 1");
    const std::int64_t bound = static_cast<std::int64_t>(std::ceil(phi.W * X));
    std::complex<double> sum{0.0, 0.0};
    for (std::int64_t x = -bound; x <= bound; ++x) {
        double w = phi(static_cast<double>(x) / X);
        if (w == 0.0) continue;
        double xx = static_cast<double>(x);
        sum += w * e_of(theta * xx * xx + lambda * xx);
    }
    return sum;
}

namespace {

// 12-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGL12Node[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                                 0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr double kGL12Weight[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                                   0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

std::complex<double> gl12_panels(double R, std::int64_t panels, double X, double beta, double z,
                                 const BumpFunction& phi) {
    const double h = 2.0 * R / static_cast<double>(panels);
    std::complex<double> total{0.0, 0.0};
    for (std::int64_t i = 0; i < panels; ++i) {
        const double mid = -R + (static_cast<double>(i) + 0.5) * h;
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < 6; ++j) {
            for (double sgn : {-1.0, 1.0}) {
                const double x = mid + sgn * 0.5 * h * kGL12Node[j];
                const double w = phi(x / X);
                if (w != 0.0) acc += (kGL12Weight[j] * w) * e_of(beta * x * x + z * x);
            }
        }
        total += acc * (0.5 * h);
    }
    return total;
}

}  // namespace

std::complex<double> oscillatory_JX(double X, double beta, double z, const BumpFunction& phi) {
    if (!(X > 0)) throw ValidationError("oscillatory_JX: X must be positive");
    const double R = phi.W * X;
    const double tol = 1e-8 * X;
    // composite Gauss-Legendre with the panel count keyed to the total
    // phase variation, doubled until two consecutive refinements agree
    const double cycles = std::abs(beta) * R * R + std::abs(z) * R;
    std::int64_t panels = std::max<std::int64_t>(32, static_cast<std::int64_t>(1.2 * cycles));
    if (panels > 40'000'000) throw BudgetError("oscillatory_JX: phase variation beyond budget");
    std::complex<double> prev = gl12_panels(R, panels, X, beta, z, phi);
    for (int round = 0; round < 4; ++round) {
        panels *= 2;
        if (panels > 80'000'000) throw BudgetError("oscillatory_JX: quadrature budget exhausted");
        std::complex<double> next = gl12_panels(R, panels, X, beta, z, phi);
        if (std::abs(next - prev) <= tol) return next;
        prev = next;
    }
    throw BudgetError("oscillatory_JX: quadrature did not converge within the doubling cap");
}

namespace {

// Grouped quadruple counting: split each matrix into its (a, b) cell and
// (c, d) payload, then for every cell-sum (or difference) accumulate the
// payload-sum histogram on a flat grid and add up squared counts.
struct CellIndex {
    std::int32_t lim;                 // cells range over [-lim, lim]
    std::int32_t side;                // 2*lim + 1
    std::vector<std::int32_t> cellOf;  // (a, b) -> cell id or -1
    std::vector<std::array<std::int32_t, 2>> cells;           // occupied (a, b)
    std::vector<std::vector<std::array<std::int32_t, 2>>> payload;  // (c, d) lists

    explicit CellIndex(std::int32_t lim_) : lim(lim_), side(2 * lim_ + 1) {
        cellOf.assign(static_cast<size_t>(side) * side, -1);
    }
    std::int32_t id_at(std::int64_t a, std::int64_t b) const {
        if (a < -lim || a > lim || b < -lim || b > lim) return -1;
        return cellOf[static_cast<size_t>(a + lim) * side + (b + lim)];
    }
    void insert(std::int32_t a, std::int32_t b, std::int32_t c, std::int32_t d) {
        size_t key = static_cast<size_t>(a + lim) * side + (b + lim);
        if (cellOf[key] < 0) {
            cellOf[key] = static_cast<std::int32_t>(cells.size());
            cells.push_back({a, b});
            payload.emplace_back();
        }
        payload[cellOf[key]].push_back({c, d});
    }
};

struct GroupedEnergy {
    std::uint64_t energy = 0;
    std::uint64_t pairs = 0;
    std::uint64_t distinct = 0;
    std::uint64_t maxMult = 0;
};

// sign: +1 counts gamma1 + gamma2 = v, -1 counts gamma1 - gamma2 = v.
GroupedEnergy grouped_energy(const CellIndex& idx, std::int32_t X, int sign, int threads) {
    const std::int32_t lim = 2 * X;
    const std::int32_t side = 2 * lim + 1;
    GroupedEnergy out;
    std::mutex accMutex;
    parallel_range(-lim, lim + 1, threads, [&](int /*chunk*/, std::int64_t waLo, std::int64_t waHi) {
        std::vector<std::uint32_t> hist(static_cast<size_t>(side) * side, 0);
        std::vector<std::int64_t> touched;
        GroupedEnergy local;
        for (std::int64_t wa = waLo; wa < waHi; ++wa) {
            for (std::int64_t wb = -lim; wb <= lim; ++wb) {
                touched.clear();
                for (size_t i1 = 0; i1 < idx.cells.size(); ++i1) {
                    const auto& c1 = idx.cells[i1];
                    std::int64_t a2 = sign > 0 ? wa - c1[0] : c1[0] - wa;
                    std::int64_t b2 = sign > 0 ? wb - c1[1] : c1[1] - wb;
                    std::int32_t i2 = idx.id_at(a2, b2);
                    if (i2 < 0) continue;
                    for (const auto& p1 : idx.payload[i1]) {
                        for (const auto& p2 : idx.payload[static_cast<size_t>(i2)]) {
                            std::int64_t vc = sign > 0 ? p1[0] + p2[0] : p1[0] - p2[0];
                            std::int64_t vd = sign > 0 ? p1[1] + p2[1] : p1[1] - p2[1];
                            size_t key = static_cast<size_t>(vc + lim) * side + (vd + lim);
                            if (hist[key]++ == 0) touched.push_back(static_cast<std::int64_t>(key));
                        }
                    }
                }
                for (std::int64_t key : touched) {
                    std::uint64_t cnt = hist[static_cast<size_t>(key)];
                    local.energy += cnt * cnt;
                    local.pairs += cnt;
                    local.distinct += 1;
                    local.maxMult = std::max(local.maxMult, cnt);
                    hist[static_cast<size_t>(key)] = 0;
                }
            }
        }
        std::lock_guard<std::mutex> lock(accMutex);
        out.energy += local.energy;
        out.pairs += local.pairs;
        out.distinct += local.distinct;
        out.maxMult = std::max(out.maxMult, local.maxMult);
    });
    return out;
}

}  // namespace

EnergyReport additive_energy(double X, const AnalyticOptions& opts) {
    auto pts = sl2_norm_ball(X, opts);
    const double pairBudget = static_cast<double>(pts.size()) * static_cast<double>(pts.size());
    if (pairBudget > 4.0e10) throw BudgetError("additive_energy: pair budget exceeded");

    const std::int32_t Xi = static_cast<std::int32_t>(std::ceil(X));
    CellIndex idx(Xi);
    for (const auto& p : pts) idx.insert(p[0], p[1], p[2], p[3]);

    const int threads = resolve_threads(opts.threads);
    GroupedEnergy sums = grouped_energy(idx, Xi, +1, threads);
    GroupedEnergy diffs = grouped_energy(idx, Xi, -1, threads);

    EnergyReport rep;
    rep.X = X;
    rep.ball = pts.size();
    rep.energy = sums.energy;
    rep.diffEnergy = diffs.energy;
    rep.pairTotal = diffs.pairs;
    rep.distinctSums = sums.distinct;
    rep.distinctDiffs = diffs.distinct;
    rep.maxSumMultiplicity = sums.maxMult;
    return rep;
}

EnergyFit energy_fit(const std::vector<double>& grid, const AnalyticOptions& opts) {
    if (grid.size() < 2) throw ValidationError("energy_fit: need at least two grid points");
    EnergyFit fit;
    std::vector<double> xs, ys;
    for (double X : grid) {
        EnergyReport r = additive_energy(X, opts);
        xs.push_back(X);
        ys.push_back(static_cast<double>(r.energy));
        fit.rows.push_back(r);
    }
    fit.exponent = loglog_fit(xs, ys).slope;
    return fit;
}

}  // namespace thinsem
