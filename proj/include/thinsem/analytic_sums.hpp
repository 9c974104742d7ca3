#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "thinsem/fit.hpp"
#include "thinsem/mat2.hpp"

namespace thinsem {

// Even smooth bump, at least 1 on [-10, 10], supported on [-W, W]:
// scale * exp(1 - 1/(1 - (t/W)^2)), scaled so the value at t = 10 is 1.
struct BumpFunction {
    double W = 20.0;
    double scale = 0.0;

    static BumpFunction standard() { return with_width(20.0); }
    static BumpFunction with_width(double W);

    double operator()(double t) const;
    double mass_1d() const;  // integral over the support, by quadrature
};

// Product bump on 2x2 matrices in the rotated coordinates
// (a+d, a-d, b+c, b-c), each scaled by X.
double bump_weight(const BumpFunction& phi, double X, std::int64_t a, std::int64_t b,
                   std::int64_t c, std::int64_t d);

struct Sl2SupportBall {
    double X = 0.0;
    std::vector<std::array<std::int16_t, 4>> pts;  // (a, b, c, d)
    std::vector<double> weight;                    // phi_X at the point, > 0
    double mass = 0.0;                             // sum of weights

    std::size_t size() const { return pts.size(); }
};

struct AnalyticOptions {
    int threads = 0;
    std::uint64_t maxPoints = 200'000'000;  // support/ball point cap
};

// Every xi in SL_2(Z) with phi_X(xi) > 0, each exactly once, generated by
// iterating coprime bottom rows and solving the determinant equation along
// the (a, b) lattice line.
Sl2SupportBall enumerate_sl2_support(double X, const BumpFunction& phi,
                                     const AnalyticOptions& opts = {});

// Norm ball { xi in SL_2(Z) : ||xi|| < X } (Frobenius norm).
std::vector<std::array<std::int32_t, 4>> sl2_norm_ball(double X, const AnalyticOptions& opts = {});

// Streaming variant of the support enumeration emitting exact matrices.
void enumerate_sl2_ball(double X, const BumpFunction& phi,
                        const std::function<void(const Mat2&)>& sink,
                        const AnalyticOptions& opts = {});

struct ExpSumResult {
    std::complex<double> value;
    double boundRHS = 0.0;  // q^{-3/2} X^2 + X^{3/2} + q X
    double ratio = 0.0;     // |value| / boundRHS
    double mass = 0.0;      // weighted ball mass (the q = 1 value)
    std::uint64_t points = 0;
};

// sum over xi of phi_X(xi) e_q(xi . s), s a primitive 4-vector dotted with
// the entries (a, b, c, d).
ExpSumResult exp_sum_sl2(double X, std::int64_t q, const std::array<std::int64_t, 4>& s,
                         const BumpFunction& phi, const AnalyticOptions& opts = {});

// Same sum evaluated against a prebuilt support ball (grid sweeps).
ExpSumResult exp_sum_sl2_prepared(const Sl2SupportBall& ball, std::int64_t q,
                                  const std::array<std::int64_t, 4>& s,
                                  const AnalyticOptions& opts = {});

// Seeded primitive integer 4-vectors with entries in [-range, range].
std::vector<std::array<std::int64_t, 4>> seeded_primitive_vectors(int count, std::uint64_t seed,
                                                                  std::int64_t range = 100);

// S_r(a; k) = (1/r) sum_{y mod r} e_r(a y^2 + k y), gcd(a, r) = 1.
std::complex<double> gauss_sum_Sr(std::int64_t r, std::int64_t a, std::int64_t k);

// G_X(theta; lambda) = sum_x phi(x/X) e(theta x^2 + lambda x).
std::complex<double> theta_sum_GX(double X, double theta, double lambda, const BumpFunction& phi);

// J_X(beta; z) = int phi(x/X) e(beta x^2 + z x) dx by adaptive quadrature
// to absolute tolerance 1e-8 * X.
std::complex<double> oscillatory_JX(double X, double beta, double z, const BumpFunction& phi);

struct EnergyReport {
    double X = 0.0;
    std::uint64_t ball = 0;
    std::uint64_t energy = 0;      // # of gamma1+gamma2 = gamma3+gamma4
    std::uint64_t diffEnergy = 0;  // sum over M of N_M(X)^2
    std::uint64_t pairTotal = 0;   // sum over M of N_M(X) = ball^2
    std::uint64_t distinctSums = 0;
    std::uint64_t distinctDiffs = 0;
    std::uint64_t maxSumMultiplicity = 0;
};

EnergyReport additive_energy(double X, const AnalyticOptions& opts = {});

struct EnergyFit {
    std::vector<EnergyReport> rows;
    double exponent = 0.0;  // slope of log E against log X
};

EnergyFit energy_fit(const std::vector<double>& grid, const AnalyticOptions& opts = {});

}  // namespace thinsem
