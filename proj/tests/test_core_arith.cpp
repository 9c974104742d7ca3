#include <doctest.h>

#include <random>

#include "thinsem/continued_fraction.hpp"
#include "thinsem/factor.hpp"
#include "thinsem/pell.hpp"
#include "thinsem/quadratic.hpp"

using namespace thinsem;

TEST_CASE("rational expansion: base cases") {
    auto one = cf_expand_rational(1, 1);
    REQUIRE(one.preperiod == std::vector<Int>{1});
    auto seven = cf_expand_rational(7, 1);
    REQUIRE(seven.preperiod == std::vector<Int>{7});
    auto pi = cf_expand_rational(355, 113);
    REQUIRE(pi.preperiod == std::vector<Int>({3, 7, 16}));
    CHECK_THROWS_AS(cf_expand_rational(4, 2), ValidationError);
    CHECK_THROWS_AS(cf_expand_rational(1, 0), ValidationError);
}

TEST_CASE("rational expansion: canonical round trip for all denominators <= 300") {
    // exhaustive small sweep plus random larger pairs up to 1e4
    for (std::int64_t den = 1; den <= 300; ++den) {
        for (std::int64_t num = 1; num <= 2 * den; ++num) {
            if (boost::multiprecision::gcd(Int(num), Int(den)) != 1) continue;
            auto cf = cf_expand_rational(num, den);
            if (cf.preperiod.size() > 1) CHECK(cf.preperiod.back() >= 2);
            CHECK(cf_evaluate_rational(cf) == Rat(num, den));
        }
    }
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(1, 10000);
    int done = 0;
    while (done < 500) {
        std::int64_t num = d(rng), den = d(rng);
        if (boost::multiprecision::gcd(Int(num), Int(den)) != 1) continue;
        auto cf = cf_expand_rational(num, den);
        CHECK(cf_evaluate_rational(cf) == Rat(num, den));
        ++done;
    }
}

TEST_CASE("surd expansion: sqrt(3) and the golden ratio") {
    auto rt3 = cf_expand_quadratic(make_quadratic(0, 1, 1, 3));
    CHECK(rt3.preperiod == std::vector<Int>{1});
    CHECK(rt3.period == std::vector<Int>({1, 2}));

    auto golden = cf_expand_quadratic(make_quadratic(1, 1, 2, 5));
    CHECK(golden.preperiod.empty());
    CHECK(golden.period == std::vector<Int>{1});

    CHECK_THROWS_AS(make_quadratic(1, 1, 2, 9), ValidationError);  // square radicand
    CHECK_THROWS_AS(make_quadratic(1, 0, 2, 5), ValidationError);  // rational
}

TEST_CASE("surd expansion: worked example (2521/2911)(1+sqrt 3)") {
    auto x = make_quadratic(2521, 2521, 2911, 3);
    auto cf = cf_expand_quadratic(x);
    CHECK(cf.preperiod.empty());
    std::vector<Int> expected{2, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 1,
                              3, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 1, 1};
    CHECK(cf.period == expected);
    CHECK(is_reduced_surd(x));  // purely periodic iff reduced
}

TEST_CASE("surd expansion: exact round trip through the period matrix") {
    std::vector<QuadraticIrrational> xs = {
        make_quadratic(0, 1, 1, 2),   make_quadratic(0, 1, 1, 3),
        make_quadratic(1, 1, 2, 5),   make_quadratic(3, 2, 5, 7),
        make_quadratic(-4, 3, 7, 13), make_quadratic(2521, 2521, 2911, 3),
        make_quadratic(0, 1, 1, 94),  make_quadratic(12, 5, 3, 61)};
    for (const auto& x : xs) {
        auto cf = cf_expand_quadratic(x);
        CHECK(cf_represents(cf, x));
        // purely periodic exactly for reduced surds
        CHECK(cf.preperiod.empty() == is_reduced_surd(x));
        // direct evaluation agrees when the period discriminant is small
        if (cf.period.size() <= 8) CHECK(cf_evaluate_quadratic(cf) == x);
    }
    // a wrong expansion is rejected
    auto cf3 = cf_expand_quadratic(make_quadratic(0, 1, 1, 3));
    CHECK_FALSE(cf_represents(cf3, make_quadratic(0, 1, 1, 2)));
}

TEST_CASE("surd expansion: minimal period") {
    // sqrt(2) has period [2], so a doubled listing would be non-minimal
    auto rt2 = cf_expand_quadratic(make_quadratic(0, 1, 1, 2));
    CHECK(rt2.period == std::vector<Int>{2});
    // period of sqrt(94) has length 16, a classical stress case
    auto rt94 = cf_expand_quadratic(make_quadratic(0, 1, 1, 94));
    CHECK(rt94.period.size() == 16);
}

TEST_CASE("pell: examples and validity sweep") {
    auto p12 = pell_fundamental(12);
    CHECK(p12.t == 4);
    CHECK(p12.s == 1);
    auto p5 = pell_fundamental(5);
    CHECK(p5.t == 3);
    CHECK(p5.s == 1);
    auto p2 = pell_fundamental(2);
    CHECK(p2.t == 6);
    CHECK(p2.s == 4);
    CHECK_THROWS_AS(pell_fundamental(16), ValidationError);

    for (std::int64_t delta = 2; delta <= 500; ++delta) {
        if (is_perfect_square(Int(delta))) continue;
        auto sol = pell_fundamental(delta);
        CHECK(sol.t * sol.t - Int(delta) * sol.s * sol.s == 4);
        CHECK(sol.t > 2);
        CHECK(sol.s >= 1);
    }
}

TEST_CASE("pell: minimality against brute force scan") {
    const Int scanCap = 200'000;
    int verified = 0;
    for (std::int64_t delta = 2; delta <= 150; ++delta) {
        if (is_perfect_square(Int(delta))) continue;
        auto sol = pell_fundamental(delta);
        // scan s upward; no solution may appear below the claimed minimum
        Int limit = sol.s < scanCap ? sol.s : scanCap;
        for (Int s = 1; s < limit; ++s) {
            Int t2 = 4 + Int(delta) * s * s;
            CHECK_FALSE(is_perfect_square(t2));
        }
        if (sol.s <= scanCap) {
            Int t;
            CHECK(is_perfect_square(4 + Int(delta) * sol.s * sol.s, &t));
            CHECK(t == sol.t);
            ++verified;
        }
    }
    CHECK(verified >= 95);  // nearly all deltas in range are fully scanned
}

TEST_CASE("squarefree part: examples and reconstruction sweep") {
    auto d12 = squarefree_part(12);
    CHECK(d12.sqf == 3);
    CHECK(d12.cofactorRoot == 2);
    auto d1 = squarefree_part(1);
    CHECK(d1.sqf == 1);
    CHECK(d1.cofactorRoot == 1);
    auto big = squarefree_part(Int("10340256951198912"));
    CHECK(big.sqf == 3);
    CHECK(big.cofactorRoot == 58709048);
    CHECK_THROWS_AS(squarefree_part(0), ValidationError);

    for (std::int64_t n = 1; n <= 1000000; ++n) {
        auto d = squarefree_part(n);
        REQUIRE(d.sqf * d.cofactorRoot * d.cofactorRoot == n);
    }
    // no square divisor above 1 in the square-free part
    for (std::int64_t n = 1; n <= 20000; ++n) {
        auto d = squarefree_part(n);
        for (std::int64_t p = 2; p * p <= d.sqf; ++p)
            REQUIRE(d.sqf % (p * p) != 0);
    }
}

TEST_CASE("almost prime class") {
    CHECK(almost_prime_class(101) == 1);
    CHECK(almost_prime_class(12) == 3);
    CHECK(almost_prime_class(5822) == 3);  // 2 * 41 * 71
    CHECK(almost_prime_class(1) == 0);
    CHECK(is_almost_prime(5822, 3));
    CHECK_FALSE(is_almost_prime(5822, 2));
}

TEST_CASE("mat2 norm monotonicity under generator multiplication") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> entry(0, 50), letter(1, 10);
    for (int i = 0; i < 2000; ++i) {
        Mat2 m(entry(rng), entry(rng), entry(rng), entry(rng));
        Mat2 g = Mat2::generator(letter(rng));
        CHECK((m * g).norm_sq() >= m.norm_sq());
    }
}

TEST_CASE("fundamental discriminant helper") {
    CHECK(fundamental_discriminant_from_sqf(5) == 5);     // 5 = 1 mod 4
    CHECK(fundamental_discriminant_from_sqf(3) == 12);    // 3 = 3 mod 4
    CHECK(fundamental_discriminant_from_sqf(2) == 8);
}
