#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "diffam/field.hpp"
#include "test_oracles.hpp"

using namespace diffam;

TEST_CASE("build_field basics") {
    const Field f2 = build_field(2, 1);
    CHECK(f2.r == 2);
    CHECK(f2.generator == 1);

    CHECK_THROWS_AS(build_field(4, 2), std::invalid_argument);  // 4 is not prime
    CHECK_THROWS_AS(build_field(2, 0), std::invalid_argument);
}

TEST_CASE("GF(16) picks the lex-least irreducible modulus and least generator") {
    const Field f = build_field(2, 4);
    // independent oracle: trial-division scan over all degree-4 candidates
    const i64 expected = oracles::gf2_least_irreducible(4);
    CHECK(expected == 0b10011);  // x^4 + x + 1
    i64 modulus_code = 0;
    for (std::size_t i = f.modulus.size(); i-- > 0;) modulus_code = modulus_code * 2 + f.modulus[i];
    CHECK(modulus_code == expected);

    CHECK(f.generator == 2);  // x itself is primitive here
    // brute-force order of x by raw repeated multiplication
    i64 acc = f.generator, ord = 1;
    while (acc != 1) { acc = f.mul(acc, f.generator); ++ord; }
    CHECK(ord == 15);
}

TEST_CASE("trace examples") {
    const Field f4 = build_field(2, 2);  // modulus x^2 + x + 1, omega = code 2
    CHECK(f4.trace(0, 1) == 0);
    CHECK(f4.trace(2, 1) == 1);  // omega + omega^2 = 1
    CHECK_THROWS_AS(build_field(2, 4).trace(1, 3), std::invalid_argument);  // 3 does not divide 4

    const Field f64 = build_field(2, 6);
    i64 zeros = 0;
    for (i64 i = 0; i < 63; ++i)
        if (f64.trace(f64.pow_of_g[static_cast<std::size_t>(i)], 1) == 0) ++zeros;
    CHECK(zeros == 31);  // the (63, 31, 15) trace-zero set
}

TEST_CASE("trace is additive") {
    // exhaustive over all pairs for small fields
    for (const auto& [p, m] : std::vector<std::pair<i64, int>>{{2, 6}, {3, 4}, {5, 3}, {2, 12}}) {
        const Field f = build_field(p, m);
        const i64 step = f.r <= 4096 ? 1 : 7;
        for (i64 x = 0; x < f.r; x += step)
            for (i64 y = 0; y < f.r; y += step)
                CHECK(f.trace_to_prime(f.add(x, y)) ==
                      (f.trace_to_prime(x) + f.trace_to_prime(y)) % p);
    }
    // basis-telescoped exhaustive check for GF(2^16): additivity against all
    // basis vectors at every point implies additivity for all pairs
    const Field big = build_field(2, 16);
    std::vector<i64> tr(static_cast<std::size_t>(big.r));
    for (i64 x = 0; x < big.r; ++x) tr[static_cast<std::size_t>(x)] = big.trace_to_prime(x);
    for (i64 x = 0; x < big.r; ++x)
        for (int j = 0; j < 16; ++j) {
            const i64 e = i64{1} << j;
            REQUIRE(tr[static_cast<std::size_t>(x ^ e)] ==
                    (tr[static_cast<std::size_t>(x)] ^ tr[static_cast<std::size_t>(e)]));
        }
}

TEST_CASE("cyclotomic classes") {
    const Field f13 = build_field(13, 1);
    CHECK(f13.generator == 2);
    const auto t = cyclotomic_classes(f13, 4);
    CHECK(t.classes[0] == std::vector<i64>{1, 3, 9});

    const auto all = cyclotomic_classes(f13, 1);
    CHECK(all.classes.size() == 1);
    CHECK(all.classes[0].size() == 12);

    CHECK_THROWS_AS(cyclotomic_classes(f13, 5), std::invalid_argument);
}

TEST_CASE("cyclotomic classes partition the nonzero elements") {
    for (const auto& [p, m, N] : std::vector<std::tuple<i64, int, i64>>{
             {2, 6, 3}, {2, 6, 9}, {3, 2, 4}, {5, 2, 6}, {13, 1, 4}}) {
        const Field f = build_field(p, m);
        const auto t = cyclotomic_classes(f, N);
        std::vector<char> seen(static_cast<std::size_t>(f.r), 0);
        seen[0] = 1;
        for (const auto& cl : t.classes) {
            CHECK(static_cast<i64>(cl.size()) == (f.r - 1) / N);
            for (i64 x : cl) {
                CHECK(!seen[static_cast<std::size_t>(x)]);
                seen[static_cast<std::size_t>(x)] = 1;
            }
        }
        for (char c : seen) CHECK(c == 1);
    }
}

TEST_CASE("semiprimitive case detection") {
    // r = 64, N = 3: j = 1, gamma = 3, case B (p = 2 is even)
    const auto c64 = semiprimitive_case(2, 6, 3);
    REQUIRE(c64.has_value());
    CHECK(c64->j == 1);
    CHECK(c64->gamma == 3);
    CHECK(c64->case_tag == 'B');
    CHECK(c64->sqrt_r == 8);

    // r = 9, N = 4: j = 1, gamma = 1, all of gamma, p, (p+1)/N odd: case A
    const auto c9 = semiprimitive_case(3, 2, 4);
    REQUIRE(c9.has_value());
    CHECK(c9->case_tag == 'A');

    // N = r - 1 trivial subcase is not semiprimitive here
    CHECK_FALSE(semiprimitive_case(2, 6, 63).has_value());
    CHECK_FALSE(semiprimitive_case(2, 6, 7).has_value());
}

TEST_CASE("gaussian periods: closed form vs direct count") {
    struct Case { i64 p; int m; i64 N; };
    for (const auto& c : {Case{2, 6, 3}, Case{2, 4, 5}, Case{3, 2, 4}, Case{3, 4, 2},
                          Case{2, 6, 9}, Case{2, 8, 17}, Case{5, 2, 3}, Case{2, 12, 65}}) {
        CAPTURE(c.p, c.m, c.N);
        const auto sp = semiprimitive_case(c.p, c.m, c.N);
        REQUIRE(sp.has_value());
        const auto closed = gaussian_periods_uniform(*sp);
        const Field f = build_field(c.p, c.m);
        const auto direct = oracles::gaussian_periods_direct(f, c.N);
        REQUIRE(closed.size() == direct.size());
        for (std::size_t i = 0; i < closed.size(); ++i) CHECK(closed[i] == direct[i]);
    }
}

TEST_CASE("gaussian period fixtures") {
    // r = 64, N = 3 (case B): eta_0 = 8 + (-8-1)/3 = 5, others -3
    const auto e64 = gaussian_periods_uniform(*semiprimitive_case(2, 6, 3));
    CHECK(e64 == std::vector<Rational>{Rational{5}, Rational{-3}, Rational{-3}});

    // r = 16, N = 5 (case B): the direct count fixes eta_0 = 3, others -1
    const auto e16 = gaussian_periods_uniform(*semiprimitive_case(2, 4, 5));
    CHECK(e16[0] == Rational{3});
    for (std::size_t i = 1; i < 5; ++i) CHECK(e16[i] == Rational{-1});

    // r = 9, N = 4 (case A): eta_{N/2} = ((N-1) sqrt(r) - 1)/N = 2, others -1
    const auto e9 = gaussian_periods_uniform(*semiprimitive_case(3, 2, 4));
    CHECK(e9 == std::vector<Rational>{Rational{-1}, Rational{-1}, Rational{2}, Rational{-1}});
}

TEST_CASE("closed form equals the direct count on every semiprimitive case up to 2^14") {
    for (i64 p : {i64{2}, i64{3}, i64{5}, i64{7}, i64{11}}) {
        for (int e = 2;; ++e) {
            i64 r = 1;
            bool over = false;
            for (int i = 0; i < e; ++i) {
                r *= p;
                if (r > (i64{1} << 14)) { over = true; break; }
            }
            if (over) break;
            Field f;
            bool built = false;
            for (i64 N = 2; N < r - 1; ++N) {
                if ((r - 1) % N != 0) continue;
                const auto sp = semiprimitive_case(p, e, N);
                if (!sp) continue;
                if (!built) { f = build_field(p, e); built = true; }
                CAPTURE(p, e, N);
                const auto closed = gaussian_periods_uniform(*sp);
                const auto direct = oracles::gaussian_periods_direct(f, N);
                REQUIRE(closed == direct);
            }
        }
    }
}

TEST_CASE("gaussian periods sum to -1 on every semiprimitive case") {
    for (i64 p : {i64{2}, i64{3}, i64{5}, i64{7}}) {
        for (int e = 2; ; ++e) {
            i64 r = 1;
            bool overflow = false;
            for (int i = 0; i < e; ++i) {
                r *= p;
                if (r > 1024) { overflow = true; break; }
            }
            if (overflow) break;
            for (i64 N = 2; N < r - 1; ++N) {
                if ((r - 1) % N != 0) continue;
                const auto sp = semiprimitive_case(p, e, N);
                if (!sp) continue;
                const auto eta = gaussian_periods_uniform(*sp);
                Rational sum{0};
                for (const auto& x : eta) sum = sum + x;
                CHECK(sum == Rational{-1});
            }
        }
    }
}
