#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sturmlab/cf.hpp"
#include "sturmlab/intpoly.hpp"

using namespace sturmlab;

TEST_CASE("height, degree and normalization") {
    auto p = IntPolynomial::from_longs({-3, 2, 3});
    CHECK(p.degree() == 2);
    CHECK(p.height() == 3);

    auto q = IntPolynomial::from_longs({2, -4, 6});
    auto prim = q.primitive();
    CHECK(prim == IntPolynomial::from_longs({1, -2, 3}));

    auto neg = IntPolynomial::from_longs({2, 0, -2});
    CHECK(neg.primitive() == IntPolynomial::from_longs({-1, 0, 1}));

    // trailing zeros trimmed
    CHECK(IntPolynomial(std::vector<mpz_class>{mpz_class(1), mpz_class(0)}).degree() == 0);
    CHECK(IntPolynomial(std::vector<mpz_class>{}).is_zero());
}

TEST_CASE("degree cap is enforced loudly") {
    std::vector<mpz_class> c(8, mpz_class(1)); // degree 7
    CHECK_THROWS_AS(IntPolynomial(std::move(c)), config_error);
}

TEST_CASE("multiply and the Gelfond ratio") {
    auto a = multiply(IntPolynomial::from_longs({-1, 1}), IntPolynomial::from_longs({1, 1}));
    CHECK(a.product == IntPolynomial::from_longs({-1, 0, 1}));
    CHECK(a.gelfond_ratio == 1);

    auto b = multiply(IntPolynomial::from_longs({1, 1}), IntPolynomial::from_longs({1, 1}));
    CHECK(b.product == IntPolynomial::from_longs({1, 2, 1}));
    CHECK(b.gelfond_ratio == 2);

    auto c = multiply(IntPolynomial::from_longs({-1, 2}), IntPolynomial::from_longs({-3, 2, 3}));
    // (2T-1)(3T^2+2T-3) = 6T^3 + T^2 - 8T + 3
    CHECK(c.product == IntPolynomial::from_longs({3, -8, 1, 6}));
    CHECK(c.gelfond_ratio == mpq_class(4, 3));
}

TEST_CASE("gelfond ratio stays inside the 2^d corridor on random products") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> coeff(-50, 50);
    std::uniform_int_distribution<int> deg(1, 3);
    mpq_class lo_seen(1), hi_seen(1);
    for (int trial = 0; trial < 500; ++trial) {
        auto rand_poly = [&](int d) {
            std::vector<mpz_class> c;
            for (int i = 0; i <= d; ++i) c.emplace_back(coeff(rng));
            while (c.back() == 0) c.back() = coeff(rng);
            return IntPolynomial(std::move(c));
        };
        IntPolynomial p = rand_poly(deg(rng)), q = rand_poly(deg(rng));
        if (p.is_zero() || q.is_zero()) continue;
        auto r = multiply(p, q);
        int d = r.product.degree();
        REQUIRE(d <= 6);
        mpq_class lo(1, mpz_class(1) << d), hi(mpz_class(1) << d);
        CHECK(r.gelfond_ratio >= lo);
        CHECK(r.gelfond_ratio <= hi);
        if (r.gelfond_ratio < lo_seen) lo_seen = r.gelfond_ratio;
        if (r.gelfond_ratio > hi_seen) hi_seen = r.gelfond_ratio;
    }
    // the corridor is conservative; empirical extremes are strictly inside
    CHECK(lo_seen > mpq_class(1, 64));
    CHECK(hi_seen < 64);
}

TEST_CASE("shift preserves height") {
    auto p = IntPolynomial::from_longs({-3, 2, 3});
    for (unsigned j = 1; j <= 4; ++j) {
        CHECK(p.shift(j).height() == p.height());
        CHECK(p.shift(j).degree() == p.degree() + static_cast<int>(j));
    }
}

TEST_CASE("is_irreducible on degree 1..3") {
    CHECK(is_irreducible(IntPolynomial::from_longs({-1, 1, 1})));   // T^2+T-1
    CHECK_FALSE(is_irreducible(IntPolynomial::from_longs({0, -1, 0, 1}))); // T^3 - T
    CHECK(is_irreducible(IntPolynomial::from_longs({-2, 0, 0, 1}))); // T^3 - 2
    CHECK(is_irreducible(IntPolynomial::from_longs({5, 3})));       // linear
    CHECK_FALSE(is_irreducible(IntPolynomial::from_longs({-1, 0, 1}))); // T^2-1
    CHECK_FALSE(is_irreducible(IntPolynomial::from_longs({-6, 4, 1, 1}))); // (T-1)(T^2+2T+6)
    CHECK(is_irreducible(IntPolynomial::from_longs({1, 0, 1})));    // T^2+1
    CHECK_THROWS_AS(is_irreducible(IntPolynomial::from_longs({1, 0, 0, 0, 1})), config_error);
}

TEST_CASE("isolate_real_roots basic cases") {
    auto r1 = isolate_real_roots(IntPolynomial::from_longs({-2, 0, 1})); // T^2-2
    REQUIRE(r1.size() == 2);
    Interval neg = r1[0].refined(mpq_class(1, 100000));
    Interval pos = r1[1].refined(mpq_class(1, 100000));
    CHECK(abs(neg.mid() + mpq_class(14142136, 10000000)) < mpq_class(1, 10000));
    CHECK(abs(pos.mid() - mpq_class(14142136, 10000000)) < mpq_class(1, 10000));

    CHECK(isolate_real_roots(IntPolynomial::from_longs({1, 0, 1})).empty()); // T^2+1

    auto r3 = isolate_real_roots(IntPolynomial::from_longs({-3, 2, 3})); // 3T^2+2T-3
    REQUIRE(r3.size() == 2);
    CHECK(abs(r3[0].refined(mpq_class(1, 10000)).mid() + mpq_class(13874259, 10000000)) <
          mpq_class(1, 10000));
    CHECK(abs(r3[1].refined(mpq_class(1, 10000)).mid() - mpq_class(7207592, 10000000)) <
          mpq_class(1, 10000));
}

TEST_CASE("isolate_real_roots handles repeated roots via squarefree part") {
    // (T-1)^2 (T+2)
    auto p = multiply(multiply(IntPolynomial::from_longs({-1, 1}),
                               IntPolynomial::from_longs({-1, 1})).product,
                      IntPolynomial::from_longs({2, 1})).product;
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].refined(mpq_class(1, 100)).contains(mpq_class(-2)));
    CHECK(roots[1].refined(mpq_class(1, 100)).contains(mpq_class(1)));
}

TEST_CASE("root count matches a sign-change grid oracle") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> coeff(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<mpz_class> c;
        for (int i = 0; i <= 3; ++i) c.emplace_back(coeff(rng));
        IntPolynomial p(std::move(c));
        if (p.degree() < 1) continue;
        auto roots = isolate_real_roots(p);
        // oracle: count sign changes on a fine grid over [-20, 20];
        // catches every simple root of these small cubics
        int grid_changes = 0;
        int prev = 0;
        for (long i = -4000; i <= 4000; ++i) {
            mpq_class x(i, 200);
            int s = sgn(p.eval(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++grid_changes;
            prev = s;
        }
        CHECK(static_cast<int>(roots.size()) >= grid_changes);
        // isolating intervals are disjoint and each straddles a sign change
        for (std::size_t i = 1; i < roots.size(); ++i)
            CHECK(roots[i - 1].interval().hi() <= roots[i].interval().lo());
    }
}

TEST_CASE("eval_cert on interval inputs") {
    auto p = IntPolynomial::from_longs({-1, 1, 1}); // T^2+T-1
    auto golden = sqrt_enclosure(mpz_class(5), 100);
    Interval root((golden.lo() - 1) / 2, (golden.hi() - 1) / 2);
    Interval v = p.eval(root);
    CHECK(v.contains_zero());
    CHECK(v.width() < mpq_class(1, mpz_class(mpz_class(1) << 90)));

    Interval x(mpq_class(70, 100), mpq_class(71, 100));
    Interval id = IntPolynomial::from_longs({0, 1}).eval(x);
    CHECK(id.lo() == x.lo());
    CHECK(id.hi() == x.hi());
}

TEST_CASE("both product evaluation routes enclose the pointwise values") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coeff(-5, 5);
    Interval x(mpq_class(1, 3), mpq_class(2, 5) + mpq_class(1, 7));
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<mpz_class> a, b;
        for (int i = 0; i <= 2; ++i) a.emplace_back(coeff(rng));
        for (int i = 0; i <= 2; ++i) b.emplace_back(coeff(rng));
        IntPolynomial p(std::move(a)), q(std::move(b));
        if (p.is_zero() || q.is_zero()) continue;
        Interval lhs = (p * q).eval(x);
        Interval rhs = p.eval(x) * q.eval(x);
        for (int i = 0; i <= 4; ++i) {
            mpq_class t = x.lo() + (x.hi() - x.lo()) * i / 4;
            mpq_class v = p.eval(t) * q.eval(t);
            CHECK(lhs.contains(v));
            CHECK(rhs.contains(v));
        }
    }
}
