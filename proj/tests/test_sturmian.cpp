#include <catch2/catch_amalgamated.hpp>

#include "sturmlab/sturmian.hpp"

using namespace sturmlab;

namespace {

// Independent word recursion used as oracle: plain string concatenation,
// no sharing with the library's packed representation.
std::string oracle_word(long a, long b, const std::vector<long>& s, std::size_t k) {
    std::string prev(1, static_cast<char>('0' + b));
    if (k == 0) return prev;
    std::string cur(s.at(0) - 1, static_cast<char>('0' + b));
    cur += static_cast<char>('0' + a);
    for (std::size_t i = 1; i < k; ++i) {
        std::string next;
        for (long r = 0; r < s.at(i); ++r) next += cur;
        next += prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::string to_string(const LetterWord& w) {
    std::string s;
    for (long v : w) s += static_cast<char>('0' + v);
    return s;
}

SturmianSpec fib() { return SturmianSpec::periodic(1, 2, {}, {1}); }

} // namespace

TEST_CASE("generate_word matches the recursion on small cases") {
    auto sp = fib();
    CHECK(to_string(generate_word(sp, 0)) == "2");
    CHECK(to_string(generate_word(sp, 3)) == "121");
    CHECK(to_string(generate_word(sp, 4)) == "12112");
}

TEST_CASE("generate_word matches an independent unrolling for k <= 12") {
    std::vector<long> ones(13, 1);
    auto sp = fib();
    for (std::size_t k = 0; k <= 12; ++k)
        CHECK(to_string(generate_word(sp, k)) == oracle_word(1, 2, ones, k));

    std::vector<long> s2{2, 1, 3, 1, 2, 1, 1, 1, 2, 1, 1, 1, 1};
    auto sp2 = SturmianSpec::from_list(3, 4, s2);
    for (std::size_t k = 0; k <= 10; ++k)
        CHECK(to_string(generate_word(sp2, k)) == oracle_word(3, 4, s2, k));
}

TEST_CASE("word lengths follow |m_{k+1}| = s_{k+1} |m_k| + |m_{k-1}|") {
    auto sp = SturmianSpec::periodic(1, 2, {2, 1}, {3, 1, 2});
    std::vector<std::size_t> len;
    for (std::size_t k = 0; k <= 10; ++k) len.push_back(generate_word(sp, k).size());
    for (std::size_t k = 1; k + 1 <= 10; ++k)
        CHECK(len[k + 1] == static_cast<std::size_t>(sp.s(k + 1)) * len[k] + len[k - 1]);
}

TEST_CASE("word_limit_prefix agrees with m_k prefixes and is monotone") {
    auto sp = fib();
    CHECK(to_string(word_limit_prefix(sp, 8)) == "12112121");
    CHECK(to_string(word_limit_prefix(sp, 1)) == "1");

    auto sp2 = SturmianSpec::periodic(1, 2, {2}, {1});
    CHECK(to_string(word_limit_prefix(sp2, 3)) == "212");

    for (std::size_t l = 1; l < 30; ++l) {
        auto shorter = word_limit_prefix(sp, l);
        auto longer = word_limit_prefix(sp, l + 1);
        CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
    }
    // prefix of every m_k that is long enough
    for (std::size_t k = 5; k <= 9; ++k) {
        auto w = generate_word(sp, k);
        auto pre = word_limit_prefix(sp, 5);
        CHECK(std::equal(pre.begin(), pre.end(), w.begin()));
    }
}

TEST_CASE("word_limit_prefix reports exhaustion") {
    auto sp = SturmianSpec::from_list(1, 2, {1, 1});
    CHECK_THROWS_AS(word_limit_prefix(sp, 50), sequence_exhausted);
    CHECK_THROWS_AS(generate_word(sp, 5), sequence_exhausted);
}

TEST_CASE("eta values") {
    auto sp = fib();
    CHECK(eta(sp, 1) == mpq_class(2));
    CHECK(eta(sp, 2) == mpq_class(3, 2));
    auto sp2 = SturmianSpec::periodic(1, 2, {}, {2});
    CHECK(eta(sp2, 1) == mpq_class(5, 2));
    // eta_k > 1 always
    auto sp3 = SturmianSpec::periodic(2, 5, {4, 1, 1}, {2, 3});
    for (std::size_t k = 1; k <= 12; ++k) CHECK(eta(sp3, k) > 1);
}

TEST_CASE("sigma for s == 1 encloses (sqrt(5)-1)/2") {
    auto res = sigma(fib(), 20);
    REQUIRE(res.limit.has_value());
    Interval golden = sqrt_enclosure(mpz_class(5), 80);
    Interval expect((golden.lo() - 1) / 2, (golden.hi() - 1) / 2);
    CHECK(res.limit->lo() <= expect.hi());
    CHECK(res.limit->hi() >= expect.lo());
    CHECK(res.limit->width() < mpq_class(1, 1000000000));
    CHECK(res.converged);
}

TEST_CASE("sigma for s == 2 encloses sqrt(2)-1") {
    auto sp = SturmianSpec::periodic(1, 2, {}, {2});
    auto res = sigma(sp, 30);
    REQUIRE(res.limit.has_value());
    Interval r2 = sqrt_enclosure(mpz_class(2), 80);
    CHECK(res.limit->lo() <= r2.hi() - 1);
    CHECK(res.limit->hi() >= r2.lo() - 1);
}

TEST_CASE("sigma single term") {
    auto sp = SturmianSpec::from_list(1, 2, {1});
    auto res = sigma(sp, 1);
    CHECK(res.window_min.lo() == 1);
    CHECK(res.window_min.hi() == 1);
    CHECK_FALSE(res.converged);
}

TEST_CASE("sigma window minima are nested for periodic specs") {
    auto sp = SturmianSpec::periodic(2, 3, {1, 4}, {2, 1});
    auto r1 = sigma(sp, 12);
    auto r2 = sigma(sp, 14); // depth + period
    REQUIRE(r1.limit.has_value());
    REQUIRE(r2.limit.has_value());
    CHECK(r1.limit->lo() == r2.limit->lo());
    CHECK(r1.limit->hi() == r2.limit->hi());
    // window proxies stay near the limit
    CHECK(r1.window_min.lo() >= r1.limit->lo() - r1.limit->width());
}

TEST_CASE("sigma enclosure lies in [0, golden ratio inverse]") {
    Interval golden_inv = sqrt_enclosure(mpz_class(5), 80);
    mpq_class upper = (golden_inv.hi() - 1) / 2 + mpq_class(1, 1000000);
    std::vector<SturmianSpec> specs = {
        SturmianSpec::periodic(1, 2, {}, {1}),
        SturmianSpec::periodic(1, 2, {}, {2}),
        SturmianSpec::periodic(1, 3, {2}, {1, 5}),
        SturmianSpec::periodic(4, 7, {1, 1, 9}, {3, 1, 1, 2}),
    };
    for (const auto& sp : specs) {
        auto res = sigma(sp, 24);
        CHECK(res.value().lo() >= 0);
        CHECK(res.value().hi() <= upper);
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(SturmianSpec::from_list(2, 2, {1}), config_error);
    CHECK_THROWS_AS(SturmianSpec::from_list(0, 2, {1}), config_error);
    CHECK_THROWS_AS(SturmianSpec::from_list(1, 2, {1, 0}), config_error);
    CHECK_THROWS_AS(SturmianSpec::periodic(1, 2, {1}, {}), config_error);
}

TEST_CASE("periodic description agrees with its unrolled form") {
    auto sp = SturmianSpec::periodic(1, 2, {3, 1}, {2, 1, 1});
    std::vector<long> unrolled{3, 1};
    for (int i = 0; i < 10; ++i) { unrolled.push_back(2); unrolled.push_back(1); unrolled.push_back(1); }
    auto sp2 = SturmianSpec::from_list(1, 2, unrolled);
    for (std::size_t k = 1; k <= unrolled.size(); ++k) CHECK(sp.s(k) == sp2.s(k));
    auto w1 = generate_word(sp, 8), w2 = generate_word(sp2, 8);
    CHECK(w1 == w2);
}
