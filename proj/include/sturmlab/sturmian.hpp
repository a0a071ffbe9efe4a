#ifndef STURMLAB_STURMIAN_HPP
#define STURMLAB_STURMIAN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "sturmlab/errors.hpp"
#include "sturmlab/interval.hpp"

namespace sturmlab {

/// Directive data for a Sturmian word: the sequence (s_k) plus the two
/// letters a, b. The letter values double as partial quotients later on.
///
/// The sequence is stored either as an explicit finite list, as an
/// eventually-periodic description (preperiod + period), or as a bounded
/// generator. Periodicity is always declared by the caller, never inferred.
class SturmianSpec {
public:
    using Generator = std::function<long(std::size_t)>; // 1-based index -> s_k

    static SturmianSpec from_list(long a, long b, std::vector<long> s) {
        SturmianSpec sp(a, b);
        sp.list_ = std::move(s);
        sp.validate();
        return sp;
    }
    static SturmianSpec periodic(long a, long b, std::vector<long> preperiod,
                                 std::vector<long> period) {
        SturmianSpec sp(a, b);
        sp.preperiod_ = std::move(preperiod);
        sp.period_ = std::move(period);
        if (sp.period_.empty()) throw config_error("SturmianSpec: empty period");
        sp.validate();
        return sp;
    }
    static SturmianSpec from_generator(long a, long b, Generator g) {
        SturmianSpec sp(a, b);
        sp.gen_ = std::move(g);
        sp.validate_letters();
        return sp;
    }

    long letter_a() const { return a_; }
    long letter_b() const { return b_; }
    bool is_periodic() const { return !period_.empty(); }
    const std::vector<long>& preperiod() const { return preperiod_; }
    const std::vector<long>& period() const { return period_; }

    bool has(std::size_t k) const { // k is 1-based
        if (k == 0) return false;
        if (!period_.empty() || gen_) return true;
        return k <= list_.size();
    }

    long s(std::size_t k) const { // k is 1-based
        if (k == 0) throw config_error("SturmianSpec::s: index must be >= 1");
        if (!period_.empty()) {
            if (k <= preperiod_.size()) return preperiod_[k - 1];
            return period_[(k - 1 - preperiod_.size()) % period_.size()];
        }
        if (gen_) {
            long v = gen_(k);
            if (v < 1) throw config_error("SturmianSpec: generator produced s_k < 1");
            return v;
        }
        if (k > list_.size())
            throw sequence_exhausted("SturmianSpec: directive sequence exhausted at k=" +
                                     std::to_string(k));
        return list_[k - 1];
    }

    nlohmann::json to_json() const {
        if (gen_) throw config_error("SturmianSpec: generator specs do not serialize");
        nlohmann::json s;
        if (is_periodic())
            s = {{"preperiod", preperiod_}, {"period", period_}};
        else
            s = {{"list", list_}};
        return {{"a", a_}, {"b", b_}, {"s", s}};
    }

    static SturmianSpec from_json(const nlohmann::json& j) {
        long a = j.at("a").get<long>();
        long b = j.at("b").get<long>();
        const auto& s = j.at("s");
        if (s.contains("list"))
            return from_list(a, b, s.at("list").get<std::vector<long>>());
        return periodic(a, b,
                        s.value("preperiod", std::vector<long>{}),
                        s.at("period").get<std::vector<long>>());
    }

private:
    SturmianSpec(long a, long b) : a_(a), b_(b) {}

    void validate_letters() const {
        if (a_ < 1 || b_ < 1) throw config_error("SturmianSpec: letters must be >= 1");
        if (a_ == b_) throw config_error("SturmianSpec: letters a and b must differ");
    }
    void validate() const {
        validate_letters();
        for (long v : list_)
            if (v < 1) throw config_error("SturmianSpec: every s_k must be >= 1");
        for (long v : preperiod_)
            if (v < 1) throw config_error("SturmianSpec: every s_k must be >= 1");
        for (long v : period_)
            if (v < 1) throw config_error("SturmianSpec: every s_k must be >= 1");
    }

    long a_, b_;
    std::vector<long> list_;
    std::vector<long> preperiod_, period_;
    Generator gen_;
};

/// Finite word over the two letters, stored as the letter values themselves.
using LetterWord = std::vector<long>;

/// m_k per the recursion m_0 = b, m_1 = b^{s_1 - 1} a, m_{k+1} = m_k^{s_{k+1}} m_{k-1}.
inline LetterWord generate_word(const SturmianSpec& spec, std::size_t k) {
    if (k >= 1 && !spec.has(k))
        throw sequence_exhausted("generate_word: needs s_1..s_" + std::to_string(k));
    LetterWord prev = {spec.letter_b()};            // m_0
    if (k == 0) return prev;
    LetterWord cur(spec.s(1) - 1, spec.letter_b()); // m_1
    cur.push_back(spec.letter_a());
    for (std::size_t i = 1; i < k; ++i) {
        LetterWord next;
        long rep = spec.s(i + 1);
        next.reserve(static_cast<std::size_t>(rep) * cur.size() + prev.size());
        for (long r = 0; r < rep; ++r) next.insert(next.end(), cur.begin(), cur.end());
        next.insert(next.end(), prev.begin(), prev.end());
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// First `len` letters of the limit word m_phi. Since m_{k+1} starts with
/// m_k, it suffices to grow m_k until it is long enough.
inline LetterWord word_limit_prefix(const SturmianSpec& spec, std::size_t len) {
    if (len == 0) return {};
    LetterWord prev = {spec.letter_b()};
    if (!spec.has(1)) throw sequence_exhausted("word_limit_prefix: no s-terms");
    LetterWord cur(spec.s(1) - 1, spec.letter_b());
    cur.push_back(spec.letter_a());
    std::size_t k = 1;
    while (cur.size() < len) {
        if (!spec.has(k + 1))
            throw sequence_exhausted("word_limit_prefix: sequence exhausted before " +
                                     std::to_string(len) + " letters");
        long rep = spec.s(k + 1);
        LetterWord next;
        next.reserve(static_cast<std::size_t>(rep) * cur.size() + prev.size());
        for (long r = 0; r < rep; ++r) next.insert(next.end(), cur.begin(), cur.end());
        next.insert(next.end(), prev.begin(), prev.end());
        prev = std::move(cur);
        cur = std::move(next);
        ++k;
    }
    cur.resize(len);
    return cur;
}

/// Exact value of the finite continued fraction [c_0; c_1, ..., c_m].
inline mpq_class finite_cf_value(const std::vector<long>& terms) {
    if (terms.empty()) throw config_error("finite_cf_value: empty term list");
    mpq_class v(terms.back());
    for (std::size_t i = terms.size() - 1; i-- > 0;)
        v = mpq_class(terms[i]) + 1 / v;
    return v;
}

/// eta_k = [s_{k+1}; s_k, ..., s_1], an exact rational, always > 1.
inline mpq_class eta(const SturmianSpec& spec, std::size_t k) {
    if (k < 1) throw config_error("eta: k must be >= 1");
    if (!spec.has(k + 1)) throw sequence_exhausted("eta: needs s_1..s_" + std::to_string(k + 1));
    std::vector<long> terms;
    terms.reserve(k + 1);
    for (std::size_t i = k + 1; i >= 1; --i) terms.push_back(spec.s(i));
    return finite_cf_value(terms);
}

struct SigmaResult {
    Interval window_min;            // exact min of [0;s_k,...,s_1] over the window
    std::optional<Interval> limit;  // exact liminf for eventually-periodic specs
    bool converged = false;         // limit certified to the requested tolerance
    Interval value() const { return limit ? *limit : window_min; }
};

namespace detail {

/// Enclosure of the purely periodic value [0; d_1, ..., d_m, d_1, ...] as the
/// root in (0,1) of q_{m-1} x^2 + (q_m - p_{m-1}) x - p_m, refined by bisection.
inline Interval purely_periodic_value(const std::vector<long>& period, const mpq_class& tol) {
    mpz_class p_prev = 1, q_prev = 0, p = 0, q = 1; // convergents of [0; ...]
    for (long d : period) {
        mpz_class pn = d * p + p_prev, qn = d * q + q_prev;
        p_prev = p; q_prev = q; p = pn; q = qn;
    }
    // coefficients A x^2 + B x + C
    mpz_class A = q_prev, B = q - p_prev, C = -p;
    auto f = [&](const mpq_class& x) -> mpq_class { return A * x * x + B * x + C; };
    mpq_class lo = 0, hi = 1;
    if (f(lo) >= 0 || f(hi) <= 0)
        throw error("purely_periodic_value: root bracket failed");
    while (hi - lo > tol) {
        mpq_class mid = (lo + hi) / 2;
        if (f(mid) < 0) lo = mid; else hi = mid;
    }
    return Interval(lo, hi);
}

} // namespace detail

/// Finite-depth proxy for sigma_phi = liminf_k [0; s_k, ..., s_1].
///
/// Reports the exact minimum over the window k in [ceil(depth/2), depth]
/// (early k are transients). For eventually-periodic specs the true liminf
/// is also computed exactly, as the minimum over all rotations of the
/// reversed period of the corresponding purely periodic value.
inline SigmaResult sigma(const SturmianSpec& spec, std::size_t depth,
                         const mpq_class& tol = mpq_class(1, 1000000000000L)) {
    if (depth < 1) throw config_error("sigma: depth must be >= 1");
    if (!spec.has(depth)) throw sequence_exhausted("sigma: needs s_1..s_" + std::to_string(depth));
    std::size_t k0 = (depth + 1) / 2;
    std::optional<mpq_class> best;
    for (std::size_t k = k0; k <= depth; ++k) {
        std::vector<long> terms;
        terms.reserve(k + 1);
        terms.push_back(0);
        for (std::size_t i = k; i >= 1; --i) terms.push_back(spec.s(i));
        mpq_class v = finite_cf_value(terms);
        if (!best || v < *best) best = v;
    }
    SigmaResult res;
    res.window_min = Interval(*best);
    if (spec.is_periodic()) {
        // liminf over rotations of the reversed period; enclosure of a min of
        // finitely many enclosed values is [min lo, min hi].
        std::vector<long> rev(spec.period().rbegin(), spec.period().rend());
        std::optional<mpq_class> lo, hi;
        for (std::size_t r = 0; r < rev.size(); ++r) {
            std::vector<long> rot(rev.begin() + r, rev.end());
            rot.insert(rot.end(), rev.begin(), rev.begin() + r);
            Interval v = detail::purely_periodic_value(rot, tol);
            if (!lo || v.lo() < *lo) lo = v.lo();
            if (!hi || v.hi() < *hi) hi = v.hi();
        }
        res.limit = Interval(*lo, *hi);
        res.converged = true;
    }
    return res;
}

} // namespace sturmlab

#endif
