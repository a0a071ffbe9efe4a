#ifndef STURMLAB_INTPOLY_HPP
#define STURMLAB_INTPOLY_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "sturmlab/errors.hpp"
#include "sturmlab/interval.hpp"

namespace sturmlab {

// Products of two cubics are the largest polynomials the engine ever needs.
inline constexpr int kDegreeCap = 6;

/// Dense integer polynomial, constant term first, trailing zeros trimmed.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
        trim();
        if (degree() > kDegreeCap)
            throw config_error("IntPolynomial: degree " + std::to_string(degree()) +
                               " exceeds cap " + std::to_string(kDegreeCap));
    }
    static IntPolynomial from_longs(std::initializer_list<long> coeffs) {
        std::vector<mpz_class> c;
        for (long v : coeffs) c.emplace_back(v);
        return IntPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& operator[](std::size_t i) const { return c_[i]; }
    const mpz_class& leading() const {
        if (is_zero()) throw config_error("IntPolynomial: zero polynomial has no leading coefficient");
        return c_.back();
    }

    /// Naive height: max |a_j|.
    mpz_class height() const {
        mpz_class h = 0;
        for (const auto& a : c_) {
            mpz_class v = abs(a);
            if (v > h) h = v;
        }
        return h;
    }

    mpz_class content() const {
        mpz_class g = 0;
        for (const auto& a : c_) g = gcd(g, a);
        return g;
    }

    /// Divide out the content and make the leading coefficient positive.
    IntPolynomial primitive() const {
        if (is_zero()) return *this;
        mpz_class g = content();
        if (leading() < 0) g = -g;
        std::vector<mpz_class> r(c_);
        for (auto& a : r) a /= g;
        return IntPolynomial(std::move(r));
    }

    mpq_class eval(const mpq_class& x) const {
        mpq_class v = 0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
        return v;
    }

    Interval eval(const Interval& x) const {
        Interval v((mpq_class(0)));
        for (std::size_t i = c_.size(); i-- > 0;) v = v * x + mpq_class(c_[i]);
        return v;
    }

    double eval_d(double x) const {
        double v = 0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i].get_d();
        return v;
    }

    IntPolynomial derivative() const {
        if (degree() < 1) return IntPolynomial();
        std::vector<mpz_class> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mpz_class(i) * c_[i];
        return IntPolynomial(std::move(r));
    }

    /// Multiplication by T^j; keeps the height unchanged.
    IntPolynomial shift(unsigned j) const {
        if (is_zero()) return *this;
        std::vector<mpz_class> r(c_.size() + j, mpz_class(0));
        std::copy(c_.begin(), c_.end(), r.begin() + j);
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator+(const IntPolynomial& p, const IntPolynomial& q) {
        std::vector<mpz_class> r(std::max(p.c_.size(), q.c_.size()), mpz_class(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] += p.c_[i];
        for (std::size_t i = 0; i < q.c_.size(); ++i) r[i] += q.c_[i];
        return IntPolynomial(std::move(r));
    }
    friend IntPolynomial operator-(const IntPolynomial& p, const IntPolynomial& q) {
        std::vector<mpz_class> r(std::max(p.c_.size(), q.c_.size()), mpz_class(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] += p.c_[i];
        for (std::size_t i = 0; i < q.c_.size(); ++i) r[i] -= q.c_[i];
        return IntPolynomial(std::move(r));
    }
    friend IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q) {
        if (p.is_zero() || q.is_zero()) return IntPolynomial();
        std::vector<mpz_class> r(p.c_.size() + q.c_.size() - 1, mpz_class(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i)
            for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
        return IntPolynomial(std::move(r));
    }
    friend bool operator==(const IntPolynomial& p, const IntPolynomial& q) { return p.c_ == q.c_; }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += (c_[i] > 0 ? " + " : " - ");
            else if (c_[i] < 0) s += "-";
            mpz_class v = abs(c_[i]);
            if (v != 1 || i == 0) s += v.get_str();
            if (i >= 1) s += (i == 1 ? "T" : "T^" + std::to_string(i));
        }
        return s;
    }

    nlohmann::json to_json() const {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& v : c_) a.push_back(v.get_str());
        return a;
    }
    static IntPolynomial from_json(const nlohmann::json& j) {
        std::vector<mpz_class> c;
        for (const auto& v : j) c.emplace_back(v.get<std::string>());
        return IntPolynomial(std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<mpz_class> c_;
};

struct ProductResult {
    IntPolynomial product;
    mpq_class gelfond_ratio; // H(PQ) / (H(P) H(Q))
};

/// Exact product together with its Gelfond ratio.
inline ProductResult multiply(const IntPolynomial& p, const IntPolynomial& q) {
    if (p.is_zero() || q.is_zero())
        throw config_error("multiply: factors must be nonzero");
    IntPolynomial r = p * q;
    mpq_class ratio(r.height(), p.height() * q.height());
    ratio.canonicalize();
    return {std::move(r), ratio};
}

namespace detail {

inline std::vector<mpz_class> positive_divisors(const mpz_class& n) {
    mpz_class m = abs(n);
    std::vector<mpz_class> divs;
    for (mpz_class d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            divs.push_back(d);
            if (d * d != m) divs.push_back(m / d);
        }
    }
    return divs;
}

inline bool has_rational_root(const IntPolynomial& p) {
    // candidates r/s with r | a_0 and s | a_n
    if (p[0] == 0) return true;
    for (const mpz_class& r : positive_divisors(p[0])) {
        for (const mpz_class& s : positive_divisors(p.leading())) {
            if (gcd(r, s) != 1) continue;
            mpq_class cand(r, s);
            cand.canonicalize();
            if (p.eval(cand) == 0 || p.eval(-cand) == 0) return true;
        }
    }
    return false;
}

} // namespace detail

/// Irreducibility over Q for degree 1..3: rational-root test, plus a
/// discriminant square test for quadratics. Higher degrees are out of scope.
inline bool is_irreducible(const IntPolynomial& p) {
    int d = p.degree();
    if (d < 1 || d > 3)
        throw config_error("is_irreducible: supported degrees are 1..3, got " + std::to_string(d));
    if (d == 1) return true;
    if (d == 2) {
        mpz_class disc = p[1] * p[1] - 4 * p[2] * p[0];
        if (disc < 0) return true; // no real roots, also no rational ones
        return mpz_perfect_square_p(disc.get_mpz_t()) == 0;
    }
    return !detail::has_rational_root(p);
}

// ---------------------------------------------------------------------------
// Real root isolation via Sturm chains (exact rational arithmetic).

namespace detail {

using QPoly = std::vector<mpq_class>; // constant first

inline void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly to_qpoly(const IntPolynomial& p) {
    QPoly r;
    for (const auto& a : p.coeffs()) r.emplace_back(a);
    return r;
}

inline mpq_class qeval(const QPoly& p, const mpq_class& x) {
    mpq_class v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

inline QPoly qderiv(const QPoly& p) {
    QPoly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(mpq_class(static_cast<long>(i)) * p[i]);
    return r;
}

inline QPoly qrem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        qtrim(a);
        if (a.size() >= b.size() && !a.empty() && a.back() == 0) qtrim(a);
    }
    return a;
}

inline QPoly qdiv_exact(QPoly a, const QPoly& b) {
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        q[a.size() - b.size()] = f;
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        qtrim(a);
    }
    qtrim(q);
    return q;
}

inline QPoly qgcd(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    while (!b.empty()) {
        QPoly r = qrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) { // monic normalize
        mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain{p, qderiv(p)};
    qtrim(chain[1]);
    while (chain.back().size() > 0) {
        QPoly r = qrem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_variations(const std::vector<QPoly>& chain, const mpq_class& x) {
    int vars = 0, prev = 0;
    for (const auto& p : chain) {
        mpq_class v = qeval(p, x);
        int s = sgn(v);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

} // namespace detail

/// A real algebraic number: a defining squarefree primitive polynomial plus
/// an isolating interval containing exactly one (simple) real root. When the
/// polynomial is irreducible this is the minimal polynomial and height() is
/// the height of the algebraic number.
class AlgebraicNumber {
public:
    AlgebraicNumber(IntPolynomial poly, Interval isolating)
        : poly_(std::move(poly)), iv_(std::move(isolating)) {
        int sl = sgn(poly_.eval(iv_.lo())), sh = sgn(poly_.eval(iv_.hi()));
        if (sl == 0 || sh == 0 || sl == sh)
            throw config_error("AlgebraicNumber: interval endpoints must straddle the root");
        sign_lo_ = sl;
    }

    const IntPolynomial& poly() const { return poly_; }
    const Interval& interval() const { return iv_; }
    int degree() const { return poly_.degree(); }
    mpz_class height() const { return poly_.height(); }

    /// Bisect until the isolating interval is narrower than tol.
    void refine(const mpq_class& tol) {
        mpq_class lo = iv_.lo(), hi = iv_.hi();
        while (hi - lo > tol) {
            mpq_class mid = (lo + hi) / 2;
            int sm = sgn(poly_.eval(mid));
            if (sm == 0) { // landed exactly on the root
                lo = mid;
                hi = mid;
                break;
            }
            if (sm == sign_lo_) lo = mid; else hi = mid;
        }
        iv_ = Interval(lo, hi);
    }

    Interval refined(const mpq_class& tol) const {
        AlgebraicNumber tmp(*this);
        tmp.refine(tol);
        return tmp.interval();
    }

private:
    IntPolynomial poly_;
    Interval iv_;
    int sign_lo_;
};

/// Isolate every real root of P. The squarefree part is taken first; the
/// returned numbers carry the squarefree primitive polynomial.
inline std::vector<AlgebraicNumber> isolate_real_roots(const IntPolynomial& p_in) {
    if (p_in.is_zero()) throw config_error("isolate_real_roots: zero polynomial");
    if (p_in.degree() == 0) return {};

    using namespace detail;
    QPoly p = to_qpoly(p_in);
    QPoly g = qgcd(p, qderiv(p));
    if (g.size() > 1) p = qdiv_exact(p, g);

    // rebuild an integer squarefree primitive polynomial
    mpz_class denom_lcm = 1;
    for (const auto& c : p) denom_lcm = lcm(denom_lcm, mpz_class(c.get_den()));
    std::vector<mpz_class> ic;
    for (const auto& c : p) {
        mpq_class v = c * mpq_class(denom_lcm);
        v.canonicalize();
        ic.emplace_back(v.get_num());
    }
    IntPolynomial sf = IntPolynomial(std::move(ic)).primitive();
    p = to_qpoly(sf);

    auto chain = sturm_chain(p);

    // Cauchy root bound
    mpq_class bound = 1;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        mpq_class v = abs(p[i] / p.back());
        if (v > bound) bound = v;
    }
    bound += 1;

    std::vector<Interval> isolating;
    struct Seg { mpq_class lo, hi; int vl, vh; };
    std::vector<Seg> stack;
    {
        mpq_class lo = -bound, hi = bound;
        // nudge endpoints off roots of the chain head
        while (qeval(p, lo) == 0) lo -= 1;
        while (qeval(p, hi) == 0) hi += 1;
        stack.push_back({lo, hi, sign_variations(chain, lo), sign_variations(chain, hi)});
    }
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        int count = s.vl - s.vh;
        if (count <= 0) continue;
        if (count == 1) {
            isolating.emplace_back(s.lo, s.hi);
            continue;
        }
        mpq_class mid = (s.lo + s.hi) / 2;
        while (qeval(p, mid) == 0) mid += (s.hi - s.lo) / 64; // avoid exact roots as endpoints
        int vm = sign_variations(chain, mid);
        stack.push_back({s.lo, mid, s.vl, vm});
        stack.push_back({mid, s.hi, vm, s.vh});
    }
    std::sort(isolating.begin(), isolating.end(),
              [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });

    std::vector<AlgebraicNumber> roots;
    for (auto& iv : isolating) roots.emplace_back(sf, iv);
    return roots;
}

} // namespace sturmlab

#endif
