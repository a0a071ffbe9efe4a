#ifndef STURMLAB_CF_HPP
#define STURMLAB_CF_HPP

#include <cstdlib>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "sturmlab/errors.hpp"
#include "sturmlab/interval.hpp"
#include "sturmlab/intpoly.hpp"
#include "sturmlab/sturmian.hpp"

namespace sturmlab {

struct Convergent {
    mpz_class p;
    mpz_class q;
    std::size_t index = 0;
};

/// Convergents of a finite continued fraction by the standard recurrence.
/// The determinant identity p_k q_{k-1} - p_{k-1} q_k = ±1 holds exactly.
inline std::vector<Convergent> convergents(const std::vector<long>& terms) {
    if (terms.empty()) throw config_error("convergents: empty term list");
    if (terms[0] < 0) throw config_error("convergents: leading term must be >= 0");
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (terms[i] < 1) throw config_error("convergents: partial quotients must be >= 1");
    std::vector<Convergent> out;
    mpz_class p_prev = 1, q_prev = 0, p = terms[0], q = 1;
    out.push_back({p, q, 0});
    for (std::size_t i = 1; i < terms.size(); ++i) {
        mpz_class pn = terms[i] * p + p_prev, qn = terms[i] * q + q_prev;
        p_prev = p; q_prev = q; p = pn; q = qn;
        out.push_back({p, q, i});
    }
    return out;
}

inline std::size_t default_precision_cap() {
    if (const char* env = std::getenv("STURMLAB_PRECISION_CAP")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 32768;
}

/// Refinable handle to zeta_phi = [0; m_phi]. Caches the convergents of the
/// continued fraction whose partial quotients are the letters of m_phi.
///
/// Single-writer contract: refinement mutates the cache; enclosure() returns
/// value snapshots that are safe to share.
class ZetaHandle {
public:
    explicit ZetaHandle(SturmianSpec spec, std::size_t initial_terms = 32)
        : spec_(std::move(spec)) {
        cap_ = default_precision_cap();
        extend_to(initial_terms);
    }

    /// A handle around an explicitly given finite continued fraction
    /// (a rational number); only useful for degenerate-input tests.
    static ZetaHandle rational(std::vector<long> terms) {
        ZetaHandle h;
        h.rational_terms_ = std::move(terms);
        h.cf_ = convergents(h.rational_terms_);
        return h;
    }

    bool is_rational() const { return !rational_terms_.empty(); }
    const SturmianSpec& spec() const { return spec_; }
    std::size_t term_count() const { return cf_.size(); }
    const std::vector<Convergent>& cached_convergents() const { return cf_; }

    /// Current enclosure from the last two convergents (they straddle zeta).
    Interval enclosure() const {
        if (cf_.size() < 2) {
            if (is_rational()) {
                mpq_class v(cf_.back().p, cf_.back().q);
                v.canonicalize();
                return Interval(v);
            }
            return Interval(mpq_class(0), mpq_class(1));
        }
        mpq_class u(cf_[cf_.size() - 2].p, cf_[cf_.size() - 2].q);
        mpq_class v(cf_[cf_.size() - 1].p, cf_[cf_.size() - 1].q);
        u.canonicalize();
        v.canonicalize();
        return u <= v ? Interval(u, v) : Interval(v, u);
    }

    /// Double the number of cached convergents (up to the precision cap).
    void refine() {
        if (is_rational())
            throw precision_exhausted("ZetaHandle: rational target cannot be refined");
        std::size_t target = cf_.size() * 2;
        if (cf_.size() >= cap_)
            throw precision_exhausted("ZetaHandle: refinement cap " + std::to_string(cap_) +
                                      " reached");
        extend_to(std::min(target, cap_));
    }

    void refine_to_width(const mpq_class& target_width) {
        while (enclosure().width() > target_width) refine();
    }

    double approx() const { return to_double(enclosure()); }

private:
    ZetaHandle() = default;

    void extend_to(std::size_t n_terms) {
        // letters of m_phi are the partial quotients after the leading 0
        LetterWord letters = word_limit_prefix(spec_, n_terms);
        std::vector<long> terms;
        terms.reserve(letters.size() + 1);
        terms.push_back(0);
        terms.insert(terms.end(), letters.begin(), letters.end());
        cf_ = convergents(terms);
    }

    SturmianSpec spec_ = SturmianSpec::from_list(1, 2, {1});
    std::vector<long> rational_terms_;
    std::vector<Convergent> cf_;
    std::size_t cap_ = default_precision_cap();
};

/// Enclosure of zeta_phi of width at most target_width.
inline Interval eval_zeta(const SturmianSpec& spec, const mpq_class& target_width) {
    ZetaHandle h(spec);
    h.refine_to_width(target_width);
    return h.enclosure();
}

/// W_k, the primitive minimal polynomial of alpha_k = [0; m_k, m_k, ...],
/// together with the root enclosure and local data.
struct QuadraticData {
    std::size_t k = 0;
    IntPolynomial W;
    AlgebraicNumber alpha;          // root of W inside (0,1)
    mpz_class height;               // H(W_k)
    std::optional<mpq_class> eta_k; // [s_{k+1}; s_k, ..., s_1] when available
};

inline QuadraticData alpha_quadratic(const SturmianSpec& spec, std::size_t k) {
    if (k < 1) throw config_error("alpha_quadratic: k must be >= 1");
    LetterWord period = generate_word(spec, k);
    if (period.empty()) throw config_error("alpha_quadratic: empty word");

    // x = [0; period, period, ...] satisfies
    // q_{m-1} x^2 + (q_m - p_{m-1}) x - p_m = 0 with p_i/q_i the convergents
    // of [0; period].
    mpz_class p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (long d : period) {
        mpz_class pn = d * p + p_prev, qn = d * q + q_prev;
        p_prev = p; q_prev = q; p = pn; q = qn;
    }
    IntPolynomial W(std::vector<mpz_class>{-p, q - p_prev, q_prev});
    W = W.primitive();
    if (!is_irreducible(W))
        throw error("alpha_quadratic: W_k unexpectedly reducible at k=" + std::to_string(k));

    AlgebraicNumber alpha(W, Interval(mpq_class(0), mpq_class(1)));
    QuadraticData data{k, W, alpha, W.height(), std::nullopt};
    if (spec.has(k + 1)) data.eta_k = eta(spec, k);
    return data;
}

/// Best linear approximation polynomials E_l = q_l T - p_l from the
/// convergents, in increasing height order, up to height X.
inline std::vector<IntPolynomial> best_linear_sequence(ZetaHandle& zeta, const mpz_class& X) {
    if (X < 1) throw config_error("best_linear_sequence: X must be >= 1");
    if (zeta.is_rational())
        throw config_error("best_linear_sequence: rational target");
    while (zeta.cached_convergents().back().q <= X) zeta.refine();

    const auto& cf = zeta.cached_convergents();
    std::vector<IntPolynomial> out;
    for (std::size_t l = 0; l < cf.size(); ++l) {
        // E_0 = T is not a best approximation when the next convergent has
        // the same height (zeta > 1/2, first quotient 1): skip it then.
        if (l == 0 && cf.size() > 1 && cf[1].q == 1) continue;
        mpz_class h = std::max(mpz_class(abs(cf[l].p)), cf[l].q);
        if (h > X) break;
        out.emplace_back(std::vector<mpz_class>{-cf[l].p, cf[l].q});
    }
    if (out.empty())
        throw error("best_linear_sequence: no convergent with height <= " + X.get_str());
    return out;
}

/// Enclosure of P(zeta), refined until the sign is certified and the
/// relative width is below rel_width.
inline Interval eval_cert(const IntPolynomial& P, ZetaHandle& zeta, const mpq_class& rel_width) {
    if (P.is_zero()) throw config_error("eval_cert: zero polynomial");
    for (;;) {
        Interval iv = P.eval(zeta.enclosure());
        if (!iv.contains_zero()) {
            Interval a = iv.abs();
            if (iv.width() <= rel_width * a.lo()) return iv;
        }
        zeta.refine(); // throws precision_exhausted at the cap
    }
}

/// Certified enclosure of |zeta - alpha| with relative width <= rel_width.
inline Interval alg_distance(ZetaHandle& zeta, const AlgebraicNumber& alpha_in,
                             const mpq_class& rel_width) {
    AlgebraicNumber alpha = alpha_in;
    mpq_class tol = alpha.interval().width();
    for (;;) {
        Interval d = (zeta.enclosure() - alpha.interval()).abs();
        if (!d.contains_zero() && d.width() <= rel_width * d.lo()) return d;
        // shrink whichever side is wider
        if (alpha.interval().width() >= zeta.enclosure().width()) {
            tol /= 16;
            alpha.refine(tol);
        } else {
            zeta.refine();
        }
    }
}

struct LiouvilleReport {
    bool applicable = false;
    double constant = 0.0; // |P(zeta)| / (H(P) |zeta - alpha|)
};

/// Empirical constant in |P(zeta)| <= C H(P) |zeta - alpha| for the real
/// root alpha of P nearest to zeta.
inline LiouvilleReport liouville_link(const IntPolynomial& P, ZetaHandle& zeta,
                                      const mpq_class& rel_width = mpq_class(1, 1000)) {
    auto roots = isolate_real_roots(P);
    if (roots.empty()) return {false, 0.0};
    std::optional<Interval> best;
    for (const auto& r : roots) {
        Interval d = alg_distance(zeta, r, rel_width);
        if (!best || d.mid() < best->mid()) best = d;
    }
    Interval pv = eval_cert(P, zeta, rel_width).abs();
    double c = std::exp(log_abs(pv) - log_z(P.height()) - log_abs(*best));
    return {true, c};
}

/// Min and max of H(E_l) |E_l(zeta)| over the best linear approximations of
/// height at most X, with the partial-quotient lower bound 1/(max(a,b)+2).
struct BadlyApproximableReport {
    double min_product = 0.0;
    double max_product = 0.0;
    double partial_quotient_bound = 0.0;
    std::size_t count = 0;
};

inline BadlyApproximableReport badly_approximable_check(ZetaHandle& zeta, const mpz_class& X) {
    if (zeta.is_rational()) throw config_error("badly_approximable_check: rational target");
    auto Es = best_linear_sequence(zeta, X);
    BadlyApproximableReport rep;
    rep.count = Es.size();
    long maxq = std::max(zeta.spec().letter_a(), zeta.spec().letter_b());
    rep.partial_quotient_bound = 1.0 / (maxq + 2);
    bool first = true;
    for (const auto& E : Es) {
        Interval v = eval_cert(E, zeta, mpq_class(1, 1000)).abs();
        double prod = std::exp(log_z(E.height()) + log_abs(v));
        if (first || prod < rep.min_product) rep.min_product = prod;
        if (first || prod > rep.max_product) rep.max_product = prod;
        first = false;
    }
    return rep;
}

} // namespace sturmlab

#endif
