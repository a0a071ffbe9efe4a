#ifndef STURMLAB_INTERVAL_HPP
#define STURMLAB_INTERVAL_HPP

#include <algorithm>
#include <cassert>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

#include "sturmlab/errors.hpp"

namespace sturmlab {

/// Certified enclosure of a real number with exact rational endpoints.
/// All arithmetic is exact (rationals are closed under +,-,*,/), so the
/// containment guarantee is preserved without outward rounding.
class Interval {
public:
    Interval() : lo_(0), hi_(0) {}
    explicit Interval(const mpq_class& x) : lo_(x), hi_(x) {}
    Interval(mpq_class lo, mpq_class hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) throw config_error("Interval: lo > hi");
    }

    const mpq_class& lo() const { return lo_; }
    const mpq_class& hi() const { return hi_; }
    mpq_class width() const { return hi_ - lo_; }
    mpq_class mid() const { return (lo_ + hi_) / 2; }

    bool is_point() const { return lo_ == hi_; }
    bool contains(const mpq_class& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }

    // Certified sign: +1 / -1 when the whole interval is on one side, 0 when
    // the enclosure straddles zero (inconclusive).
    int sign() const {
        if (lo_ > 0) return 1;
        if (hi_ < 0) return -1;
        return 0;
    }

    Interval operator-() const { return Interval(-hi_, -lo_); }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_);
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        mpq_class p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_;
        mpq_class p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                        std::max(std::max(p1, p2), std::max(p3, p4)));
    }
    friend Interval operator+(const Interval& a, const mpq_class& c) { return a + Interval(c); }
    friend Interval operator-(const Interval& a, const mpq_class& c) { return a - Interval(c); }
    friend Interval operator*(const Interval& a, const mpq_class& c) { return a * Interval(c); }

    // Reciprocal; requires a sign-definite interval.
    Interval inv() const {
        if (contains_zero()) throw config_error("Interval::inv: interval straddles zero");
        return Interval(mpq_class(1) / hi_, mpq_class(1) / lo_);
    }
    friend Interval operator/(const Interval& a, const Interval& b) { return a * b.inv(); }

    Interval abs() const {
        if (lo_ >= 0) return *this;
        if (hi_ <= 0) return -*this;
        return Interval(mpq_class(0), std::max(mpq_class(-lo_), hi_));
    }

    std::string str() const {
        return "[" + lo_.get_str() + ", " + hi_.get_str() + "]";
    }

private:
    mpq_class lo_, hi_;
};

/// Enclosure of sqrt(n) for a non-negative integer, width <= 2^-prec_bits.
inline Interval sqrt_enclosure(const mpz_class& n, unsigned prec_bits = 64) {
    if (n < 0) throw config_error("sqrt_enclosure: negative argument");
    mpz_class scaled = n << (2 * prec_bits);
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    mpz_class denom = mpz_class(1) << prec_bits;
    mpq_class lo(s, denom), hi(s + 1, denom);
    lo.canonicalize();
    hi.canonicalize();
    return Interval(lo, hi);
}

/// Enclosure of sqrt(r) for a non-negative rational: sqrt(a/b) = sqrt(a*b)/b.
inline Interval sqrt_enclosure(const mpq_class& r, unsigned prec_bits = 64) {
    if (r < 0) throw config_error("sqrt_enclosure: negative argument");
    Interval s = sqrt_enclosure(mpz_class(r.get_num() * r.get_den()), prec_bits);
    mpq_class b(r.get_den());
    return Interval(s.lo() / b, s.hi() / b);
}

/// Natural log of a positive rational, computed in MPFR and returned as a
/// double (exact rationals can be astronomically large or tiny; their logs
/// always fit comfortably in a double).
inline double log_q(const mpq_class& x) {
    if (x <= 0) throw config_error("log_q: non-positive argument");
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    double r = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return r;
}

inline double log_z(const mpz_class& x) { return log_q(mpq_class(x)); }

inline double to_double(const mpq_class& x) {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
    double r = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return r;
}

inline double to_double(const Interval& iv) { return to_double(iv.mid()); }

/// log of |iv| as a double, using the midpoint; requires sign-definite iv.
inline double log_abs(const Interval& iv) {
    if (iv.contains_zero()) throw precision_exhausted("log_abs: enclosure straddles zero");
    return log_q(iv.abs().mid());
}

} // namespace sturmlab

#endif
