#ifndef STURMLAB_MINIMA_HPP
#define STURMLAB_MINIMA_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "sturmlab/cf.hpp"
#include "sturmlab/errors.hpp"
#include "sturmlab/interval.hpp"
#include "sturmlab/intpoly.hpp"

namespace sturmlab {

enum class Side { primal, dual };

inline const char* side_name(Side s) { return s == Side::primal ? "primal" : "dual"; }

struct LatticePoint {
    mpz_class x;
    std::vector<mpz_class> y;
};

/// One witness of the parametric successive minima. Its contribution to the
/// logarithmic trajectory is the maximum of a falling and a rising line:
///   dual   L(q) = max(log H(P) - q/n,  log|P(zeta)| + q)
///   primal L(q) = max(log|x| - q,      log max_i|zeta^i x - y_i| + q/n)
/// so slopes are always among {-1/n, 1} (dual) or {-1, 1/n} (primal).
struct Witness {
    std::string id;
    std::vector<mpz_class> coords; // dual: a_0..a_n; primal: x, y_1..y_n
    std::optional<IntPolynomial> poly;
    double log_h = 0.0; // -inf allowed (primal points with x = 0)
    double log_v = 0.0;

    double eval(double q, int n, Side side) const {
        if (side == Side::dual) return std::max(log_h - q / n, log_v + q);
        return std::max(log_h - q, log_v + q / n);
    }
    /// Slope of the active branch at q; ties resolve to the rising branch,
    /// matching the half-open-on-the-right segment convention.
    mpq_class slope(double q, int n, Side side) const {
        if (side == Side::dual)
            return log_v + q >= log_h - q / n ? mpq_class(1) : mpq_class(-1, n);
        return log_v + q / n >= log_h - q ? mpq_class(1, n) : mpq_class(-1);
    }
    /// q where the falling and rising branches cross (identical formula on
    /// both sides).
    double kink(int n) const { return (log_h - log_v) * n / (n + 1.0); }
};

namespace detail {

/// Incremental exact rank over Q via fraction-free row reduction.
class RankAccumulator {
public:
    /// True iff v is independent of everything accepted so far (then kept).
    bool add(const std::vector<mpz_class>& v) {
        std::vector<mpq_class> row(v.begin(), v.end());
        for (const auto& p : pivots_) {
            if (row[p.col] == 0) continue;
            mpq_class f = row[p.col] / p.row[p.col];
            for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * p.row[j];
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] != 0) {
                pivots_.push_back({j, std::move(row)});
                return true;
            }
        }
        return false;
    }
    std::size_t rank() const { return pivots_.size(); }

private:
    struct Pivot {
        std::size_t col;
        std::vector<mpq_class> row;
    };
    std::vector<Pivot> pivots_;
};

inline void normalize_coords(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : v) c /= g;
    for (const auto& c : v) {
        if (c != 0) {
            if (c < 0)
                for (auto& e : v) e = -e;
            break;
        }
    }
}

inline std::string coords_key(const std::vector<mpz_class>& v) {
    std::string key;
    for (const auto& c : v) {
        key += c.get_str();
        key += ',';
    }
    return key;
}

} // namespace detail

/// Values and witnesses of the first n+1 minima at one q.
struct MinimaResult {
    int n = 0;
    Side side = Side::dual;
    double q = 0.0;
    std::vector<double> L;         // L_{n,1} <= ... <= L_{n,n+1}
    std::vector<Witness> witnesses;
    std::vector<bool> exact;       // per-j oracle certification; empty for
                                   // candidate (upper bound) runs
    std::vector<double> psi() const {
        std::vector<double> out;
        for (double v : L) out.push_back(v / q);
        return out;
    }
};

/// Greedy extraction of successive minima from a witness pool: scan witnesses
/// by increasing value and keep those that raise the exact rank. The j-th
/// kept value is the j-th minimum restricted to the pool.
inline MinimaResult greedy_minima(const std::vector<Witness>& pool, int n, Side side, double q) {
    if (pool.empty()) throw config_error("greedy_minima: empty pool");
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> val(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) val[i] = pool[i].eval(q, n, side);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });

    detail::RankAccumulator rank;
    MinimaResult res;
    res.n = n;
    res.side = side;
    res.q = q;
    for (std::size_t idx : order) {
        if (!rank.add(pool[idx].coords)) continue;
        res.L.push_back(val[idx]);
        res.witnesses.push_back(pool[idx]);
        if (res.L.size() == static_cast<std::size_t>(n) + 1) break;
    }
    if (res.L.size() < static_cast<std::size_t>(n) + 1)
        throw error("greedy_minima: pool does not span " + std::to_string(n + 1) +
                    " dimensions");
    return res;
}

/// Rational midpoint of a heavily refined zeta enclosure, with the integer
/// scaffolding needed for fast exact evaluation: w[i] = num^i den^{n-i}, so
/// that P(z) den^n = sum a_i w[i] is a pure integer dot product.
struct ZetaView {
    int n = 0;
    mpq_class z;
    std::vector<mpz_class> w;
    mpz_class Dn;          // den^n
    double log_den = 0.0;  // log den
    double log_zeta = 0.0; // log z
    double width = 0.0;    // enclosure width used to build the view

    /// log of |sum_i a_i z^i| for integer coefficients (constant first).
    double log_abs_dual(const std::vector<mpz_class>& a) const {
        mpz_class dot = 0;
        for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * w[i];
        if (dot == 0)
            throw precision_exhausted("ZetaView: exact zero at the rational midpoint; "
                                      "increase the view precision");
        return log_z(abs(dot)) - n * log_den;
    }
    /// log of max_i |z^i x - y_i|.
    double log_max_primal(const mpz_class& x, const std::vector<mpz_class>& y) const {
        mpz_class best = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            mpz_class r = abs(x * w[i + 1] - y[i] * Dn);
            if (r > best) best = r;
        }
        if (best == 0)
            throw precision_exhausted("ZetaView: exact zero at the rational midpoint; "
                                      "increase the view precision");
        return log_z(best) - n * log_den;
    }
    mpz_class nearest_y(const mpz_class& x, int i) const {
        mpz_class num = x * w[i], quot, rem;
        mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), Dn.get_mpz_t());
        if (2 * rem >= Dn) ++quot;
        return quot;
    }
};

inline ZetaView make_zeta_view(ZetaHandle& zeta, int n, unsigned long bits) {
    mpq_class target(1, mpz_class(1) << bits);
    zeta.refine_to_width(target);
    ZetaView v;
    v.n = n;
    v.z = zeta.enclosure().mid();
    v.z.canonicalize();
    mpz_class num = v.z.get_num(), den = v.z.get_den();
    v.w.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        mpz_class p, d;
        mpz_pow_ui(p.get_mpz_t(), num.get_mpz_t(), i);
        mpz_pow_ui(d.get_mpz_t(), den.get_mpz_t(), n - i);
        v.w[i] = p * d;
    }
    mpz_pow_ui(v.Dn.get_mpz_t(), den.get_mpz_t(), n);
    v.log_den = log_z(den);
    v.log_zeta = log_q(v.z);
    v.width = to_double(zeta.enclosure().width());
    return v;
}

inline Witness make_dual_witness(std::string id, IntPolynomial P, double log_v, int n) {
    if (P.degree() > n) throw config_error("make_dual_witness: degree exceeds n");
    Witness w;
    w.id = std::move(id);
    w.log_h = log_z(P.height());
    w.log_v = log_v;
    w.coords.assign(n + 1, mpz_class(0));
    for (int i = 0; i <= P.degree(); ++i) w.coords[i] = P[i];
    w.poly = std::move(P);
    return w;
}

inline Witness make_primal_witness(const ZetaView& view, std::string id, const mpz_class& x,
                                   std::vector<mpz_class> y) {
    Witness w;
    w.id = std::move(id);
    w.log_h = x == 0 ? -HUGE_VAL : log_z(abs(x));
    w.log_v = view.log_max_primal(x, y);
    w.coords.reserve(y.size() + 1);
    w.coords.push_back(x);
    for (auto& c : y) w.coords.push_back(std::move(c));
    return w;
}

/// Precision (bits of zeta enclosure width) adequate for values down to about
/// e^{-(n+1) q} with a wide safety margin.
inline unsigned long view_bits_for(int n, double qmax) {
    double bits = (2.0 * (n + 1) * qmax + 200.0) / std::log(2.0);
    return static_cast<unsigned long>(bits);
}

// ---------------------------------------------------------------------------
// Exhaustive oracle
// ---------------------------------------------------------------------------

/// Exact successive minima by exhaustive enumeration up to a height cap.
///
/// Dual side: all integer polynomials of degree <= n with H(P) <= cap, with
/// the constant coefficient pruned to the window where |P(zeta)| stays below
/// the running bound (anything outside cannot enter the first n+1 minima
/// below that bound). Primal side: x in [0, cap] with every combination of
/// per-coordinate nearest-integer offsets in {-1,0,1}, plus the unit vectors.
///
/// Certification: the j-th value is flagged exact when it is strictly below
/// the least possible value of every point excluded by the caps. Failing
/// that, the value is still a correct upper bound but `exact[j]` is false.
inline MinimaResult oracle_minima(ZetaHandle& zeta, int n, double q, Side side,
                                  const mpz_class& height_cap,
                                  const mpz_class& budget = 150) {
    if (n < 1 || n > 3) throw config_error("oracle_minima: n must be in 1..3");
    if (height_cap < 1) throw config_error("oracle_minima: height cap must be >= 1");
    if (q <= 0) throw config_error("oracle_minima: q must be positive");
    if (zeta.is_rational()) throw config_error("oracle_minima: rational target refused");
    if (side == Side::dual && height_cap > budget)
        throw budget_exceeded("oracle_minima: dual height cap " + height_cap.get_str() +
                              " exceeds budget " + budget.get_str());
    if (side == Side::primal && height_cap > budget * 200)
        throw budget_exceeded("oracle_minima: primal cap " + height_cap.get_str() +
                              " exceeds budget " + mpz_class(budget * 200).get_str());

    ZetaView view = make_zeta_view(zeta, n, view_bits_for(n, q));
    long X = height_cap.get_si();
    std::vector<Witness> pool;

    // dynamic pruning: B is an upper bound on the final (n+1)-th minimum,
    // tightened whenever the pool is compacted; adding more witnesses can
    // only lower the minima, so dropping entries above B is sound.
    double B = HUGE_VAL;
    auto compact = [&]() {
        B = std::min(B, greedy_minima(pool, n, side, q).L.back());
        std::vector<Witness> kept;
        for (auto& w : pool)
            if (w.eval(q, n, side) <= B + 1e-9) kept.push_back(std::move(w));
        pool = std::move(kept);
    };
    auto consider = [&](Witness w) {
        if (w.eval(q, n, side) > B + 1e-9) return;
        pool.push_back(std::move(w));
        if (pool.size() > 20000) compact();
    };

    if (side == Side::dual) {
        for (int i = 0; i <= n; ++i) {
            IntPolynomial m = IntPolynomial::from_longs({1}).shift(i);
            pool.push_back(make_dual_witness("T^" + std::to_string(i), m,
                                             i * view.log_zeta, n));
        }
        compact(); // seeds B (the monomials alone span all n+1 dimensions)
        double U = B + 0.5;

        // window radius in dot units: ceil(e^{U-q} * Dn)
        mpz_class radius_num;
        {
            mpfr_t t;
            mpfr_init2(t, static_cast<mpfr_prec_t>(mpz_sizeinbase(view.Dn.get_mpz_t(), 2)) + 64);
            mpfr_set_d(t, U - q, MPFR_RNDU);
            mpfr_exp(t, t, MPFR_RNDU);
            mpfr_mul_z(t, t, view.Dn.get_mpz_t(), MPFR_RNDU);
            mpfr_get_z(radius_num.get_mpz_t(), t, MPFR_RNDU);
            mpfr_clear(t);
            ++radius_num;
        }

        std::vector<long> a(n + 1, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == 0) {
                // constant coefficient restricted to |P(zeta)| <= e^{U-q}
                mpz_class T = 0;
                for (int j = 1; j <= n; ++j) T += a[j] * view.w[j];
                mpz_class lo_q, hi_q, t;
                t = -T - radius_num;
                mpz_cdiv_q(lo_q.get_mpz_t(), t.get_mpz_t(), view.Dn.get_mpz_t());
                t = -T + radius_num;
                mpz_fdiv_q(hi_q.get_mpz_t(), t.get_mpz_t(), view.Dn.get_mpz_t());
                if (lo_q < -X) lo_q = -X;
                if (hi_q > X) hi_q = X;
                for (mpz_class a0 = lo_q; a0 <= hi_q; ++a0) {
                    mpz_class dot = a0 * view.Dn + T;
                    if (dot == 0) {
                        bool nz = a0 != 0;
                        for (int j = 1; j <= n && !nz; ++j) nz = a[j] != 0;
                        if (!nz) continue; // the zero polynomial
                        throw precision_exhausted("oracle_minima: midpoint collision");
                    }
                    std::vector<mpz_class> c(n + 1, mpz_class(0));
                    c[0] = a0;
                    mpz_class h = abs(a0);
                    for (int j = 1; j <= n; ++j) {
                        c[j] = a[j];
                        if (abs(c[j]) > h) h = abs(c[j]);
                    }
                    for (int j = n; j >= 0; --j) { // one representative per +-P pair
                        if (c[j] != 0) {
                            if (c[j] < 0)
                                for (auto& e : c) e = -e;
                            break;
                        }
                    }
                    Witness w;
                    w.id = "enum";
                    w.log_h = log_z(h);
                    w.log_v = log_z(abs(dot)) - n * view.log_den;
                    w.coords = std::move(c);
                    consider(std::move(w));
                }
                return;
            }
            for (a[i] = -X; a[i] <= X; ++a[i]) rec(i - 1);
        };
        rec(n);

        MinimaResult res = greedy_minima(pool, n, Side::dual, q);
        double excluded = std::min(log_z(mpz_class(X + 1)) - q / n, U);
        res.exact.clear();
        for (double L : res.L) res.exact.push_back(L < excluded);
        return res;
    }

    // primal
    for (int i = 1; i <= n; ++i) {
        std::vector<mpz_class> y(n, mpz_class(0));
        y[i - 1] = 1;
        pool.push_back(make_primal_witness(view, "e" + std::to_string(i), 0, y));
    }
    std::vector<long> off(n, 0);
    for (long x = 1; x <= X; ++x) {
        std::vector<mpz_class> base(n);
        for (int i = 1; i <= n; ++i) base[i - 1] = view.nearest_y(x, i);
        std::function<void(int)> rec = [&](int i) {
            if (i == n) {
                std::vector<mpz_class> y(n);
                for (int j = 0; j < n; ++j) y[j] = base[j] + off[j];
                consider(make_primal_witness(view, "pt", x, std::move(y)));
                return;
            }
            for (off[i] = -1; off[i] <= 1; ++off[i]) rec(i + 1);
        };
        rec(0);
    }
    MinimaResult res = greedy_minima(pool, n, Side::primal, q);
    // excluded: |x| > X, or an offset beyond +-1 (distance >= 3/2 there)
    double excluded = std::min(log_z(mpz_class(X + 1)) - q, std::log(1.5) + q / n);
    res.exact.clear();
    for (double L : res.L) res.exact.push_back(L < excluded);
    return res;
}

// ---------------------------------------------------------------------------
// Candidate pools
// ---------------------------------------------------------------------------

struct PoolOptions {
    double qmax = 40.0;
    std::size_t k_max = 12;
    double height_slack = 3.0; // keep log H <= 2 qmax / n + slack
};

/// Dual candidate pool for degree n in {2,3}: the quadratic family W_k and
/// its shifts, best linear approximations E_l, and their admissible products
/// and shifts. Values of products come from exact log additivity, so only
/// the base polynomials need certified evaluation.
inline std::vector<Witness> dual_candidate_pool(ZetaHandle& zeta, int n, const PoolOptions& opt) {
    if (n != 2 && n != 3) throw config_error("dual_candidate_pool: n must be 2 or 3");
    const double hcap = 2.0 * opt.qmax / n + opt.height_slack;
    ZetaView view = make_zeta_view(zeta, n, view_bits_for(n, opt.qmax));

    struct Base {
        IntPolynomial P;
        double log_v;
        std::string id;
    };
    std::vector<Base> quads, lins;

    for (std::size_t k = 1; k <= opt.k_max; ++k) {
        std::optional<QuadraticData> d;
        try {
            d = alpha_quadratic(zeta.spec(), k);
        } catch (const sequence_exhausted&) {
            break;
        }
        if (log_z(d->height) > hcap) break;
        std::vector<mpz_class> c(3);
        for (int i = 0; i <= 2; ++i) c[i] = d->W[i];
        double lv = view.log_abs_dual(c);
        quads.push_back({d->W, lv, "W" + std::to_string(k)});
    }

    {
        double xlog = std::min(hcap, 700.0); // e^700 stays inside mpz comfort
        mpz_class X = 1;
        mpfr_t t;
        mpfr_init2(t, 64);
        mpfr_set_d(t, xlog, MPFR_RNDN);
        mpfr_exp(t, t, MPFR_RNDD);
        mpfr_get_z(X.get_mpz_t(), t, MPFR_RNDD);
        mpfr_clear(t);
        if (X < 2) X = 2;
        auto Es = best_linear_sequence(zeta, X);
        for (std::size_t l = 0; l < Es.size(); ++l) {
            std::vector<mpz_class> c(2);
            c[0] = Es[l][0];
            c[1] = Es[l][1];
            double lv = view.log_abs_dual(c);
            lins.push_back({Es[l], lv, "E" + std::to_string(l)});
        }
    }

    std::map<std::string, Witness> out;
    auto put = [&](Witness w) {
        std::vector<mpz_class> key = w.coords;
        detail::normalize_coords(key);
        out.emplace(detail::coords_key(key), std::move(w));
    };
    auto admit = [&](const std::string& id, const IntPolynomial& P, double lv) {
        if (P.degree() > n) return;
        if (log_z(P.height()) > hcap) return;
        put(make_dual_witness(id, P, lv, n));
    };

    for (int i = 0; i <= n; ++i)
        admit("T^" + std::to_string(i), IntPolynomial::from_longs({1}).shift(i),
              i * view.log_zeta);
    for (const auto& q : quads) {
        admit(q.id, q.P, q.log_v);
        if (n == 3) admit("T*" + q.id, q.P.shift(1), q.log_v + view.log_zeta);
    }
    for (const auto& e : lins) {
        admit(e.id, e.P, e.log_v);
        for (int j = 1; j < n; ++j)
            admit("T^" + std::to_string(j) + "*" + e.id, e.P.shift(j),
                  e.log_v + j * view.log_zeta);
    }
    if (n == 3) {
        for (const auto& q : quads)
            for (const auto& e : lins) {
                if (log_z(q.P.height()) + log_z(e.P.height()) > hcap + 1.0) continue;
                admit(q.id + "*" + e.id, (q.P * e.P), q.log_v + e.log_v);
            }
    }
    for (std::size_t i = 0; i < lins.size(); ++i)
        for (std::size_t j = i; j < lins.size(); ++j) {
            if (lins[i].log_v + lins[j].log_v < -3.0 * opt.qmax) break;
            if (log_z(lins[i].P.height()) + log_z(lins[j].P.height()) > hcap + 1.0) continue;
            admit(lins[i].id + "*" + lins[j].id, lins[i].P * lins[j].P,
                  lins[i].log_v + lins[j].log_v);
        }

    std::vector<Witness> pool;
    pool.reserve(out.size());
    for (auto& [k, w] : out) pool.push_back(std::move(w));
    return pool;
}

namespace detail {

/// round(e^x * 2^shift) as an exact integer; x may be negative.
inline mpz_class exp_scaled(double x, long shift) {
    mpfr_t t;
    mpfr_init2(t, 192);
    mpfr_set_d(t, x, MPFR_RNDN);
    mpfr_exp(t, t, MPFR_RNDN);
    mpfr_mul_2si(t, t, shift, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}

/// Exact LLL (delta = 3/4) on a small lattice given by integer row vectors B;
/// U tracks the unimodular transform applied, i.e. the coefficient vectors of
/// the reduced rows in the original basis. Dimension stays <= 4 here, so the
/// naive recompute-the-GSO-after-every-update scheme is cheap enough.
inline void lll_reduce(std::vector<std::vector<mpq_class>>& B,
                       std::vector<std::vector<mpz_class>>& U) {
    const std::size_t d = B.size(), m = B[0].size();
    auto dot = [m](const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
        mpq_class s = 0;
        for (std::size_t i = 0; i < m; ++i) s += x[i] * y[i];
        return s;
    };
    std::vector<std::vector<mpq_class>> Bs, mu;
    std::vector<mpq_class> norm;
    auto gso = [&]() {
        Bs = B;
        mu.assign(d, std::vector<mpq_class>(d, mpq_class(0)));
        norm.assign(d, mpq_class(0));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(B[i], Bs[j]) / norm[j];
                for (std::size_t t = 0; t < m; ++t) Bs[i][t] -= mu[i][j] * Bs[j][t];
            }
            norm[i] = dot(Bs[i], Bs[i]);
        }
    };
    auto round_q = [](const mpq_class& x) {
        mpz_class n2 = 2 * x.get_num() + x.get_den();
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), n2.get_mpz_t(), mpz_class(2 * x.get_den()).get_mpz_t());
        return r;
    };
    gso();
    std::size_t k = 1;
    long guard = 0;
    while (k < d) {
        if (++guard > 100000) throw precision_exhausted("lll_reduce: iteration guard hit");
        bool changed = false;
        for (std::size_t j = k; j-- > 0;) {
            mpz_class r = round_q(mu[k][j]);
            if (r != 0) {
                mpq_class rq(r);
                for (std::size_t t = 0; t < m; ++t) B[k][t] -= rq * B[j][t];
                for (std::size_t t = 0; t < U[0].size(); ++t) U[k][t] -= r * U[j][t];
                changed = true;
            }
        }
        if (changed) gso();
        if (norm[k] >= (mpq_class(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
            ++k;
        } else {
            std::swap(B[k], B[k - 1]);
            std::swap(U[k], U[k - 1]);
            gso();
            k = k > 1 ? k - 1 : 1;
        }
    }
}

} // namespace detail

/// Reduced-basis witnesses of the true dual lattice at a grid of q values.
/// The structured family (W_k, E_l and products) can miss the higher minima
/// in some windows, e.g. the third dual direction for n=2 between consecutive
/// W_k kinks, and then a candidate scan drifts outside the Minkowski
/// corridor. Reducing the scaled lattice (coordinates weighted e^{-q/n},
/// value form weighted e^{q}) recovers near-optimal vectors in every
/// direction; their values are then certified exactly through the view, so
/// the merged pool stays a sound upper bound.
inline std::vector<Witness> harvest_dual_witnesses(ZetaHandle& zeta, int n, double qmin,
                                                   double qmax, std::size_t grid = 48) {
    if (n < 1 || n > 3) throw config_error("harvest_dual_witnesses: n must be in 1..3");
    if (!(qmin > 0 && qmax > qmin)) throw config_error("harvest_dual_witnesses: bad q range");
    ZetaView view = make_zeta_view(zeta, n, view_bits_for(n, qmax));
    std::map<std::string, Witness> out;
    int serial = 0;
    for (std::size_t g = 0; g <= grid; ++g) {
        double q = qmin + (qmax - qmin) * g / grid;
        const long shift = static_cast<long>(q / n * 1.4427) + 64;
        mpz_class u = detail::exp_scaled(-q / n, shift);
        mpz_class v = detail::exp_scaled(q, shift);
        std::vector<std::vector<mpq_class>> B(n + 1,
                                              std::vector<mpq_class>(n + 2, mpq_class(0)));
        std::vector<std::vector<mpz_class>> U(n + 1, std::vector<mpz_class>(n + 1, 0));
        for (int i = 0; i <= n; ++i) {
            B[i][i] = mpq_class(u);
            mpz_class c = (v * view.w[i]) / view.Dn;
            B[i][n + 1] = mpq_class(c);
            U[i][i] = 1;
        }
        detail::lll_reduce(B, U);
        // all {-1,0,1} combinations of the reduced rows: LLL only bounds the
        // basis within a 2^{d/2} factor, and the later successive minima are
        // often a short combination of rows rather than a row itself
        std::vector<std::vector<mpz_class>> cands;
        long combos = 1;
        for (int i = 0; i <= n; ++i) combos *= 3;
        for (long m = 1; m < combos; ++m) {
            std::vector<mpz_class> row(n + 1, 0);
            long rem = m;
            for (int i = 0; i <= n; ++i) {
                long c = rem % 3 == 2 ? -1 : rem % 3;
                rem /= 3;
                if (c != 0)
                    for (int t = 0; t <= n; ++t) row[t] += c * U[i][t];
            }
            cands.push_back(std::move(row));
        }
        for (const auto& row : cands) {
            IntPolynomial P{std::vector<mpz_class>(row.begin(), row.end())};
            if (P.is_zero()) continue;
            P = P.primitive();
            std::vector<mpz_class> c(P.degree() + 1);
            for (int j = 0; j <= P.degree(); ++j) c[j] = P[j];
            double lv;
            try {
                lv = view.log_abs_dual(c);
            } catch (const precision_exhausted&) {
                continue;
            }
            Witness w = make_dual_witness("R" + std::to_string(serial++), P, lv, n);
            std::vector<mpz_class> key = w.coords;
            detail::normalize_coords(key);
            out.emplace(detail::coords_key(key), std::move(w));
        }
    }
    std::vector<Witness> pool;
    pool.reserve(out.size());
    for (auto& [k, w] : out) pool.push_back(std::move(w));
    return pool;
}

/// Successive minima from a candidate pool; an upper bound on the truth
/// (exactness only where certified against the oracle).
inline MinimaResult candidate_minima(const std::vector<Witness>& pool, int n, Side side,
                                     double q) {
    return greedy_minima(pool, n, side, q);
}

namespace detail {

inline mpz_class det_int(const std::vector<std::vector<mpz_class>>& m) {
    std::size_t d = m.size();
    if (d == 1) return m[0][0];
    mpz_class acc = 0;
    int sign = 1;
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<std::vector<mpz_class>> minor;
        for (std::size_t r = 1; r < d; ++r) {
            std::vector<mpz_class> row;
            for (std::size_t cc = 0; cc < d; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(std::move(row));
        }
        acc += sign * m[0][c] * det_int(minor);
        sign = -sign;
    }
    return acc;
}

/// Adjugate of a small integer matrix: adj(M) M = det(M) I.
inline std::vector<std::vector<mpz_class>> adjugate(
    const std::vector<std::vector<mpz_class>>& m) {
    std::size_t d = m.size();
    std::vector<std::vector<mpz_class>> adj(d, std::vector<mpz_class>(d));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            std::vector<std::vector<mpz_class>> minor;
            for (std::size_t rr = 0; rr < d; ++rr) {
                if (rr == r) continue;
                std::vector<mpz_class> row;
                for (std::size_t cc = 0; cc < d; ++cc)
                    if (cc != c) row.push_back(m[rr][cc]);
                minor.push_back(std::move(row));
            }
            mpz_class cof = det_int(minor);
            if ((r + c) % 2 == 1) cof = -cof;
            adj[c][r] = cof; // transpose of the cofactor matrix
        }
    return adj;
}

} // namespace detail

/// Primal candidate pool built by transference from the dual pool: at each
/// checkpoint q the four best independent dual witnesses form an integer
/// matrix M; the columns of adj(M) satisfy M z = det(M) e_j and are the
/// natural primal candidates. Convergent denominators and unit vectors are
/// mixed in.
inline std::vector<Witness> primal_candidate_pool(ZetaHandle& zeta, int n,
                                                  const std::vector<Witness>& dual_pool,
                                                  double qmin, double qmax,
                                                  std::size_t checkpoints = 32) {
    ZetaView view = make_zeta_view(zeta, n, view_bits_for(n, qmax));
    std::map<std::string, Witness> out;
    auto put = [&](const mpz_class& x_in, std::vector<mpz_class> y_in, const std::string& id) {
        std::vector<mpz_class> v;
        v.push_back(x_in);
        for (const auto& c : y_in) v.push_back(c);
        detail::normalize_coords(v);
        if (std::all_of(v.begin(), v.end(), [](const mpz_class& c) { return c == 0; })) return;
        std::string key = detail::coords_key(v);
        if (out.count(key)) return;
        mpz_class x = v[0];
        std::vector<mpz_class> y(v.begin() + 1, v.end());
        out.emplace(key, make_primal_witness(view, id, x, std::move(y)));
    };

    for (int i = 1; i <= n; ++i) {
        std::vector<mpz_class> y(n, mpz_class(0));
        y[i - 1] = 1;
        put(0, y, "e" + std::to_string(i));
    }
    for (const auto& cv : zeta.cached_convergents()) {
        if (log_z(cv.q) > 1.5 * qmax + 2.0) break;
        if (cv.q == 0) continue;
        std::vector<mpz_class> y(n);
        for (int i = 1; i <= n; ++i) y[i - 1] = view.nearest_y(cv.q, i);
        put(cv.q, y, "cv");
    }
    for (std::size_t c = 0; c <= checkpoints; ++c) {
        double q = qmin + (qmax - qmin) * c / checkpoints;
        MinimaResult dual = greedy_minima(dual_pool, n, Side::dual, q);
        std::vector<std::vector<mpz_class>> M;
        for (const auto& w : dual.witnesses) M.push_back(w.coords);
        auto adj = detail::adjugate(M);
        for (std::size_t col = 0; col < adj.size(); ++col) {
            std::vector<mpz_class> z(n + 1);
            for (std::size_t r = 0; r <= static_cast<std::size_t>(n); ++r) z[r] = adj[r][col];
            mpz_class x = z[0];
            std::vector<mpz_class> y(z.begin() + 1, z.end());
            put(x, y, "adj");
            if (x != 0) {
                // nearest-y repair of the transferred x often improves the value
                std::vector<mpz_class> yn(n);
                mpz_class xa = abs(x);
                for (int i = 1; i <= n; ++i) yn[i - 1] = view.nearest_y(xa, i);
                put(xa, yn, "adj~");
            }
        }
    }
    std::vector<Witness> pool;
    pool.reserve(out.size());
    for (auto& [k, w] : out) pool.push_back(std::move(w));
    return pool;
}

// ---------------------------------------------------------------------------
// Trajectories
// ---------------------------------------------------------------------------

struct MinimaSample {
    double q = 0.0;
    std::vector<double> L;
    std::vector<std::string> witness_ids;
};

struct TrajectorySegment {
    double q_lo = 0.0, q_hi = 0.0;
    std::vector<mpq_class> slopes;
    std::vector<std::string> witness_ids;
};

struct MinimaTrajectory {
    int n = 0;
    Side side = Side::dual;
    double qmin = 0.0, qmax = 0.0;
    std::vector<MinimaSample> samples;
    std::vector<TrajectorySegment> segments;
    double minkowski_bound = 0.0;
    double max_abs_sum = 0.0; // empirical max of |sum_j L_j| over samples
    bool minkowski_ok = true;

    void write_csv(std::ostream& os) const {
        os << "# sturmlab trajectory csv v1\n";
        os << "q";
        for (int j = 1; j <= n + 1; ++j) os << ",L" << j;
        for (int j = 1; j <= n + 1; ++j) os << ",witness" << j;
        os << "\n";
        for (const auto& s : samples) {
            os << s.q;
            for (double v : s.L) os << ',' << v;
            for (const auto& id : s.witness_ids) os << ',' << id;
            os << "\n";
        }
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema_version"] = 1;
        j["n"] = n;
        j["side"] = side_name(side);
        j["qmin"] = qmin;
        j["qmax"] = qmax;
        j["minkowski_bound"] = minkowski_bound;
        j["max_abs_sum"] = max_abs_sum;
        auto samp = nlohmann::json::array();
        for (const auto& s : samples)
            samp.push_back({{"q", s.q}, {"L", s.L}, {"witnesses", s.witness_ids}});
        j["samples"] = samp;
        auto segs = nlohmann::json::array();
        for (const auto& s : segments) {
            std::vector<std::string> slopes;
            for (const auto& m : s.slopes) slopes.push_back(m.get_str());
            segs.push_back({{"q_lo", s.q_lo},
                            {"q_hi", s.q_hi},
                            {"slopes", slopes},
                            {"witnesses", s.witness_ids}});
        }
        j["segments"] = segs;
        return j;
    }
};

/// Segment-exact trajectory of the first n+1 minima over [qmin, qmax].
///
/// A coarse prefilter drops witnesses that cannot reach the (n+1)-th minimum
/// anywhere (sound because every involved function is 1-Lipschitz in q); the
/// surviving witnesses contribute their kinks and pairwise line crossings as
/// breakpoints, and each resulting segment carries exact slopes read off the
/// active branch.
inline MinimaTrajectory trajectory_scan(const std::vector<Witness>& pool, int n, Side side,
                                        double qmin, double qmax, std::size_t grid = 64) {
    if (!(qmin > 0 && qmax > qmin)) throw config_error("trajectory_scan: bad q range");
    MinimaTrajectory tr;
    tr.n = n;
    tr.side = side;
    tr.qmin = qmin;
    tr.qmax = qmax;
    tr.minkowski_bound = std::lgamma(n + 2.0) + (n + 1) * std::log(2.0) + 2.0;

    const std::size_t coarse = std::max<std::size_t>(grid * 4, 128);
    const double step = (qmax - qmin) / coarse;
    std::vector<char> keep(pool.size(), 0);
    for (std::size_t g = 0; g <= coarse; ++g) {
        double q = qmin + g * step;
        MinimaResult m = greedy_minima(pool, n, side, q);
        double cut = m.L.back() + 2.5 * step;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (!keep[i] && pool[i].eval(q, n, side) <= cut) keep[i] = 1;
    }
    std::vector<Witness> live;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (keep[i]) live.push_back(pool[i]);

    std::vector<double> bps{qmin, qmax};
    auto push_bp = [&](double q) {
        if (q > qmin + 1e-12 && q < qmax - 1e-12) bps.push_back(q);
    };
    const double fall = side == Side::dual ? -1.0 / n : -1.0;
    const double rise = side == Side::dual ? 1.0 : 1.0 / n;
    for (std::size_t i = 0; i < live.size(); ++i) {
        push_bp(live[i].kink(n));
        for (std::size_t j = i + 1; j < live.size(); ++j) {
            const Witness &A = live[i], &B = live[j];
            // fall/fall and rise/rise branch pairs are parallel; only the
            // mixed pairs cross: A.log_h + fall q = B.log_v + rise q
            push_bp((A.log_h - B.log_v) / (rise - fall));
            push_bp((B.log_h - A.log_v) / (rise - fall));
        }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              bps.end());

    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        double mid = (bps[i] + bps[i + 1]) / 2;
        MinimaResult m = greedy_minima(live, n, side, mid);
        TrajectorySegment seg;
        seg.q_lo = bps[i];
        seg.q_hi = bps[i + 1];
        for (const auto& w : m.witnesses) {
            seg.slopes.push_back(w.slope(mid, n, side));
            seg.witness_ids.push_back(w.id);
        }
        if (!tr.segments.empty() && tr.segments.back().slopes == seg.slopes &&
            tr.segments.back().witness_ids == seg.witness_ids) {
            tr.segments.back().q_hi = seg.q_hi;
        } else {
            tr.segments.push_back(std::move(seg));
        }
    }

    // sample on the grid plus every breakpoint: the extremes of L_j/q live at
    // kinks and crossings, and a grid-only sample set would shave them off
    std::vector<double> qs = bps;
    for (std::size_t g = 0; g <= grid; ++g) qs.push_back(qmin + (qmax - qmin) * g / grid);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-9; }),
             qs.end());
    for (double q : qs) {
        MinimaResult m = greedy_minima(live, n, side, q);
        MinimaSample s;
        s.q = q;
        s.L = m.L;
        for (const auto& w : m.witnesses) s.witness_ids.push_back(w.id);
        double sum = 0;
        for (double v : m.L) sum += v;
        tr.max_abs_sum = std::max(tr.max_abs_sum, std::abs(sum));
        tr.samples.push_back(std::move(s));
    }
    tr.minkowski_ok = tr.max_abs_sum <= tr.minkowski_bound;
    return tr;
}

/// Sampled trajectory for large pools: the exact-breakpoint scan enumerates
/// all pairwise crossings among surviving witnesses, which is quadratic and
/// blows up when a pool has thousands of near-ties. Here the samples sit on a
/// uniform grid enriched with the kinks of every witness that enters a top
/// set and the mixed-branch crossings between witnesses of adjacent top sets,
/// so the extremes of each L_j are still hit exactly where the active
/// witnesses determine them. Segments are merged runs of identical witness
/// sets between consecutive samples.
inline MinimaTrajectory sampled_trajectory(const std::vector<Witness>& pool, int n, Side side,
                                           double qmin, double qmax, std::size_t grid = 256) {
    if (!(qmin > 0 && qmax > qmin)) throw config_error("sampled_trajectory: bad q range");
    MinimaTrajectory tr;
    tr.n = n;
    tr.side = side;
    tr.qmin = qmin;
    tr.qmax = qmax;
    tr.minkowski_bound = std::lgamma(n + 2.0) + (n + 1) * std::log(2.0) + 2.0;

    const std::size_t coarse = std::min<std::size_t>(std::max<std::size_t>(grid / 2, 96), 256);
    const double cstep = (qmax - qmin) / coarse;
    std::vector<char> keep(pool.size(), 0);
    for (std::size_t g = 0; g <= coarse; ++g) {
        double q = qmin + g * cstep;
        MinimaResult m = greedy_minima(pool, n, side, q);
        double cut = m.L.back() + 2.5 * cstep;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (!keep[i] && pool[i].eval(q, n, side) <= cut) keep[i] = 1;
    }
    std::vector<Witness> live;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (keep[i]) live.push_back(pool[i]);

    const double fall = side == Side::dual ? -1.0 / n : -1.0;
    const double rise = side == Side::dual ? 1.0 : 1.0 / n;

    std::vector<double> qs;
    for (std::size_t g = 0; g <= grid; ++g) qs.push_back(qmin + (qmax - qmin) * g / grid);
    std::vector<std::vector<Witness>> tops;
    tops.reserve(qs.size());
    for (double q : qs) tops.push_back(greedy_minima(live, n, side, q).witnesses);
    std::vector<double> extra;
    auto push_extra = [&](double q) {
        if (q > qmin + 1e-12 && q < qmax - 1e-12) extra.push_back(q);
    };
    std::map<std::string, char> seen;
    for (std::size_t g = 0; g < tops.size(); ++g) {
        for (const Witness& w : tops[g]) {
            if (seen.emplace(w.id, 1).second) push_extra(w.kink(n));
        }
        if (g == 0) continue;
        for (const Witness& a : tops[g - 1])
            for (const Witness& b : tops[g]) {
                push_extra((a.log_h - b.log_v) / (rise - fall));
                push_extra((b.log_h - a.log_v) / (rise - fall));
            }
    }
    for (double q : extra) qs.push_back(q);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             qs.end());

    for (double q : qs) {
        MinimaResult m = greedy_minima(live, n, side, q);
        MinimaSample s;
        s.q = q;
        s.L = m.L;
        for (const auto& w : m.witnesses) s.witness_ids.push_back(w.id);
        double sum = 0;
        for (double v : m.L) sum += v;
        tr.max_abs_sum = std::max(tr.max_abs_sum, std::abs(sum));
        if (!tr.samples.empty()) {
            const auto& prev = tr.samples.back();
            if (tr.segments.empty() || tr.segments.back().witness_ids != s.witness_ids) {
                TrajectorySegment seg;
                seg.q_lo = prev.q;
                seg.q_hi = q;
                seg.witness_ids = s.witness_ids;
                double mid = (prev.q + q) / 2;
                MinimaResult mm = greedy_minima(live, n, side, mid);
                for (const auto& w : mm.witnesses) seg.slopes.push_back(w.slope(mid, n, side));
                tr.segments.push_back(std::move(seg));
            } else {
                tr.segments.back().q_hi = q;
            }
        }
        tr.samples.push_back(std::move(s));
    }
    tr.minkowski_ok = tr.max_abs_sum <= tr.minkowski_bound;
    return tr;
}

/// Local minimum of one witness's V-shape: the crossing of its two lines,
/// q* = (n/(n+1))(log H(P) - log|P(zeta)|), and the value there.
inline std::pair<double, double> local_minimum_of_witness(const IntPolynomial& P,
                                                          ZetaHandle& zeta, int n) {
    if (P.is_zero() || P.height() < 1)
        throw config_error("local_minimum_of_witness: degenerate polynomial");
    double lh = log_z(P.height());
    double lv = log_abs(eval_cert(P, zeta, mpq_class(1, 1000000000)));
    if (lv >= 0 && lh <= 0)
        throw config_error("local_minimum_of_witness: lines do not cross at q > 0");
    double q = (lh - lv) * n / (n + 1.0);
    return {q, lh - q / n};
}

// ---------------------------------------------------------------------------
// Interval structure
// ---------------------------------------------------------------------------

struct IntervalDatum {
    std::size_t k = 0;
    double q_k = 0.0, b_k = 0.0, c_k = 0.0, q_next = 0.0;
    double len_I = 0.0, len_J = 0.0, ratio = 0.0; // |I_k| = b_k - q_k, |J_k| = q_{k+1} - b_k
    double midpoint_residual = 0.0;               // |b_k - (q_k + q_{k+1})/2| / q_k
};

struct IntervalStructure {
    std::vector<IntervalDatum> data;
    double bc_gap_max = 0.0; // max |b_k - c_k|, bounded by (3/4)|log zeta|
};

/// Breakpoints of the dual n=3 trajectory: q_k = 3 log H(W_{k+1}) and the
/// crossing points b_k (of W_{k+1}) and c_k (of T W_{k+1}).
inline IntervalStructure interval_structure(ZetaHandle& zeta, std::size_t k_lo,
                                            std::size_t k_hi) {
    if (k_lo < 1 || k_hi < k_lo) throw config_error("interval_structure: bad k range");
    IntervalStructure st;
    double log_zeta = log_abs(eval_cert(IntPolynomial::from_longs({0, 1}), zeta,
                                        mpq_class(1, 1000000)));
    std::vector<double> qk(k_hi + 2), bk(k_hi + 1), ck(k_hi + 1);
    for (std::size_t k = k_lo; k <= k_hi + 1; ++k) {
        auto d = alpha_quadratic(zeta.spec(), k + 1);
        qk[k] = 3.0 * log_z(d.height);
        if (k <= k_hi) {
            auto [q, v] = local_minimum_of_witness(d.W, zeta, 3);
            bk[k] = q;
            ck[k] = q - 0.75 * log_zeta; // H(T W) = H(W), |zeta W(zeta)| adds log zeta
            (void)v;
        }
    }
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        IntervalDatum d;
        d.k = k;
        d.q_k = qk[k];
        d.b_k = bk[k];
        d.c_k = ck[k];
        d.q_next = qk[k + 1];
        d.len_I = d.b_k - d.q_k;
        d.len_J = d.q_next - d.b_k;
        d.ratio = d.len_J != 0.0 ? d.len_I / d.len_J : HUGE_VAL;
        d.midpoint_residual = std::abs(d.b_k - (d.q_k + d.q_next) / 2) / d.q_k;
        st.bc_gap_max = std::max(st.bc_gap_max, std::abs(d.b_k - d.c_k));
        st.data.push_back(d);
    }
    return st;
}

} // namespace sturmlab

#endif
