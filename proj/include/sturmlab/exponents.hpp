#ifndef STURMLAB_EXPONENTS_HPP
#define STURMLAB_EXPONENTS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sturmlab/cf.hpp"
#include "sturmlab/minima.hpp"

namespace sturmlab {

// ---------------------------------------------------------------------------
// psi <-> exponent mapping
//
// Dual side:   (1 + w_{n,j}) (1/n + psi*) = (n+1)/n, with psi* the window
//              liminf for w and the window limsup for the uniform variant.
// Primal side: (1 + lambda_{n,j}) (1 + psi) = (n+1)/n, same convention.
// A nullopt result encodes an infinite exponent (denominator <= 0).
// ---------------------------------------------------------------------------

inline std::optional<double> w_from_psi(double psi_star, int n) {
    double d = 1.0 + n * psi_star;
    if (d <= 0.0) return std::nullopt;
    return (n + 1) / d - 1.0;
}

inline std::optional<double> lambda_from_psi(double psi, int n) {
    double d = n * (1.0 + psi);
    if (d <= 0.0) return std::nullopt;
    return (n + 1) / d - 1.0;
}

inline double psi_from_w(double w, int n) {
    if (w <= -1.0) throw config_error("psi_from_w: w must exceed -1");
    return (static_cast<double>(n + 1) / (1.0 + w) - 1.0) / n;
}

inline double psi_from_lambda(double lambda, int n) {
    if (lambda <= -1.0) throw config_error("psi_from_lambda: lambda must exceed -1");
    return static_cast<double>(n + 1) / (n * (1.0 + lambda)) - 1.0;
}

// ---------------------------------------------------------------------------
// Closed-form predictions as certified intervals in sigma
// ---------------------------------------------------------------------------

namespace detail {
inline Interval imax(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}
inline Interval imin(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}
} // namespace detail

struct LambdaBounds {
    int n = 0;
    Interval lower;          // max{1/n, (2+(3-n)sigma)/(2+(n+1)sigma)}
    Interval upper;          // 1/(1+2 sigma), refined where the side conditions
                             // (n-2) sigma <= 2 resp. >= 2 hold certifiably
};

struct PredictedValues {
    Interval sigma;

    // dimension two
    std::optional<Interval> w2;  // 1 + 2/sigma (absent when sigma may vanish)
    Interval w2_hat;             // 2 + sigma
    Interval l2;                 // 1
    Interval l2_hat;             // (1+sigma)/(2+sigma)

    // dimension three
    std::optional<Interval> w3;  // 1 + 2/sigma, equals the starred variant
    Interval l3;                 // 1/(1+2 sigma)
    Interval w3_hat;             // 3
    Interval l3_hat;             // 1/3
    Interval w3_star_hat;        // 2 + sigma

    // second pair of successive-minima uniform exponents in dimension three
    Interval w33_hat;            // 1 + 2 sigma (shared by j = 3 and j = 4)
    Interval l33_hat;            // sigma/(sigma+2)

    std::vector<LambdaBounds> lambda_n; // n = 3 .. n_max
};

inline PredictedValues predicted(const Interval& sigma, int n_max = 8) {
    if (sigma.lo() < 0) throw config_error("predicted: sigma must be >= 0");
    // sigma never exceeds 1/golden-ratio = (sqrt 5 - 1)/2
    Interval s5 = sqrt_enclosure(mpz_class(5), 80);
    if (sigma.lo() > (s5.hi() - 1) / 2) // certifiably above the bound
        throw config_error("predicted: sigma exceeds the golden-ratio bound");

    bool positive = sigma.lo() > 0;
    bool zero = sigma.lo() == 0 && sigma.hi() == 0;
    Interval one{mpq_class(1)}, two{mpq_class(2)}, three{mpq_class(3)};

    PredictedValues pv;
    pv.sigma = sigma;
    if (positive) {
        Interval w = one + two / sigma;
        pv.w2 = w;
        pv.w3 = w;
    }
    pv.w2_hat = two + sigma;
    pv.l2 = one;
    pv.l2_hat = (one + sigma) / (two + sigma);
    pv.l3 = one / (one + two * sigma);
    pv.w3_hat = three;
    pv.l3_hat = one / three;
    pv.w3_star_hat = two + sigma;
    pv.w33_hat = one + two * sigma;
    pv.l33_hat = sigma / (sigma + two);

    for (int n = 3; n <= n_max; ++n) {
        LambdaBounds b;
        b.n = n;
        Interval nn{mpq_class(n)};
        Interval lower2 = (two + Interval(mpq_class(3 - n)) * sigma) /
                          (two + Interval(mpq_class(n + 1)) * sigma);
        b.lower = detail::imax(one / nn, lower2);
        if (zero) {
            b.upper = one; // lambda_n = 1 exactly at sigma = 0
        } else {
            b.upper = one / (one + two * sigma);
            if (positive) {
                // refinements with certifiable side conditions
                if (mpq_class(n - 2) * sigma.hi() <= 2)
                    b.upper = detail::imin(b.upper,
                                           one / (Interval(mpq_class(n - 1)) * sigma));
                if (mpq_class(n - 2) * sigma.lo() >= 2)
                    b.upper = detail::imin(b.upper, one / (two + sigma));
            }
        }
        pv.lambda_n.push_back(std::move(b));
    }
    return pv;
}

/// h_n = (1/2) ((1 + 2n sqrt(n^2 - 2n + 5/4))/(n-1) + 2n - 1); always > 2n-1.
inline Interval evaluate_hn(int n, unsigned prec_bits = 96) {
    if (n < 2) throw config_error("evaluate_hn: n must be >= 2");
    Interval root = sqrt_enclosure(mpq_class(4 * n * n - 8 * n + 5, 4), prec_bits);
    Interval v = (Interval(mpq_class(1)) + Interval(mpq_class(2 * n)) * root) /
                 Interval(mpq_class(n - 1));
    return (v + Interval(mpq_class(2 * n - 1))) / Interval(mpq_class(2));
}

// ---------------------------------------------------------------------------
// Trajectory -> exponent estimates
// ---------------------------------------------------------------------------

struct PsiEstimate {
    double lower = 0.0; // window min of psi_{n,j}(q) = L_j(q)/q
    double upper = 0.0; // window max
};

struct ExponentReport {
    int n = 0;
    Side side = Side::dual;
    double q_lo = 0.0, q_hi = 0.0;
    std::vector<PsiEstimate> psi;                 // j = 1..n+1
    std::vector<std::optional<double>> regular;   // w_{n,j} resp. lambda_{n,j}
    std::vector<std::optional<double>> uniform;   // hatted variants
};

/// Window extremes of psi over samples with q in [q_lo, q_hi], mapped to
/// exponents. The window should cover the last couple of structure periods
/// of the scan; earlier q carry transients.
inline ExponentReport exponent_report(const MinimaTrajectory& tr, double q_lo, double q_hi) {
    ExponentReport rep;
    rep.n = tr.n;
    rep.side = tr.side;
    rep.q_lo = q_lo;
    rep.q_hi = q_hi;
    rep.psi.assign(tr.n + 1, PsiEstimate{HUGE_VAL, -HUGE_VAL});
    bool any = false;
    for (const auto& s : tr.samples) {
        if (s.q < q_lo || s.q > q_hi) continue;
        any = true;
        for (int j = 0; j <= tr.n; ++j) {
            double psi = s.L[j] / s.q;
            rep.psi[j].lower = std::min(rep.psi[j].lower, psi);
            rep.psi[j].upper = std::max(rep.psi[j].upper, psi);
        }
    }
    if (!any) throw config_error("exponent_report: no samples in the window");
    for (int j = 0; j <= tr.n; ++j) {
        if (tr.side == Side::dual) {
            rep.regular.push_back(w_from_psi(rep.psi[j].lower, tr.n));
            rep.uniform.push_back(w_from_psi(rep.psi[j].upper, tr.n));
        } else {
            rep.regular.push_back(lambda_from_psi(rep.psi[j].lower, tr.n));
            rep.uniform.push_back(lambda_from_psi(rep.psi[j].upper, tr.n));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Duality audits
// ---------------------------------------------------------------------------

struct DualityRow {
    std::string name;
    double lhs = 0.0, rhs = 0.0;
    double residual = 0.0;
    bool defined = true;
};

/// Residuals of the duality relations between a primal and a dual report of
/// the same dimension: psi_liminf_{n,j} = -psi*_limsup_{n,n+2-j}, and
/// lambda_{n,j} * what_{n,n+2-j} = 1 (with the hatted pairing as well).
inline std::vector<DualityRow> duality_audit(const ExponentReport& primal,
                                             const ExponentReport& dual) {
    if (primal.side != Side::primal || dual.side != Side::dual)
        throw config_error("duality_audit: expects one primal and one dual report");
    if (primal.n != dual.n) throw config_error("duality_audit: dimension mismatch");
    int n = primal.n;
    std::vector<DualityRow> rows;
    for (int j = 1; j <= n + 1; ++j) {
        int jd = n + 2 - j; // paired index on the dual side
        DualityRow lo{"psi_pair_liminf_j" + std::to_string(j),
                      primal.psi[j - 1].lower, -dual.psi[jd - 1].upper, 0.0, true};
        lo.residual = std::abs(lo.lhs - lo.rhs);
        rows.push_back(lo);
        DualityRow hi{"psi_pair_limsup_j" + std::to_string(j),
                      primal.psi[j - 1].upper, -dual.psi[jd - 1].lower, 0.0, true};
        hi.residual = std::abs(hi.lhs - hi.rhs);
        rows.push_back(hi);

        DualityRow inv{"lambda_times_uniform_w_j" + std::to_string(j), 0.0, 1.0, 0.0, true};
        if (primal.regular[j - 1] && dual.uniform[jd - 1]) {
            inv.lhs = *primal.regular[j - 1] * *dual.uniform[jd - 1];
            inv.residual = std::abs(inv.lhs - 1.0);
        } else {
            inv.defined = false;
        }
        rows.push_back(inv);
        DualityRow inv2{"uniform_lambda_times_w_j" + std::to_string(j), 0.0, 1.0, 0.0, true};
        if (primal.uniform[j - 1] && dual.regular[jd - 1]) {
            inv2.lhs = *primal.uniform[j - 1] * *dual.regular[jd - 1];
            inv2.residual = std::abs(inv2.lhs - 1.0);
        } else {
            inv2.defined = false;
        }
        rows.push_back(inv2);
    }
    return rows;
}

struct DualityPoint {
    std::size_t k = 0;
    double q = 0.0;                 // checkpoint parameter (deep-minimum b_k)
    std::vector<double> residual;   // per j: psi_{n,j}(q) + psi*_{n,n+2-j}(q)
};

/// Pointwise duality residuals at the deep-minimum checkpoints b_k.
inline std::vector<DualityPoint> duality_checkpoints(const std::vector<Witness>& primal_pool,
                                                     const std::vector<Witness>& dual_pool,
                                                     ZetaHandle& zeta, int n,
                                                     std::size_t k_lo, std::size_t k_hi) {
    auto st = interval_structure(zeta, k_lo, k_hi);
    std::vector<DualityPoint> out;
    for (const auto& d : st.data) {
        DualityPoint pt;
        pt.k = d.k;
        pt.q = d.b_k;
        auto pres = greedy_minima(primal_pool, n, Side::primal, pt.q);
        auto dres = greedy_minima(dual_pool, n, Side::dual, pt.q);
        for (int j = 1; j <= n + 1; ++j)
            pt.residual.push_back(pres.L[j - 1] / pt.q + dres.L[n + 1 - j] / pt.q);
        out.push_back(std::move(pt));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inequality audit
// ---------------------------------------------------------------------------

struct ExponentSet {
    int n = 1;
    std::optional<double> w, w_hat, w_star, w_star_hat, lambda, lambda_hat;
    std::optional<double> w_prev; // w_{n-1}, gates the transference refinement
};

struct InequalityRow {
    std::string name;
    bool applicable = false;
    bool holds = false;
    double slack = 0.0; // rhs - lhs when applicable
};

inline std::vector<InequalityRow> inequality_audit(const ExponentSet& e, double tol = 1e-9) {
    std::vector<InequalityRow> rows;
    int n = e.n;
    auto push = [&](std::string name, std::optional<double> lhs, std::optional<double> rhs) {
        InequalityRow r;
        r.name = std::move(name);
        if (lhs && rhs) {
            r.applicable = true;
            r.slack = *rhs - *lhs;
            r.holds = r.slack >= -tol;
        } else if (!rhs) {
            // infinite right-hand side: holds vacuously when the lhs exists
            r.applicable = static_cast<bool>(lhs);
            r.holds = r.applicable;
            r.slack = HUGE_VAL;
        }
        rows.push_back(std::move(r));
    };

    // w_n >= what_n >= n (infinite w dominates everything finite)
    push("w_ge_uniform_w", e.w_hat, e.w);
    push("uniform_w_ge_n", std::optional<double>(static_cast<double>(n)), e.w_hat);
    // lambda_n >= uniform lambda_n >= 1/n
    push("lambda_ge_uniform_lambda", e.lambda_hat, e.lambda);
    push("uniform_lambda_ge_inv_n", std::optional<double>(1.0 / n), e.lambda_hat);
    // transference: w/((n-1)w+n) <= lambda <= (w-n+1)/n
    if (e.w && e.lambda) {
        push("transfer_lower", *e.w / ((n - 1) * *e.w + n), e.lambda);
        push("transfer_upper", e.lambda, (*e.w - n + 1) / n);
    } else {
        push("transfer_lower", std::nullopt, std::nullopt);
        push("transfer_upper", std::nullopt, std::nullopt);
    }
    // starred sandwich: w* <= w <= w* + n - 1, and the hatted version
    push("starred_le_w", e.w_star, e.w);
    if (e.w && e.w_star)
        push("w_le_starred_plus", e.w, *e.w_star + n - 1);
    else
        push("w_le_starred_plus", std::nullopt, std::nullopt);
    push("uniform_starred_le_uniform_w", e.w_star_hat, e.w_hat);
    if (e.w_hat && e.w_star_hat)
        push("uniform_w_le_uniform_starred_plus", e.w_hat, *e.w_star_hat + n - 1);
    else
        push("uniform_w_le_uniform_starred_plus", std::nullopt, std::nullopt);
    // uniform refinement, valid when w_n > w_{n-1}
    if (e.w && e.w_hat && e.w_prev && *e.w > *e.w_prev + tol && *e.w - n + 1 > 0)
        push("uniform_w_refined_bound", e.w_hat, n * *e.w / (*e.w - n + 1));
    else
        push("uniform_w_refined_bound", std::nullopt, std::nullopt);
    return rows;
}

/// Exponent sets induced by the closed forms, for feeding the audit.
inline ExponentSet predicted_set2(const PredictedValues& pv) {
    ExponentSet e;
    e.n = 2;
    if (pv.w2) e.w = to_double(*pv.w2);
    e.w_hat = to_double(pv.w2_hat);
    e.w_star = e.w;
    e.w_star_hat = to_double(pv.w2_hat); // starred and plain coincide at n=2
    e.lambda = to_double(pv.l2);
    e.lambda_hat = to_double(pv.l2_hat);
    e.w_prev = 1.0;
    return e;
}

inline ExponentSet predicted_set3(const PredictedValues& pv) {
    ExponentSet e;
    e.n = 3;
    if (pv.w3) e.w = to_double(*pv.w3);
    e.w_hat = to_double(pv.w3_hat);
    e.w_star = e.w;
    e.w_star_hat = to_double(pv.w3_star_hat);
    e.lambda = to_double(pv.l3);
    e.lambda_hat = to_double(pv.l3_hat);
    if (pv.w2) e.w_prev = to_double(*pv.w2);
    return e;
}

// ---------------------------------------------------------------------------
// Quadratic-family growth audit
// ---------------------------------------------------------------------------

struct GrowthRow {
    std::size_t k = 0;
    double alpha_gap = 0.0;        // -log|zeta - alpha_k| / log H(W_k)
    double alpha_gap_pred = 0.0;   // 2 + 2 eta_k
    double value_own = 0.0;        // -log|W_k(zeta)| / log H(W_k)
    double value_own_pred = 0.0;   // 1 + 2 eta_k
    double value_next = 0.0;       // -log|W_k(zeta)| / log H(W_{k+1})
    double value_next_pred = 0.0;  // 2 + 1/eta_k
    double height_ratio = 0.0;     // log H(W_{k+1}) / log H(W_k)
    double height_ratio_pred = 0.0; // eta_{k+1}
    std::array<double, 4> residuals() const {
        return {std::abs(alpha_gap - alpha_gap_pred), std::abs(value_own - value_own_pred),
                std::abs(value_next - value_next_pred),
                std::abs(height_ratio - height_ratio_pred)};
    }
};

/// Measured growth exponents of the quadratic family against their exact
/// finite-depth predictions 2+2eta_k, 1+2eta_k, 2+1/eta_k and eta_{k+1}.
inline std::vector<GrowthRow> quadratic_growth_audit(const SturmianSpec& spec,
                                                     std::size_t k_lo, std::size_t k_hi) {
    if (k_lo < 1 || k_hi < k_lo) throw config_error("quadratic_growth_audit: bad k range");
    ZetaHandle zeta(spec);
    mpq_class rel(1, 1000000000);
    std::vector<GrowthRow> rows;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        auto d = alpha_quadratic(spec, k);
        auto dn = alpha_quadratic(spec, k + 1);
        double logH = log_z(d.height);
        double logHn = log_z(dn.height);
        double logv = log_abs(eval_cert(d.W, zeta, rel));
        double logdist = log_abs(alg_distance(zeta, d.alpha, rel));
        double ek = to_double(eta(spec, k));
        double ekn = to_double(eta(spec, k + 1));
        GrowthRow r;
        r.k = k;
        r.alpha_gap = -logdist / logH;
        r.alpha_gap_pred = 2.0 + 2.0 * ek;
        r.value_own = -logv / logH;
        r.value_own_pred = 1.0 + 2.0 * ek;
        r.value_next = -logv / logHn;
        r.value_next_pred = 2.0 + 1.0 / ek;
        r.height_ratio = logHn / logH;
        r.height_ratio_pred = ekn;
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Four-polynomial construction audit
// ---------------------------------------------------------------------------

struct QuadrupleResult {
    std::size_t i = 0;
    mpz_class X;                        // H(W_{i+1})
    long t = 0;                         // index of the taller linear factor
    std::array<IntPolynomial, 4> G;     // {W_i E_t, W_i E_{t-1}, W_{i+1}, T W_{i+1}}
    bool independent = false;           // exact 4x4 determinant nonzero
    double height_exp = 0.0;            // max_j log H(G_j) / log X
    double value_exp = 0.0;             // max_j log|G_j(zeta)| / log X
    double mu = 0.0, nu = 0.0;          // measured growth data of W_i vs W_{i+1}
    double hypothesis = 0.0;            // 2 / (nu (mu - 1)), should approach 1
    bool height_ok = false, value_ok = false, hypothesis_ok = false;
};

/// Builds the spanning quadruple {W_i E_t, W_i E_{t-1}, W_{i+1}, T W_{i+1}}
/// with t maximal such that H(W_i E_t) <= H(W_{i+1}), and verifies exact
/// independence plus the height, smallness and hypothesis bounds at level
/// epsilon.
inline QuadrupleResult quadruple_construction(const SturmianSpec& spec, std::size_t i,
                                              double eps) {
    if (i < 1) throw config_error("quadruple_construction: i must be >= 1");
    ZetaHandle zeta(spec);
    auto di = alpha_quadratic(spec, i);
    auto dn = alpha_quadratic(spec, i + 1);
    mpz_class X = dn.height;
    double logX = log_z(X);

    // linear factors tall enough to reach H(W_{i+1}) / H(W_i), with slack for
    // the height of the product deviating from the product of heights
    mpz_class lin_cap = 4 * X / di.height + 4;
    auto Es = best_linear_sequence(zeta, lin_cap);
    long t = -1;
    for (long l = 0; l < static_cast<long>(Es.size()); ++l) {
        if (multiply(di.W, Es[l]).product.height() <= X) t = l;
    }
    if (t < 1)
        throw error("quadruple_construction: no pair of admissible linear factors at i=" +
                    std::to_string(i));

    QuadrupleResult res;
    res.i = i;
    res.X = X;
    res.t = t;
    res.G = {multiply(di.W, Es[t]).product, multiply(di.W, Es[t - 1]).product, dn.W,
             dn.W.shift(1)};

    std::vector<std::vector<mpz_class>> m(4, std::vector<mpz_class>(4, mpz_class(0)));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c <= res.G[r].degree(); ++c) m[r][c] = res.G[r][c];
    res.independent = detail::det_int(m) != 0;

    mpq_class rel(1, 1000000000);
    double max_h = -HUGE_VAL, max_v = -HUGE_VAL;
    for (const auto& g : res.G) {
        max_h = std::max(max_h, log_z(g.height()));
        max_v = std::max(max_v, log_abs(eval_cert(g, zeta, rel)));
    }
    res.height_exp = max_h / logX;
    res.value_exp = max_v / logX;
    res.height_ok = res.height_exp <= 1.0 + eps;
    res.value_ok = res.value_exp <= -3.0 + eps;

    double logHi = log_z(di.height);
    res.mu = -log_abs(eval_cert(di.W, zeta, rel)) / logHi;
    res.nu = logHi / logX;
    res.hypothesis = 2.0 / (res.nu * (res.mu - 1.0));
    res.hypothesis_ok = res.hypothesis < 1.0 + eps;
    return res;
}

// ---------------------------------------------------------------------------
// Cubic exclusion scan
// ---------------------------------------------------------------------------

struct ExclusionCheckpoint {
    std::size_t k = 0;
    mpz_class X;                 // H(W_{k+1})
    double min_irreducible_log = 0.0; // min log|Q(zeta)|, irreducible cubic, H <= X
    IntPolynomial min_irreducible;
    double exclusion_threshold = 0.0; // (-2 sigma - 1 - eps) log X
    bool exclusion_ok = false;        // nothing irreducible below the threshold
    double pool_best_log = 0.0;       // best cubic from the quadratic-multiple pool
    std::string pool_witness_id;
    double inclusion_threshold = 0.0; // (-3 + eps) log X
    bool inclusion_ok = false;        // the pool does reach the inclusion bound
};

struct ExclusionScan {
    double sigma = 0.0;
    double eps = 0.0;
    std::vector<ExclusionCheckpoint> checkpoints;
};

/// Exhaustive minimum of |Q(zeta)| over cubics of height <= X with no rational
/// root, at the checkpoints X = H(W_{k+1}) <= X_cap, against the exclusion
/// threshold X^{-2 sigma - 1 - eps}; the inclusion side is witnessed by the
/// candidate pool at the complementary threshold X^{-3 + eps}.
inline ExclusionScan cubic_exclusion_scan(const SturmianSpec& spec, const mpz_class& X_cap,
                                          double eps) {
    ZetaHandle zeta(spec);
    auto sig = sigma(spec, 40);
    ExclusionScan scan;
    scan.sigma = to_double(sig.value());
    scan.eps = eps;

    std::vector<std::pair<std::size_t, mpz_class>> checkpoints;
    for (std::size_t k = 1;; ++k) {
        auto d = alpha_quadratic(spec, k + 1);
        if (d.height > X_cap) break;
        checkpoints.emplace_back(k, d.height);
        if (k > 30) break;
    }
    if (checkpoints.empty()) return scan;

    ZetaView view = make_zeta_view(zeta, 3, 512);
    double log_Dn = 3.0 * view.log_den;

    PoolOptions opt;
    opt.qmax = 3.0 * log_z(checkpoints.back().second) + 6.0;
    opt.k_max = checkpoints.back().first + 2;
    auto pool = dual_candidate_pool(zeta, 3, opt);

    for (auto& [k, X] : checkpoints) {
        ExclusionCheckpoint cp;
        cp.k = k;
        cp.X = X;
        double logX = log_z(X);
        cp.exclusion_threshold = (-2.0 * scan.sigma - 1.0 - eps) * logX;
        cp.inclusion_threshold = (-3.0 + eps) * logX;

        long Xl = static_cast<long>(X.get_si());
        mpz_class best_dot = 0; // 0 means unset
        IntPolynomial best_poly;
        for (long a3 = 1; a3 <= Xl; ++a3) {
            mpz_class t3 = a3 * view.w[3];
            for (long a2 = -Xl; a2 <= Xl; ++a2) {
                mpz_class t2 = t3 + a2 * view.w[2];
                for (long a1 = -Xl; a1 <= Xl; ++a1) {
                    mpz_class t = t2 + a1 * view.w[1];
                    // nearest constant term, then walk outward in both
                    // directions while the value still beats the running
                    // minimum (irreducibility may reject the closest hits)
                    mpz_class q, r;
                    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(),
                                view.Dn.get_mpz_t());
                    if (2 * r >= view.Dn) ++q;
                    long base = static_cast<long>(mpz_class(-q).get_si());
                    base = std::clamp(base, -Xl, Xl);
                    // returns false once this direction can no longer help
                    auto consider = [&](long a0) {
                        if (std::abs(a0) > Xl) return false;
                        mpz_class dot = abs(t + a0 * view.Dn);
                        if (best_dot != 0 && dot >= best_dot) return false;
                        IntPolynomial P(std::vector<mpz_class>{
                            mpz_class(a0), mpz_class(a1), mpz_class(a2), mpz_class(a3)});
                        if (P.degree() == 3 && is_irreducible(P)) {
                            best_dot = dot;
                            best_poly = P;
                        }
                        return true;
                    };
                    if (!consider(base)) continue;
                    for (long a0 = base + 1; consider(a0); ++a0) {}
                    for (long a0 = base - 1; consider(a0); --a0) {}
                }
            }
        }
        if (best_dot == 0)
            throw error("cubic_exclusion_scan: no irreducible cubic found (cap too small)");
        cp.min_irreducible = best_poly;
        cp.min_irreducible_log = log_z(best_dot) - log_Dn;
        cp.exclusion_ok = cp.min_irreducible_log > cp.exclusion_threshold;

        double best_pool = HUGE_VAL;
        for (const auto& w : pool) {
            if (!w.poly || w.poly->degree() != 3) continue;
            if (w.poly->height() > X) continue;
            if (w.log_v < best_pool) {
                best_pool = w.log_v;
                cp.pool_witness_id = w.id;
            }
        }
        cp.pool_best_log = best_pool;
        cp.inclusion_ok = best_pool <= cp.inclusion_threshold;
        scan.checkpoints.push_back(std::move(cp));
    }
    return scan;
}

// ---------------------------------------------------------------------------
// Five-way equivalence audit
// ---------------------------------------------------------------------------

struct EquivalenceRow {
    std::string claim;
    bool holds = false;
    double value = 0.0;
};

struct EquivalenceAudit {
    std::vector<EquivalenceRow> rows;
    bool coherent = false; // all five claims carry the same truth value
};

/// Checks the five-way equivalence tying w_{k,k+1} = k, uniform w_k = k and
/// uniform lambda_k = 1/k against estimated values, within tolerance.
inline EquivalenceAudit equivalence_audit(double w_k_k1, double w_hat, double lambda_hat,
                                          int k, double tol) {
    EquivalenceAudit a;
    a.rows.push_back({"w_{k,k+1} >= k", w_k_k1 >= k - tol, w_k_k1});
    a.rows.push_back({"w_{k,k+1} = k", std::abs(w_k_k1 - k) <= tol, w_k_k1});
    a.rows.push_back({"uniform w_k <= k", w_hat <= k + tol, w_hat});
    a.rows.push_back({"uniform w_k = k", std::abs(w_hat - k) <= tol, w_hat});
    a.rows.push_back({"uniform lambda_k = 1/k", std::abs(lambda_hat - 1.0 / k) <= tol / k,
                      lambda_hat});
    a.coherent = true;
    for (const auto& r : a.rows)
        if (r.holds != a.rows.front().holds) a.coherent = false;
    return a;
}

// ---------------------------------------------------------------------------
// Algebraic-number proximity search (starred exponents)
// ---------------------------------------------------------------------------

struct ProximityBest {
    int degree = 0;
    IntPolynomial poly;
    double log_dist = 0.0;  // certified log|zeta - alpha|
    double wstar_est = 0.0; // -log|zeta - alpha| / log H(alpha) - 1
};

struct ProximitySearch {
    mpz_class X;
    std::array<std::optional<ProximityBest>, 3> best; // index d-1 for degree d
};

namespace detail {

/// Top candidates by |P(zeta)| over degree-d polynomials of height <= X with
/// the leading coefficient positive and the constant term near its optimum.
inline std::vector<IntPolynomial> proximity_candidates(const ZetaView& view, int d, long X,
                                                       std::size_t keep) {
    struct Entry {
        mpz_class dot;
        IntPolynomial poly;
    };
    std::vector<Entry> top;
    auto offer = [&](mpz_class dot, IntPolynomial P) {
        if (P.degree() != d || !is_irreducible(P)) return;
        Entry e{std::move(dot), std::move(P)};
        auto it = std::upper_bound(top.begin(), top.end(), e,
                                   [](const Entry& a, const Entry& b) { return a.dot < b.dot; });
        top.insert(it, std::move(e));
        if (top.size() > keep) top.pop_back();
    };
    std::vector<long> a(d + 1, 0);
    // iterate over the non-constant coefficients
    std::function<void(int, const mpz_class&)> rec = [&](int idx, const mpz_class& partial) {
        if (idx == 0) {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), partial.get_mpz_t(),
                        view.Dn.get_mpz_t());
            if (2 * r >= view.Dn) ++q;
            long base = static_cast<long>(mpz_class(-q).get_si());
            for (long a0 : {base, base + 1, base - 1}) {
                if (std::abs(a0) > X) continue;
                std::vector<mpz_class> c;
                c.emplace_back(a0);
                for (int i = 1; i <= d; ++i) c.emplace_back(a[i]);
                offer(abs(partial + a0 * view.Dn), IntPolynomial(std::move(c)));
            }
            return;
        }
        long lo = idx == d ? 1 : -X;
        for (long v = lo; v <= X; ++v) {
            a[idx] = v;
            rec(idx - 1, partial + v * view.w[idx]);
        }
    };
    rec(d, mpz_class(0));
    std::vector<IntPolynomial> out;
    for (auto& e : top) out.push_back(std::move(e.poly));
    return out;
}

} // namespace detail

/// Best certified |zeta - alpha| per degree class d in {1,..,n}, over algebraic
/// numbers of degree exactly d and height <= X. Candidates of degree >= 2 are
/// the polynomials with the smallest |P(zeta)|; the distance itself is then
/// certified through root isolation.
inline ProximitySearch proximity_search(ZetaHandle& zeta, const mpz_class& X, int n = 3) {
    if (n < 1 || n > 3) throw config_error("proximity_search: n must be in 1..3");
    if (X < 1 || X > 200) throw budget_exceeded("proximity_search: X out of budget");
    ProximitySearch res;
    res.X = X;
    mpq_class rel(1, 1000000000);

    // degree 1: the best rational is a convergent with denominator <= X
    {
        std::optional<ProximityBest> best;
        for (const auto& cv : zeta.cached_convergents()) {
            if (cv.q > X || mpz_class(abs(cv.p)) > X) continue;
            std::vector<mpz_class> c{-cv.p, cv.q};
            IntPolynomial E{std::move(c)};
            double ld = log_abs(eval_cert(E, zeta, rel)) - log_z(cv.q);
            if (!best || ld < best->log_dist) {
                double logH = log_z(E.height());
                best = ProximityBest{1, E, ld, logH > 0 ? -ld / logH - 1.0 : 0.0};
            }
        }
        res.best[0] = best;
    }

    long Xl = static_cast<long>(X.get_si());
    ZetaView view = make_zeta_view(zeta, 3, 512);
    for (int d = 2; d <= n; ++d) {
        auto cands = detail::proximity_candidates(view, d, Xl, 24);
        std::optional<ProximityBest> best;
        for (const auto& P : cands) {
            for (const auto& root : isolate_real_roots(P)) {
                Interval dist = alg_distance(zeta, root, rel);
                if (dist.lo() <= 0) continue;
                double ld = log_abs(dist);
                if (!best || ld < best->log_dist) {
                    double logH = log_z(P.height());
                    best = ProximityBest{d, P, ld, logH > 0 ? -ld / logH - 1.0 : 0.0};
                }
            }
        }
        res.best[d - 1] = best;
    }
    return res;
}

} // namespace sturmlab

#endif
