#pragma once

// Resolution-identity coefficients (D5 and NS5 fusion), the closed-form
// proof-lemma coefficients d_i and c_i, and the 3d mirror symmetry checker.

#include <vector>

#include "bowlab/bct.hpp"
#include "bowlab/stab.hpp"

namespace bowlab {

// ---------------------------------------------------------------------------
// d_i(a, h) = prod_{j=i+1}^{w} theta(a_i h / a_j) / theta(a_j / a_i), the
// elliptic class theta(N^-_{g_i/Y}) / theta(N_{g_i/Y^h}) of Y = T*Gr(w-1, w);
// the mirror coefficient satisfies c_i(a, h^{-1}) = (-1)^{w-i} d_i(a, h).

inline ThetaProduct coeff_d(int i, int w) {
    if (i < 1 || i > w) throw error("coeff_d: index out of range");
    ThetaProduct p;
    for (int j = i + 1; j <= w; ++j) {
        p.num.push_back(Monomial::a_var(i) * Monomial::h_pow(1) * Monomial::a_var(j, -1));
        p.den.push_back(Monomial::a_var(j) * Monomial::a_var(i, -1));
    }
    return p;
}

inline ThetaProduct coeff_c(int i, int w) {
    ThetaProduct p = coeff_d(i, w);
    if ((w - i) % 2 != 0) p.scalar = -p.scalar;
    return p;
}

// Tangent character of Y = T*Gr(w-1, w) at the fixed point g_i (rightmost
// NS5 brane tied to the i-th D5 brane): {a_j/a_i} + {h a_i/a_j}, j != i.
inline Character tangent_gr_w1(int w, int i) {
    Character c;
    for (int j = 1; j <= w; ++j) {
        if (j == i) continue;
        c.add(Monomial::a_var(j) * Monomial::a_var(i, -1));
        c.add(Monomial::a_var(i) * Monomial::a_var(j, -1) * Monomial::h_pow(1));
    }
    return c;
}

// The fusion coefficient for Y = T*P^{n-1} (the NS5 point-fusion case):
// theta(N^-_{f_k/Y}) / theta(N_{f_k/Y^h}) = prod_{i<k} theta(h a_i/a_k) /
// theta(a_k/a_i).
inline ThetaProduct tpn_fusion_coeff(int k) {
    ThetaProduct p;
    for (int i = 1; i < k; ++i) {
        p.num.push_back(Monomial::h_pow(1) * Monomial::a_var(i) * Monomial::a_var(k, -1));
        p.den.push_back(Monomial::a_var(k) * Monomial::a_var(i, -1));
    }
    return p;
}

// ---------------------------------------------------------------------------
// NS5 point-fusion check.  X = /n\n-1\...\1\ is a single point; resolving its
// NS5 brane as w = 1 + (n-1) gives Xbar = separated T*P^{n-1}, evaluated on
// the divisor z'' = z' h^{-w'}.  The localization identity of the resolution
// theorem, restricted back to the point, states that the candidate column of
// the sharp resolution sums to 1 -- and the checker requires that exactly one
// candidate does.  (Non-sharp columns collapse to 0 on the divisor.)

struct FusionReport {
    bool pass = false;
    int sharp = 0;                      // 1-based surviving candidate, 0 if none
    double residual = 0.0;              // worst deviation from the delta pattern
    std::vector<double> one_dev;        // per-candidate max |sum - 1|
    std::vector<double> zero_dev;       // per-candidate max |sum|
};

inline FusionReport ns5_point_fusion_check(int n, std::uint64_t seed = kDefaultSeed,
                                           int num_contexts = 10, double tol = 1e-9,
                                           int psi_shift = -1) {
    if (n < 2) throw error("ns5_point_fusion_check: n must be >= 2");
    StabMatrix S = stab_tpn(n, Separation::Separated, standard_chamber(n));
    FusionReport rep;
    rep.one_dev.assign(n, 0.0);
    rep.zero_dev.assign(n, 0.0);
    for (int c = 0; c < num_contexts; ++c) {
        EvalContext ctx = random_context(n, 2, seed, 80000 + c);
        // the resolved NS5 branes carry (z', z'') = (z1, z2); the theorem
        // pins z'' = z' h^{-w'} with w' = 1 (psi_shift = -1)
        EvalContext sub = ctx;
        sub.log_z[1] = ctx.log_z[0] + static_cast<double>(psi_shift) * ctx.log_h;
        for (int cand = 1; cand <= n; ++cand) {
            cplx total{0.0, 0.0};
            bool pole = false;
            for (int k = 1; k <= n; ++k) {
                ThetaProduct ratio =
                    (S.entries[k - 1][cand - 1] / S.entries[k - 1][k - 1]).canceled();
                if (ratio.is_zero()) continue;  // triangularity zero, any z
                // gamma(g) = 0: no NS5 brane sits left of the resolved one
                try {
                    total += tpn_fusion_coeff(k).eval(ctx) * ratio.eval(sub);
                } catch (const error&) {
                    pole = true;  // the shifted context sits on a theta divisor
                }
            }
            rep.one_dev[cand - 1] = std::max(
                rep.one_dev[cand - 1], pole ? 1e300 : std::abs(total - cplx{1.0, 0.0}));
            rep.zero_dev[cand - 1] =
                std::max(rep.zero_dev[cand - 1], pole ? 1e300 : std::abs(total));
        }
    }
    // exactly one candidate must satisfy the identity (sum = 1); the other
    // localization columns must collapse to 0
    int survivors = 0;
    for (int cand = 1; cand <= n; ++cand) {
        if (rep.one_dev[cand - 1] <= tol) {
            ++survivors;
            rep.sharp = cand;
        }
    }
    if (survivors == 1) {
        rep.residual = rep.one_dev[rep.sharp - 1];
        for (int cand = 1; cand <= n; ++cand)
            if (cand != rep.sharp) rep.residual = std::max(rep.residual, rep.zero_dev[cand - 1]);
        rep.pass = rep.residual <= tol;
    } else {
        rep.sharp = 0;
        rep.residual = 1e300;
        for (double d : rep.one_dev) rep.residual = std::min(rep.residual, d);
        rep.pass = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The epsilon-sign ratio of Lemma 3: for a separated diagram with an NS5
// brane of local charge w split as (w-1) + 1,
//   eps_X(f) eps_X(g) / (eps_Xbar(f_sharp) eps_Xbar(g_i)) = (-1)^{w-i}.

inline int ns5_resolution_label(const BCT& g, const BCT& res, int row) {
    // rank (1-based) of the single tie of the new bottom row among the tied
    // columns of the original row
    std::vector<int> cols;
    for (int j = 0; j < g.cols(); ++j)
        if (g.at(row, j)) cols.push_back(j);
    int bottom_col = -1;
    for (int j = 0; j < res.cols(); ++j)
        if (res.at(row + 1, j)) bottom_col = j;
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == bottom_col) return static_cast<int>(i) + 1;
    throw error("ns5_resolution_label: resolution does not match the row");
}

struct LemmaChainReport {
    bool pass = false;
    long long sign_cases = 0;    // exhaustively verified epsilon ratios
    double max_dev = 0.0;        // numeric deviation of the coefficient identities
    std::vector<std::pair<int, int>> failures;  // offending (i, w)
};

inline LemmaChainReport d5_lemma_chain_check(int w_max, std::uint64_t seed = kDefaultSeed,
                                             int num_contexts = 10, double tol = 1e-10) {
    LemmaChainReport rep;
    rep.pass = true;

    // 1. exhaustive epsilon-sign brute force on separated diagrams with at
    //    most 5 branes and charges at most 3
    for (int m = 1; m <= 3; ++m) {
        for (int n = 1; m + n <= 5; ++n) {
            std::vector<int> r(m), c(n);
            std::function<void(int)> loop_c = [&](int j) {
                if (j == n) {
                    if (!gale_ryser_feasible(r, c)) return;
                    auto points = enumerate_bcts(r, c);
                    for (int row = 0; row < m; ++row) {
                        int w = r[row];
                        if (w < 2 || w > w_max) continue;
                        for (const auto& f : points) {
                            auto fs = ns5_sharp(f, row, w - 1, 1, Separation::Separated);
                            long long ef = crossings(f), efs = crossings(fs);
                            for (const auto& g : points) {
                                long long eg = crossings(g);
                                for (const auto& gi : ns5_resolutions(g, row, w - 1, 1)) {
                                    int i = ns5_resolution_label(g, gi, row);
                                    long long egi = crossings(gi);
                                    int lhs = ((ef + eg + efs + egi) % 2 == 0) ? 1 : -1;
                                    int rhs = ((w - i) % 2 == 0) ? 1 : -1;
                                    if (lhs != rhs) {
                                        rep.pass = false;
                                        rep.failures.emplace_back(i, w);
                                    }
                                    ++rep.sign_cases;
                                }
                            }
                        }
                    }
                    return;
                }
                for (c[j] = 0; c[j] <= std::min(3, m); ++c[j]) loop_c(j + 1);
            };
            std::function<void(int)> loop_r = [&](int i) {
                if (i == m) {
                    loop_c(0);
                    return;
                }
                for (r[i] = 0; r[i] <= std::min(3, n); ++r[i]) loop_r(i + 1);
            };
            loop_r(0);
        }
    }

    // 2. numeric identities: c_i = (-1)^{w-i} d_i, and the Lemma-2 reduction
    //    of c_i to a T*P^{w-1} stable-envelope ratio
    for (int w = 2; w <= w_max; ++w) {
        StabMatrix S = stab_tpn(w, Separation::Separated, standard_chamber(w));
        for (int i = 1; i <= w; ++i) {
            for (int c = 0; c < num_contexts; ++c) {
                EvalContext ctx = random_context(w, 2, seed, 90000 + 97 * w + c);
                cplx d = coeff_d(i, w).eval(ctx);
                cplx cc = coeff_c(i, w).eval(ctx);
                double sgn = ((w - i) % 2 == 0) ? 1.0 : -1.0;
                rep.max_dev = std::max(rep.max_dev, std::abs(cc - sgn * d) /
                                                        std::max(1.0, std::abs(d)));

                // key formula: c_i(a, h^{-1}) equals (-1)^{w-i} times the
                // ratio Stab(f_w)|_{f_i} / Stab(f_i)|_{f_i} at
                // (a^{-1}, z1 = z h^{1-w}, z2 = z, h)
                EvalContext sub = ctx;
                for (auto& la : sub.log_a) la = -la;
                sub.log_z[0] = ctx.log_z[1] + static_cast<double>(1 - w) * ctx.log_h;
                sub.log_z[1] = ctx.log_z[1];
                ThetaProduct ratio =
                    (S.entries[i - 1][w - 1] / S.entries[i - 1][i - 1]).canceled();
                cplx rhs = sgn * ratio.eval(sub);
                double dev = std::abs(cc - rhs) / std::max(1.0, std::abs(cc));
                rep.max_dev = std::max(rep.max_dev, dev);
                if (dev > tol) {
                    rep.pass = false;
                    rep.failures.emplace_back(i, w);
                }
            }
        }
    }
    rep.pass = rep.pass && rep.max_dev <= tol;
    return rep;
}

// ---------------------------------------------------------------------------
// 3d mirror symmetry checker:
//   Stab_X(f)|_g / Stab_X(g)|_g (a, z, h)
//     = eps_X(f) eps_X(g) Stab_X!(g^!)|_{f^!} / Stab_X!(f^!)|_{f^!}
//       (z, a, h^{-1}).

struct MirrorReport {
    bool pass = false;
    double max_dev = 0.0;
    std::vector<std::vector<double>> pair_dev;  // [f][g]
};

inline MirrorReport mirror_check(const StabMatrix& S_X, const StabMatrix& S_dual,
                                 const std::vector<int>& bijection, const std::vector<int>& signs,
                                 std::uint64_t seed = kDefaultSeed, int num_contexts = 10,
                                 double tol = 1e-9, int extra_z_seed = 0) {
    int n = S_X.n;
    MirrorReport rep;
    rep.pair_dev.assign(n, std::vector<double>(n, 0.0));
    for (int c = 0; c < num_contexts; ++c) {
        EvalContext ctx = random_context(S_X.chamber.size() ? n : n, 2, seed, 100000 + c);
        if (extra_z_seed != 0) {
            // vary a Kahler variable attached to a charge-zero brane: the
            // families never reference it, so results must be unchanged
            ctx.log_z.push_back(random_context(1, 0, seed, 990000 + extra_z_seed + c).log_a[0]);
        }
        EvalContext mctx = ctx.mirrored();
        CMatrix X = S_X.eval_by_point(ctx);
        CMatrix D = S_dual.eval_by_point(mctx);
        for (int f = 1; f <= n; ++f) {
            for (int g = 1; g <= n; ++g) {
                cplx lhs = X[g - 1][f - 1] / X[g - 1][g - 1];
                double sgn = signs[f - 1] * signs[g - 1];
                cplx rhs = sgn * D[bijection[f - 1] - 1][bijection[g - 1] - 1] /
                           D[bijection[f - 1] - 1][bijection[f - 1] - 1];
                double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
                double dev = std::abs(lhs - rhs) / scale;
                rep.pair_dev[f - 1][g - 1] = std::max(rep.pair_dev[f - 1][g - 1], dev);
                rep.max_dev = std::max(rep.max_dev, dev);
            }
        }
    }
    rep.pass = rep.max_dev <= tol;
    return rep;
}

// The T*P^1 mirror pair of the Prop formulas: X = /1/2\1\ separated and
// X^! = \1\2/1/ co-separated, with the order-reversing bijection f_k -> f'_{3-k}.
inline MirrorReport mirror_check_tp1(std::uint64_t seed = kDefaultSeed, int num_contexts = 10,
                                     double tol = 1e-9, int extra_z_seed = 0) {
    StabMatrix S = stab_tpn(2, Separation::Separated, standard_chamber(2));
    StabMatrix Sd = stab_tpn(2, Separation::CoSeparated, standard_chamber(2));
    // eps of the identity/antidiagonal tie diagrams
    std::vector<int> signs{-1, 1};
    std::vector<int> bijection{2, 1};
    return mirror_check(S, Sd, bijection, signs, seed, num_contexts, tol, extra_z_seed);
}

}  // namespace bowlab
