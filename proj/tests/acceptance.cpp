// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <functional>
#include <string>

#include "bowlab/fusion.hpp"
#include "bowlab/io.hpp"
#include "bowlab/testgen.hpp"

using namespace bowlab;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : "  -- ", detail.c_str());
    if (!pass) ++failures;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double rel(cplx got, cplx want) {
    double s = std::max({1.0, std::abs(got), std::abs(want)});
    return std::abs(got - want) / s;
}

}  // namespace

int main() {
    const std::uint64_t seed = kDefaultSeed;

    // ---- 1: fixed-point count ------------------------------------------
    {
        auto D = parse_diagram("/1/2\\2/2/3\\3\\3/2\\2/1\\1/");
        auto ch = charges(D);
        auto chd = charges(dualize(D));
        long long c1 = count_bcts(ch.r, ch.c);
        long long c2 = count_bcts(chd.r, chd.c);
        criterion(1, "1055 fixed points for the quiver pair", c1 == 1055 && c2 == 1055,
                  "got " + std::to_string(c1) + " and " + std::to_string(c2));
    }

    // ---- 2: dimensions 16 and 22 ----------------------------------------
    {
        auto D = parse_diagram("/1/2\\2/2/3\\3\\3/2\\2/1\\1/");
        long long d1 = dimension(D), d2 = dimension(dualize(D));
        criterion(2, "complex dimensions 16 and 22", d1 == 16 && d2 == 22,
                  "got " + std::to_string(d1) + " and " + std::to_string(d2));
    }

    // ---- 3: HW normalization chain --------------------------------------
    {
        auto balanced = parse_diagram("/1\\1/2\\2/");
        auto target = parse_diagram("/1/3/3\\1\\");
        bool ok = false;
        std::string detail;
        try {
            auto sep = normalize(balanced, Separation::Separated);
            ok = (sep == target) && (charges(balanced) == charges(target));
            detail = "normal form " + format_diagram(sep);
        } catch (const error& e) {
            detail = e.what();
        }
        criterion(3, "/1\\1/2\\2/ is HW-chain-connected to /1/3/3\\1\\", ok, detail);
    }

    // ---- 4: quadratic-form HW invariance, 500 randomized moves ----------
    {
        std::mt19937_64 rng(seed);
        int done = 0;
        bool ok = true;
        std::string detail;
        while (done < 500 && ok) {
            auto D = random_feasible_diagram(rng);
            int site = random_move_site(D, rng);
            if (site < 0) continue;
            auto rep = hw_invariance_check(D, site);
            if (!rep.pass) {
                ok = false;
                detail = format_diagram(D) + " site " + std::to_string(site) + " delta " +
                         rep.delta.to_string();
            }
            ++done;
        }
        criterion(4, "Q(alpha)+QU invariant under 500 random HW moves (exact)", ok, detail);
    }

    // ---- 5: section membership of the Prop formulas ----------------------
    {
        bool ok = true;
        for (int n = 1; n <= 5 && ok; ++n)
            for (int k = 1; k <= n && ok; ++k)
                for (auto form : {Separation::Separated, Separation::CoSeparated}) {
                    auto S = stab_tpn(n, form, standard_chamber(n));
                    auto rep = section_check(S.formulas[k - 1],
                                             tpn_required_qform(n, k, form, standard_chamber(n)));
                    ok = ok && rep.pass;
                }
        criterion(5, "Prop formulas are sections of the required line bundles (exact)", ok);
    }

    // ---- 6: the eight printed intro restrictions -------------------------
    {
        auto S1 = stab_tp1_elliptic(1);
        auto S2 = stab_tp1_elliptic(2);
        Monomial a12 = Monomial::a_var(1) * Monomial::a_var(2, -1);
        Monomial z12 = Monomial::z_var(1) * Monomial::z_var(2, -1);
        Monomial h = Monomial::h_pow(1);
        auto tp = [&](std::vector<Monomial> num, std::vector<Monomial> den) {
            ThetaProduct p;
            p.num = std::move(num);
            p.den = std::move(den);
            return p;
        };
        ThetaProduct want_c1[2][2] = {{tp({a12}, {}), tp({a12 * z12, h}, {z12})},
                                      {ThetaProduct{}, tp({a12 * h}, {})}};
        ThetaProduct want_c2[2][2] = {{tp({a12.inverse() * h}, {}), ThetaProduct{}},
                                      {tp({a12.inverse() * z12, h}, {z12}), tp({a12.inverse()}, {})}};
        double dev = 0.0;
        for (int t = 0; t < 100; ++t) {
            auto ctx = random_context(2, 2, seed, 200000 + t);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    cplx got1 = S1.entries[i][j].eval(ctx);
                    cplx got2 = S2.entries[i][j].eval(ctx);
                    cplx w1 = (i == 1 && j == 0) ? cplx{0.0, 0.0} : want_c1[i][j].eval(ctx);
                    cplx w2 = (i == 0 && j == 1) ? cplx{0.0, 0.0} : want_c2[i][j].eval(ctx);
                    dev = std::max({dev, rel(got1, w1), rel(got2, w2)});
                }
        }
        criterion(6, "intro T*P^1 table reproduced at 100 contexts", dev <= 1e-10,
                  "max deviation " + sci(dev));
    }

    // ---- 7: the intro mirror identity ------------------------------------
    {
        Monomial a12 = Monomial::a_var(1) * Monomial::a_var(2, -1);
        Monomial z12 = Monomial::z_var(1) * Monomial::z_var(2, -1);
        ThetaProduct cross;
        cross.num = {a12 * z12, Monomial::h_pow(1)};
        cross.den = {a12, z12};
        auto swapped = cross.substituted(Substitution::mirror_swap(2, 2));
        double dev = 0.0;
        for (int t = 0; t < 100; ++t) {
            auto ctx = random_context(2, 2, seed, 210000 + t);
            dev = std::max(dev, rel(swapped.eval(ctx), -cross.eval(ctx)));
        }
        criterion(7, "a<->z, h<->1/h substitution multiplies the cross-ratio by -1",
                  dev <= 1e-10, "max deviation " + sci(dev));
    }

    // ---- 8: Yang's R-matrix in the cohomological limit --------------------
    {
        double dev = 0.0;
        for (int t = 0; t < 100; ++t) {
            auto ctx = random_context(2, 0, seed, 220000 + t);
            cplx a1 = std::exp(ctx.log_a[0]), a2 = std::exp(ctx.log_a[1]),
                 h = std::exp(ctx.log_h);
            dev = std::max(dev, max_rel_dev(coh_r_matrix_tp1(a1, a2, h),
                                            yang_r_matrix(a1 - a2, h)));
        }
        criterion(8, "cohomological (S_C1)^{-1} S_C2 equals Yang's R-matrix", dev <= 1e-12,
                  "max deviation " + sci(dev));
    }

    // ---- 9: duality inversion --------------------------------------------
    {
        double dev = 0.0;
        bool ok = true;
        for (int n = 2; n <= 4; ++n)
            for (auto form : {Separation::Separated, Separation::CoSeparated}) {
                auto rep = duality_check(n, form, seed, 10, 1e-9);
                ok = ok && rep.pass;
                dev = std::max(dev, rep.max_dev);
            }
        criterion(9, "duality inversion for n <= 4, both forms", ok && dev <= 1e-9,
                  "max deviation " + sci(dev));
    }

    // ---- 10: mirror symmetry for the dual T*P^1 pair ----------------------
    {
        auto rep = mirror_check_tp1(seed, 10, 1e-9);
        criterion(10, "3d mirror symmetry for /1/2\\1\\ vs \\1\\2/1/, all pairs", rep.pass,
                  "max deviation " + sci(rep.max_dev));
    }

    // ---- 11: NS5 point-fusion identity + negative control -----------------
    {
        bool ok = true;
        double res = 0.0;
        for (int n = 2; n <= 5; ++n) {
            auto rep = ns5_point_fusion_check(n, seed, 10, 1e-9);
            ok = ok && rep.pass && rep.sharp == 1;
            res = std::max(res, rep.residual);
        }
        bool control = true;
        for (int n = 2; n <= 5; ++n) {
            auto rep = ns5_point_fusion_check(n, seed, 10, 1e-9, +1);
            control = control && !rep.pass && rep.residual >= 1e-2;
        }
        criterion(11, "NS5 point fusion n=2..5, wrong-shift control fails", ok && control,
                  "residual " + sci(res));
    }

    // ---- 12: coefficient lemma chain --------------------------------------
    {
        auto rep = d5_lemma_chain_check(5, seed, 10, 1e-10);
        criterion(12, "coefficient lemmas for w <= 5 with exhaustive sign brute force",
                  rep.pass,
                  "signs " + std::to_string(rep.sign_cases) + ", max deviation " +
                      sci(rep.max_dev));
    }

    // ---- 13: dynamical Yang-Baxter on T*P^2 --------------------------------
    {
        auto rep = ybe_check(Separation::Separated, seed, 10, 1e-8);
        criterion(13, "dynamical YBE residual <= 1e-8, path independence <= 1e-12",
                  rep.pass && rep.path_dev <= 1e-12,
                  "dyn " + sci(rep.max_dev) + ", path " + sci(rep.path_dev));
    }

    // ---- 14: property suites ------------------------------------------------
    {
        bool ok = true;
        std::string detail;

        // theta oddness and quasi-periodicity
        for (int t = 0; t < 100 && ok; ++t) {
            auto c = random_context(1, 0, seed, 230000 + t);
            cplx lx = c.log_a[0];
            if (rel(theta_log(-lx, c), -theta_log(lx, c)) > 1e-12) {
                ok = false;
                detail = "theta oddness";
            }
            cplx lq = std::log(c.q);
            cplx lhs = theta_log(lx + lq, c) / theta_log(lx, c);
            if (rel(lhs, -std::exp(-0.5 * lq - lx)) > 1e-12) {
                ok = false;
                detail = "quasi-periodicity";
            }
        }

        // BCT enumeration vs DP counting: exhaustive small margins, sampled
        // margins up to 6x6, plus the worked examples
        if (ok) {
            for (int m = 1; m <= 3 && ok; ++m)
                for (int n = 1; n <= 3 && ok; ++n) {
                    std::vector<int> r(m), c(n);
                    std::function<void(int)> loop_c = [&](int j) {
                        if (!ok) return;
                        if (j == n) {
                            auto lst = enumerate_bcts(r, c);
                            if (count_bcts(r, c) != static_cast<long long>(lst.size())) ok = false;
                            return;
                        }
                        for (c[j] = 0; c[j] <= m; ++c[j]) loop_c(j + 1);
                    };
                    std::function<void(int)> loop_r = [&](int i) {
                        if (!ok) return;
                        if (i == m) {
                            loop_c(0);
                            return;
                        }
                        for (r[i] = 0; r[i] <= n; ++r[i]) loop_r(i + 1);
                    };
                    loop_r(0);
                }
            if (!ok) detail = "enumeration vs DP (exhaustive)";
        }
        if (ok) {
            std::mt19937_64 rng(seed);
            for (int t = 0; t < 400 && ok; ++t) {
                int m = 4 + static_cast<int>(rng() % 3), n = 4 + static_cast<int>(rng() % 3);
                std::vector<int> r(m), c(n, 0);
                long long total = 0;
                for (int& x : r) {
                    x = static_cast<int>(rng() % (n + 1));
                    total += x;
                }
                bool feasible_build = true;
                for (int tt = 0; tt < total; ++tt) {
                    std::vector<int> room;
                    for (int j = 0; j < n; ++j)
                        if (c[j] < m) room.push_back(j);
                    if (room.empty()) {
                        feasible_build = false;
                        break;
                    }
                    ++c[room[rng() % room.size()]];
                }
                if (!feasible_build) continue;
                auto lst = enumerate_bcts(r, c);
                if (count_bcts(r, c) != static_cast<long long>(lst.size())) {
                    ok = false;
                    detail = "enumeration vs DP (sampled 6x6)";
                }
            }
        }

        // epsilon transpose-invariance, exhaustive over all 0/1 matrices up
        // to 4x4
        if (ok) {
            for (int m = 1; m <= 4 && ok; ++m)
                for (int n = 1; n <= 4 && ok; ++n) {
                    int cells = m * n;
                    for (long long mask = 0; mask < (1LL << cells); ++mask) {
                        BCT f(m, n);
                        for (int b = 0; b < cells; ++b)
                            if (mask & (1LL << b)) f.set(b / n, b % n, 1);
                        if (crossings(mirror_point(f)) != crossings(f)) {
                            ok = false;
                            detail = "epsilon transpose invariance";
                            break;
                        }
                    }
                }
        }

        // sigma-equivariance of ratio matrices for n <= 4
        if (ok) {
            for (int n = 2; n <= 4 && ok; ++n) {
                auto Sid = stab_tpn(n, Separation::Separated, standard_chamber(n));
                std::vector<int> sigma = standard_chamber(n);
                do {
                    auto Ssig = stab_tpn(n, Separation::Separated, sigma);
                    auto ctx = random_context(n, 2, seed, 240000 + n);
                    EvalContext permuted = ctx;
                    for (int i = 1; i <= n; ++i)
                        permuted.log_a[i - 1] = ctx.log_a[sigma[i - 1] - 1];
                    for (int j = 1; j <= n && ok; ++j)
                        for (int k = 1; k <= n && ok; ++k) {
                            auto r1 = (Ssig.entries[j - 1][k - 1] / Ssig.entries[k - 1][k - 1])
                                          .canceled();
                            auto r2 = (Sid.entries[j - 1][k - 1] / Sid.entries[k - 1][k - 1])
                                          .canceled();
                            if (r1.is_zero() != r2.is_zero()) {
                                ok = false;
                            } else if (!r1.is_zero() &&
                                       rel(r1.eval(ctx), r2.eval(permuted)) > 1e-10) {
                                ok = false;
                            }
                            if (!ok) detail = "sigma equivariance";
                        }
                } while (std::next_permutation(sigma.begin(), sigma.end()) && ok);
            }
        }

        criterion(14, "property suites (theta, enumeration vs DP, epsilon, sigma)", ok, detail);
    }

    if (failures == 0) {
        std::printf("acceptance: all 14 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
