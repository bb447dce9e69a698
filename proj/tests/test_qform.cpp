#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bowlab/bct.hpp"
#include "bowlab/qform.hpp"

using namespace bowlab;

namespace {

BraneDiagram tpn_diagram(int n, Separation form) {
    ChargeVector ch;
    ch.r = {1, n - 1};
    for (int j = 0; j < n; ++j) ch.c.push_back(1);
    return diagram_from_charges(ch, form);
}

BraneDiagram random_feasible_diagram(std::mt19937_64& rng, int max_branes = 8, int max_charge = 3) {
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    for (;;) {
        int m = pick(1, max_branes / 2);
        int n = pick(1, max_branes - m);
        ChargeVector ch;
        long long total = 0;
        for (int i = 0; i < m; ++i) {
            ch.r.push_back(pick(0, std::min(max_charge, n)));
            total += ch.r.back();
        }
        for (int j = 0; j < n; ++j) ch.c.push_back(0);
        bool ok = true;
        for (int t = 0; t < total; ++t) {
            std::vector<int> room;
            for (int j = 0; j < n; ++j)
                if (ch.c[j] < m) room.push_back(j);
            if (room.empty()) {
                ok = false;
                break;
            }
            ++ch.c[room[rng() % room.size()]];
        }
        if (!ok || !gale_ryser_feasible(ch.r, ch.c)) continue;
        BraneDiagram D = diagram_from_charges(ch, Separation::Separated);
        int shuffles = pick(0, 12);
        for (int s = 0; s < shuffles; ++s) {
            std::vector<int> sites;
            for (int i = 0; i + 1 < D.num_branes(); ++i) {
                if (!hw_move_applicable(D, i)) continue;
                int d1 = D.d3()[i], d2 = D.d3()[i + 1], d3 = D.d3()[i + 2];
                if (d1 + d3 - d2 + 1 >= 0) sites.push_back(i);
            }
            if (sites.empty()) break;
            D = hw_move(D, sites[rng() % sites.size()]);
        }
        return D;
    }
}

}  // namespace

TEST_CASE("linear and quadratic form basics") {
    // (a1 - a2)^2 is pure base: reduces to 0
    QForm q;
    q.add_square(LinForm::a(1) - LinForm::a(2));
    REQUIRE(q.reduced_mod_base().is_zero());

    // (t - a + h)^2 keeps its cross terms: t^2 - 2 t a + 2 t h
    QForm q2;
    LinForm t = LinForm::s1(1);
    q2.add_square(t - LinForm::a(1) + LinForm::h(1));
    QForm expect;
    expect.add_product(t, t);
    expect.add_product(t, LinForm::a(1), -2);
    expect.add_product(t, LinForm::h(1), 2);
    REQUIRE(q2.reduced_mod_base() == expect);

    // Q of h Hom(C_A, xi) with xi of rank 3: sum_i (t_i - a + h)^2; in power
    // sums this is 3(a-h... checked through its reduced t-blocks
    SegmentClass xi;
    xi.prim = {1};
    xi.rank = 3;
    std::vector<int> gap_rank{3};
    auto xs = segment_sums(xi, gap_rank);
    SegmentSums ca = line_sums({1, 0});
    QForm q3;
    add_hom_square(q3, LinForm::h(1), ca, xs, 1);
    // expanded by hand: sum (h + a - t_i)^2 = s2 - 2(a+h) s1 + 3(a+h)^2
    QForm expect3;
    expect3.add_s2(1, 1);
    expect3.add_product(LinForm::s1(1), LinForm::a(1) + LinForm::h(1), -2);
    REQUIRE(q3.reduced_mod_base() == expect3.reduced_mod_base());

    // additivity of q_of_class over blocks is linear by construction; the
    // reduction is an idempotent projector
    REQUIRE(q3.reduced_mod_base().reduced_mod_base() == q3.reduced_mod_base());
}

TEST_CASE("tpn line bundle forms") {
    for (int n = 2; n <= 5; ++n) {
        auto D = tpn_diagram(n, Separation::Separated);
        auto dict = separated_dictionary(D);
        QForm got = (q_of_alpha(D, dict) + qu_form(D, dict)).reduced_mod_base();

        // required: sum_i (t - a_i + h)^2 + 2t(z1 - z2 - h), modulo base
        QForm want;
        LinForm t = LinForm::s1(1);
        for (int i = 1; i <= n; ++i) want.add_square(t - LinForm::a(i) + LinForm::h(1));
        want.add_product(t, LinForm::z(1) - LinForm::z(2) - LinForm::h(1), 2);
        REQUIRE(got == want.reduced_mod_base());
    }

    // single NS5 brane: QU is the empty sum
    auto point = parse_diagram("/3\\2\\1\\");
    auto dict = separated_dictionary(point);
    REQUIRE(qu_form(point, dict).is_zero());
}

TEST_CASE("hw invariance of the quadratic form") {
    // T*P^1 move checked by hand
    auto D = parse_diagram("/1/2\\1\\");
    auto rep = hw_invariance_check(D, 1);
    REQUIRE(rep.pass);

    // identity round trip: moving there and back changes nothing
    auto E = hw_move(D, 1);
    REQUIRE(hw_invariance_check(E, 1).pass);

    // random diagram/move pairs
    std::mt19937_64 rng(57);
    int checked = 0;
    while (checked < 120) {
        auto R = random_feasible_diagram(rng);
        for (int i = 0; i + 1 < R.num_branes() && checked < 120; ++i) {
            if (!hw_move_applicable(R, i)) continue;
            int d1 = R.d3()[i], d2 = R.d3()[i + 1], d3 = R.d3()[i + 2];
            if (d1 + d3 - d2 + 1 < 0) continue;
            auto r = hw_invariance_check(R, i);
            if (!r.pass) {
                UNSCOPED_INFO("diagram " << format_diagram(R) << " site " << i);
                UNSCOPED_INFO("delta " << r.delta.to_string());
                UNSCOPED_INFO("delta_alpha " << r.delta_alpha.to_string());
                UNSCOPED_INFO("delta_qu " << r.delta_qu.to_string());
            }
            REQUIRE(r.pass);
            ++checked;
        }
    }

    // eta-choice independence: QU computed with any bundle in the gap agrees
    // after reduction (exercised implicitly by invariance along chains moving
    // D5 branes through gaps; spot-check a three-segment gap directly)
    auto W = parse_diagram("/2\\2\\2/1/");
    auto dictW = separated_dictionary(W);
    // gap 1 of W holds segments 1, 2, 3; compare leftmost against the others
    ChargeVector chW = charges(W);
    int ell_z2 = 2;
    LinForm zpart = LinForm::z(1) - LinForm::z(2) + LinForm::h(ell_z2 - chW.r[0]);
    QForm q1, q2, q3;
    q1.add_product(segment_sums(dictW.segments[1], dictW.gap_rank).p1, zpart, 2);
    q2.add_product(segment_sums(dictW.segments[2], dictW.gap_rank).p1, zpart, 2);
    q3.add_product(segment_sums(dictW.segments[3], dictW.gap_rank).p1, zpart, 2);
    REQUIRE(q1.reduced_mod_base() == q2.reduced_mod_base());
    REQUIRE(q2.reduced_mod_base() == q3.reduced_mod_base());
}

TEST_CASE("section membership") {
    // Prop formulas against the printed required forms, separated form
    for (int n = 2; n <= 4; ++n) {
        for (int k = 1; k <= n; ++k) {
            // formula quadratic form
            ThetaProduct stab;
            Monomial t = Monomial::t_pow();
            for (int i = 1; i < k; ++i)
                stab.num.push_back(Monomial::a_var(i) * t.inverse());
            stab.num.push_back(t * Monomial::a_var(k, -1) * Monomial::z_var(1) *
                               Monomial::z_var(2, -1) * Monomial::h_pow(k - 1));
            stab.den.push_back(Monomial::z_var(1) * Monomial::z_var(2, -1) *
                               Monomial::h_pow(k - 2));
            for (int i = k + 1; i <= n; ++i)
                stab.num.push_back(t * Monomial::a_var(i, -1) * Monomial::h_pow(1));

            // required: the printed form for Stab(f_k)
            QForm req;
            LinForm T = LinForm::s1(1);
            for (int i = 1; i <= n; ++i) req.add_square(T - LinForm::a(i) + LinForm::h(1));
            for (int i = 1; i <= n; ++i) req.add_square(LinForm::a(k) - LinForm::a(i), -1);
            req.add_product(T - LinForm::a(k) + LinForm::h(1),
                            LinForm::z(1) - LinForm::z(2) - LinForm::h(1), 2);
            for (int i = 1; i < k; ++i)
                req.add_square(LinForm::a(i) - LinForm::a(k) + LinForm::h(1));
            for (int i = k + 1; i <= n; ++i) req.add_square(LinForm::a(k) - LinForm::a(i));

            auto rep = section_check(stab, req);
            REQUIRE(rep.pass);
            REQUIRE(rep.t_square_got == n);

            // co-separated formula against the Lazio form
            ThetaProduct stabc;
            for (int i = 1; i < k; ++i)
                stabc.num.push_back(Monomial::a_var(i) * t.inverse() * Monomial::h_pow(2));
            stabc.num.push_back(t * Monomial::a_var(k, -1) * Monomial::z_var(1) *
                                Monomial::z_var(2, -1) * Monomial::h_pow(k - 3));
            stabc.den.push_back(Monomial::z_var(1) * Monomial::z_var(2, -1) *
                                Monomial::h_pow(k - 2));
            for (int i = k + 1; i <= n; ++i)
                stabc.num.push_back(t * Monomial::a_var(i, -1) * Monomial::h_pow(-1));

            QForm reqc;
            for (int i = 1; i <= n; ++i)
                reqc.add_square(LinForm::a(i) - T + LinForm::h(2));
            for (int i = 1; i <= n; ++i)
                reqc.add_square(LinForm::a(i) - LinForm::a(k) + LinForm::h(1), -1);
            reqc.add_product(T - LinForm::a(k) - LinForm::h(1),
                             LinForm::z(1) - LinForm::z(2) + LinForm::h(n - 1), 2);
            for (int i = 1; i < k; ++i)
                reqc.add_square(LinForm::a(i) - LinForm::a(k) + LinForm::h(1));
            for (int i = k + 1; i <= n; ++i) reqc.add_square(LinForm::a(k) - LinForm::a(i));

            auto repc = section_check(stabc, reqc);
            REQUIRE(repc.pass);
        }
    }

    // mismatch by construction: theta(t/a) against (t - a + h)^2
    ThetaProduct bad;
    bad.num.push_back(Monomial::t_pow() * Monomial::a_var(1, -1));
    QForm reqbad;
    reqbad.add_square(LinForm::s1(1) - LinForm::a(1) + LinForm::h(1));
    REQUIRE_FALSE(section_check(bad, reqbad).pass);

    // sums are rejected
    auto sum_expr = ThetaExpr::sum({{cplx{1.0, 0.0}, ThetaExpr::theta_of(Monomial::h_pow(1))}});
    REQUIRE_THROWS_AS(section_check(sum_expr, reqbad), error);
}

TEST_CASE("corollary delta for the k-class change") {
    // the reported intermediate deltas vanish on a batch of moves, i.e.
    // Q(alpha) changes by -2 h s1(xi_1) and QU by +2 h s1(xi_1)
    std::mt19937_64 rng(77);
    int checked = 0;
    while (checked < 40) {
        auto R = random_feasible_diagram(rng, 7, 2);
        for (int i = 0; i + 1 < R.num_branes() && checked < 40; ++i) {
            if (!hw_move_applicable(R, i)) continue;
            int d1 = R.d3()[i], d2 = R.d3()[i + 1], d3 = R.d3()[i + 2];
            if (d1 + d3 - d2 + 1 < 0) continue;
            auto r = hw_invariance_check(R, i);
            REQUIRE(r.delta_alpha.is_zero());
            REQUIRE(r.delta_qu.is_zero());
            ++checked;
        }
    }
}
