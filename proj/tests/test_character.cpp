#include <catch2/catch_amalgamated.hpp>

#include "bowlab/character.hpp"

using namespace bowlab;

namespace {
Monomial am(int i, int e = 1) { return Monomial::a_var(i, e); }
Monomial hm(int e = 1) { return Monomial::h_pow(e); }
}  // namespace

TEST_CASE("monomial and character basics") {
    auto x = am(1) * am(2, -1) * hm(1);
    REQUIRE(x.inverse() * x == Monomial::unit());
    REQUIRE(x.pow(3).a == std::vector<int>{3, -3});

    Character c;
    c.add(x, 2);
    c.add(x.inverse(), -1);
    REQUIRE(c.rank() == 1);
    REQUIRE(c.dual().dual() == c);

    Character d;
    d.add(am(3));
    REQUIRE((c + d).rank() == c.rank() + d.rank());
    REQUIRE((c + d) - d == c);
}

TEST_CASE("tpn restrictions") {
    REQUIRE(restrict_tpn(3, 2, Separation::Separated) == am(2) * hm(-1));
    REQUIRE(restrict_tpn(3, 2, Separation::CoSeparated) == am(2) * hm(1));
    REQUIRE(restrict_tpn(1, 1, Separation::Separated) == am(1) * hm(-1));
    REQUIRE(restrict_tpn(1, 1, Separation::CoSeparated) == am(1) * hm(1));
    REQUIRE_THROWS_AS(restrict_tpn(3, 4, Separation::Separated), error);
}

TEST_CASE("negative normal character") {
    Character n21 = negative_normal_tpn(2, 1);
    REQUIRE(n21.rank() == 1);
    REQUIRE(n21.multiplicity(am(1) * am(2, -1)) == 1);

    Character n22 = negative_normal_tpn(2, 2);
    REQUIRE(n22.multiplicity(am(1) * am(2, -1) * hm(1)) == 1);

    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n; ++k) REQUIRE(negative_normal_tpn(n, k).rank() == n - 1);
}

TEST_CASE("tangent character") {
    Character t21 = tangent_tpn(2, 1);
    REQUIRE(t21.multiplicity(am(1) * am(2, -1)) == 1);
    REQUIRE(t21.multiplicity(am(2) * am(1, -1) * hm(1)) == 1);
    REQUIRE(t21.rank() == 2);

    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= n; ++k) {
            Character tx = tangent_tpn(n, k);
            REQUIRE(tx.rank() == 2 * (n - 1));
            // no a-trivial monomials (isolated fixed points)
            for (const auto& [m, mult] : tx.terms()) {
                bool atriv = true;
                for (int e : m.a) atriv &= (e == 0);
                REQUIRE_FALSE(atriv);
            }
            // symplectic pairing TX = S + h S^dual with S the h-free part
            Character base;
            for (const auto& [m, mult] : tx.terms())
                if (m.h == 0) base.add(m, mult);
            REQUIRE(base + base.dual().scaled(Monomial::h_pow(1)) == tx);
            // chamber split of TX reproduces N^< in the standard chamber
            auto split = chamber_split(tx, standard_chamber(n));
            REQUIRE(split.negative == negative_normal_tpn(n, k));
            REQUIRE(split.zero.empty());
            // h (N^-)^dual = N^+ under the symplectic pairing
            REQUIRE(split.negative.dual().scaled(Monomial::h_pow(1)) == split.positive);
        }
}

TEST_CASE("chamber split conventions") {
    Character c;
    c.add(am(1) * am(2, -1));  // a1/a2
    auto s = chamber_split(c, standard_chamber(2));
    REQUIRE(s.negative == c);
    REQUIRE(s.positive.empty());

    Character honly;
    honly.add(hm(3));
    auto s2 = chamber_split(honly, standard_chamber(2));
    REQUIRE(s2.zero == honly);

    // the N^< table entry for tangent_tpn(3,2) under a1<a2<a3
    auto s3 = chamber_split(tangent_tpn(3, 2), standard_chamber(3));
    Character expect;
    expect.add(am(1) * am(2, -1) * hm(1));
    expect.add(am(2) * am(3, -1));
    REQUIRE(s3.negative == expect);
}

TEST_CASE("alpha class") {
    auto D = parse_diagram("/1/2\\1\\");
    auto a = alpha_class(D);
    REQUIRE(alpha_rank(a) == 1);

    // separated T*P^{n-1}: alpha = sum_i (t/a_i) h modulo base classes
    for (int n = 2; n <= 4; ++n) {
        ChargeVector ch;
        ch.r = {1, n - 1};
        for (int j = 0; j < n; ++j) ch.c.push_back(1);
        auto Dn = diagram_from_charges(ch, Separation::Separated);
        auto an = alpha_class(Dn);
        auto chi = alpha_character(an, segment_restrictions_tpn(n, Separation::Separated));
        Character expect;
        for (int i = 1; i <= n; ++i) expect.add(Monomial::t_pow() * am(i, -1) * hm(1));
        Character residue = chi - expect;
        for (const auto& [m, mult] : residue.terms()) REQUIRE(m.t == 0);

        // co-separated: alpha' = sum_i (a_i/t) h^2 modulo base classes
        auto Dc = diagram_from_charges(ch, Separation::CoSeparated);
        auto ac = alpha_class(Dc);
        auto chic = alpha_character(ac, segment_restrictions_tpn(n, Separation::CoSeparated));
        Character expectc;
        for (int i = 1; i <= n; ++i) expectc.add(Monomial::t_pow(-1) * am(i) * hm(2));
        Character residuec = chic - expectc;
        for (const auto& [m, mult] : residuec.terms()) REQUIRE(m.t == 0);
    }
}

TEST_CASE("worked example restriction table") {
    auto table = example_restriction_table();
    REQUIRE(table.size() == 10);

    Character t4;
    t4.add(am(1));
    t4.add(am(2));
    t4.add(am(2) * hm(1));
    t4.add(am(2) * hm(2));
    REQUIRE(table[3] == t4);

    Character t9;
    t9.add(am(5));
    t9.add(am(5) * hm(-1));
    REQUIRE(table[8] == t9);

    // multiset sizes match the printed multiplicities
    auto D = parse_diagram("/2\\2/2\\4/3/3/4\\3/2\\2\\");
    for (int s = 1; s <= 10; ++s) REQUIRE(table[s - 1].rank() == D.d3()[s]);
}

TEST_CASE("right bundles are fixed-point independent for separated tpn") {
    // the tail multisets returned by segment_restrictions_tpn carry no t and
    // have the ranks of the separated diagram
    for (int n = 2; n <= 5; ++n) {
        auto segs = segment_restrictions_tpn(n, Separation::Separated);
        ChargeVector ch;
        ch.r = {1, n - 1};
        for (int j = 0; j < n; ++j) ch.c.push_back(1);
        auto Dn = diagram_from_charges(ch, Separation::Separated);
        for (std::size_t s = 0; s < segs.size(); ++s) {
            REQUIRE(segs[s].rank() == Dn.d3()[s]);
            if (s != 1)
                for (const auto& [m, mult] : segs[s].terms()) REQUIRE(m.t == 0);
        }
    }
}
