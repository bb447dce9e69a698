#pragma once

// Formal K-theory classes of tautological bundles on a brane diagram, their
// rewriting under Hanany-Witten transition, and the expression of every
// segment bundle in the basis attached to the separated representative
// (gap bundles stay formal; bundles right of the last NS5 brane are
// topologically trivial and carry explicit a/hbar weights).

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "bowlab/diagram.hpp"

namespace bowlab {

// ---------------------------------------------------------------------------
// KClassExpr: integer combination of segment symbols xi_s (s = segment index,
// 0-based, segment s sits left of brane s) and D5 line symbols C_A (A = 1-based
// D5 ordinal), each carrying an integer hbar power.

struct KClassExpr {
    enum class Kind : int { Segment = 0, D5Line = 1 };

    // (kind, index, h power) -> coefficient
    std::map<std::tuple<int, int, int>, int> terms;

    static KClassExpr segment(int s, int h = 0, int coeff = 1) {
        KClassExpr e;
        e.add(Kind::Segment, s, h, coeff);
        return e;
    }
    static KClassExpr d5_line(int a, int h = 0, int coeff = 1) {
        KClassExpr e;
        e.add(Kind::D5Line, a, h, coeff);
        return e;
    }

    void add(Kind k, int index, int h, int coeff) {
        auto key = std::make_tuple(static_cast<int>(k), index, h);
        auto it = terms.find(key);
        if (it == terms.end()) {
            if (coeff != 0) terms.emplace(key, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }

    KClassExpr& operator+=(const KClassExpr& o) {
        for (const auto& [key, c] : o.terms)
            add(static_cast<Kind>(std::get<0>(key)), std::get<1>(key), std::get<2>(key), c);
        return *this;
    }
    KClassExpr& operator-=(const KClassExpr& o) {
        for (const auto& [key, c] : o.terms)
            add(static_cast<Kind>(std::get<0>(key)), std::get<1>(key), std::get<2>(key), -c);
        return *this;
    }
    friend KClassExpr operator+(KClassExpr a, const KClassExpr& b) { return a += b; }
    friend KClassExpr operator-(KClassExpr a, const KClassExpr& b) { return a -= b; }

    bool operator==(const KClassExpr&) const = default;
};

// Rewrites the transformed diagram's tautological symbols in terms of the
// original ones, for the HW move of `D` at `site`.  At a /d\ site the middle
// segment maps to xi_L + xi_R - xi_mid + C_A and C_A maps to C_A hbar^{-1};
// at a \d/ site the hbar powers on C_A are +1 instead.  The transport of a
// move followed by the transport of its inverse is the identity.
inline KClassExpr hw_transport_kclass(const KClassExpr& expr, const BraneDiagram& D, int site) {
    if (!hw_move_applicable(D, site))
        throw error("hw_transport_kclass: no HW move at this site");
    bool forward = D.branes()[site] == Brane::NS5;  // pattern /d\ .
    int mid = site + 1;
    int d5_pos = forward ? site + 1 : site;
    int A = D.ordinal(d5_pos);
    int c_shift = forward ? -1 : +1;

    KClassExpr out;
    for (const auto& [key, coeff] : expr.terms) {
        auto kind = static_cast<KClassExpr::Kind>(std::get<0>(key));
        int index = std::get<1>(key), h = std::get<2>(key);
        if (kind == KClassExpr::Kind::Segment && index == mid) {
            out.add(KClassExpr::Kind::Segment, site, h, coeff);
            out.add(KClassExpr::Kind::Segment, site + 2, h, coeff);
            out.add(KClassExpr::Kind::Segment, mid, h, -coeff);
            out.add(KClassExpr::Kind::D5Line, A, h + (forward ? 0 : 1), coeff);
        } else if (kind == KClassExpr::Kind::D5Line && index == A) {
            out.add(kind, index, h + c_shift, coeff);
        } else {
            out.add(kind, index, h, coeff);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Separated-basis dictionary.

// A trivial line with additive weight a_{d5} + h*hbar.
using WeightLine = std::pair<int, int>;  // (d5 ordinal, hbar power)

struct SegmentClass {
    // Coefficient of the k-th gap primitive of the separated representative
    // (gap k = the bundle between its NS5 branes k and k+1), k = 1..m-1,
    // stored at prim[k-1].
    std::vector<int> prim;
    std::map<WeightLine, int> lines;  // explicit trivial lines, with multiplicity
    int rank = 0;

    void add_line(int d5, int h, int mult) {
        auto key = std::make_pair(d5, h);
        auto it = lines.find(key);
        if (it == lines.end()) {
            if (mult != 0) lines.emplace(key, mult);
        } else {
            it->second += mult;
            if (it->second == 0) lines.erase(it);
        }
    }
    SegmentClass& operator+=(const SegmentClass& o) {
        if (prim.size() < o.prim.size()) prim.resize(o.prim.size(), 0);
        for (std::size_t i = 0; i < o.prim.size(); ++i) prim[i] += o.prim[i];
        for (const auto& [w, mlt] : o.lines) add_line(w.first, w.second, mlt);
        rank += o.rank;
        return *this;
    }
    SegmentClass& operator-=(const SegmentClass& o) {
        if (prim.size() < o.prim.size()) prim.resize(o.prim.size(), 0);
        for (std::size_t i = 0; i < o.prim.size(); ++i) prim[i] -= o.prim[i];
        for (const auto& [w, mlt] : o.lines) add_line(w.first, w.second, -mlt);
        rank -= o.rank;
        return *this;
    }
};

struct SeparatedDictionary {
    BraneDiagram diagram;    // diagram the dictionary is for
    BraneDiagram separated;  // its separated representative
    std::vector<int> gap_rank;           // rank of gap primitive k at [k-1]
    std::vector<SegmentClass> segments;  // per segment of `diagram`
    std::vector<WeightLine> d5_lines;    // C_A class per D5 ordinal (1-based at [A-1])
    // Formal classes of rank-0 segments met along the chain.  Each is a
    // relation (class = 0 on the variety) among the gap primitives.
    std::vector<SegmentClass> relations;
};

// Expresses every segment bundle and D5 line of D in the separated basis by
// replaying the normalization chain backwards from the separated diagram.
inline SeparatedDictionary separated_dictionary(const BraneDiagram& D) {
    std::vector<int> trace;
    BraneDiagram sep = normalize(D, Separation::Separated, &trace);
    int m = sep.num_ns5(), n = sep.num_d5();
    ChargeVector ch = charges(sep);

    SeparatedDictionary dict;
    dict.diagram = sep;
    dict.separated = sep;
    dict.gap_rank.assign(std::max(m - 1, 0), 0);
    for (int k = 1; k <= m - 1; ++k) dict.gap_rank[k - 1] = sep.d3()[k];

    int num_segments = sep.num_branes() + 1;
    dict.segments.assign(num_segments, {});
    for (int k = 1; k <= m - 1; ++k) {
        SegmentClass& sc = dict.segments[k];
        sc.prim.assign(std::max(m - 1, 0), 0);
        sc.prim[k - 1] = 1;
        sc.rank = sep.d3()[k];
    }
    // Tail bundles zeta_0 .. zeta_n (segments m .. m+n) are trivial with
    // explicit weights: zeta_{j-1} = zeta_j + {a_j hbar^{-i} : i < ch(A_j)}.
    for (int j = n; j >= 1; --j) {
        int seg = m + j - 1;
        SegmentClass sc = dict.segments[seg + 1];  // zeta_j (empty for j = n)
        for (int i = 0; i < ch.c[j - 1]; ++i) sc.add_line(j, -i, 1);
        sc.rank = sep.d3()[seg];
        dict.segments[seg] = std::move(sc);
    }
    dict.d5_lines.assign(n, WeightLine{0, 0});
    for (int j = 1; j <= n; ++j) dict.d5_lines[j - 1] = {j, 0};

    // Replay the chain backwards: each normalize step was a \d/ move, so its
    // inverse is the forward move /d\ at the same site.
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
        int site = *it;
        const BraneDiagram& E = dict.diagram;
        // In E the pattern at `site` is /d\ and the forward move returns
        // toward D.  New middle = xi_L + xi_R - xi_mid + C_A, C_A -> C_A h^-1.
        int A = E.ordinal(site + 1);
        SegmentClass mid = dict.segments[site];
        mid += dict.segments[site + 2];
        mid -= dict.segments[site + 1];
        WeightLine ca = dict.d5_lines[A - 1];
        mid.add_line(ca.first, ca.second, 1);
        mid.rank += 1;
        // a multiplicity-0 segment carries the zero bundle, so its class is
        // the zero class; the formal combination is a relation, not a value
        if (mid.rank == 0) {
            bool trivial = mid.lines.empty();
            for (int v : mid.prim) trivial &= (v == 0);
            if (!trivial) dict.relations.push_back(mid);
            mid = SegmentClass{};
        }
        dict.segments[site + 1] = std::move(mid);
        dict.d5_lines[A - 1].second -= 1;
        dict.diagram = hw_move(E, site);
    }
    if (!(dict.diagram == D))
        throw error("separated_dictionary: replay did not reproduce the diagram");
    return dict;
}

}  // namespace bowlab
