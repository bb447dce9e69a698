#pragma once

// Integer quadratic-form calculus for the line bundles of stable envelopes:
// Q(alpha), the dynamical form QU, reduction modulo base forms, and the
// Hanany-Witten invariance check.
//
// Forms live in the first and second power sums of the Chern roots of the
// separated representative's gap bundles (written s1[k], s2[k]; for a rank-one
// gap s1[1] is the familiar t), plus the base variables a_j, z_k, hbar.
// Bundles right of the last NS5 brane are trivial with explicit weights, so
// expressing everything in this basis makes HW invariance an exact polynomial
// identity.

#include <map>
#include <string>
#include <vector>

#include "bowlab/character.hpp"
#include "bowlab/kclass.hpp"
#include "bowlab/theta.hpp"

namespace bowlab {

struct QAtom {
    enum Type : int { H = 0, A = 1, Z = 2, S1 = 3, S2 = 4 };
    int type;
    int idx;  // 1-based slot (0 for H)

    auto operator<=>(const QAtom&) const = default;

    std::string name() const {
        switch (type) {
            case H: return "h";
            case A: return "a" + std::to_string(idx);
            case Z: return "z" + std::to_string(idx);
            case S1: return "s1[" + std::to_string(idx) + "]";
            case S2: return "s2[" + std::to_string(idx) + "]";
        }
        return "?";
    }
    bool is_base() const { return type == H || type == A || type == Z; }
};

// Linear form in the degree-one atoms (h, a_j, z_k, s1[k]).
struct LinForm {
    std::map<QAtom, long long> c;

    static LinForm h(long long k = 1) { return single({QAtom::H, 0}, k); }
    static LinForm a(int j, long long k = 1) { return single({QAtom::A, j}, k); }
    static LinForm z(int j, long long k = 1) { return single({QAtom::Z, j}, k); }
    static LinForm s1(int k, long long v = 1) { return single({QAtom::S1, k}, v); }
    static LinForm single(QAtom at, long long v) {
        LinForm f;
        if (v != 0) f.c[at] = v;
        return f;
    }

    LinForm& operator+=(const LinForm& o) {
        for (const auto& [at, v] : o.c) add(at, v);
        return *this;
    }
    LinForm& operator-=(const LinForm& o) {
        for (const auto& [at, v] : o.c) add(at, -v);
        return *this;
    }
    friend LinForm operator+(LinForm x, const LinForm& y) { return x += y; }
    friend LinForm operator-(LinForm x, const LinForm& y) { return x -= y; }
    LinForm scaled(long long k) const {
        LinForm f;
        for (const auto& [at, v] : c)
            if (v * k != 0) f.c[at] = v * k;
        return f;
    }
    void add(QAtom at, long long v) {
        auto it = c.find(at);
        if (it == c.end()) {
            if (v != 0) c.emplace(at, v);
        } else {
            it->second += v;
            if (it->second == 0) c.erase(it);
        }
    }
    bool operator==(const LinForm&) const = default;
};

// Monomial exponents read additively: a h^{-1} becomes a - h.  The t slot is
// the rank-one first gap bundle, s1[1].
inline LinForm linform_of(const Monomial& m) {
    LinForm f;
    if (m.t != 0) f.add({QAtom::S1, 1}, m.t);
    for (std::size_t i = 0; i < m.a.size(); ++i)
        if (m.a[i]) f.add({QAtom::A, static_cast<int>(i) + 1}, m.a[i]);
    for (std::size_t i = 0; i < m.z.size(); ++i)
        if (m.z[i]) f.add({QAtom::Z, static_cast<int>(i) + 1}, m.z[i]);
    if (m.h != 0) f.add({QAtom::H, 0}, m.h);
    return f;
}

class QForm {
public:
    static QForm zero() { return {}; }

    // adds scale * x * y
    void add_product(const LinForm& x, const LinForm& y, long long scale = 1) {
        for (const auto& [ax, vx] : x.c)
            for (const auto& [ay, vy] : y.c) add_key(ax, ay, scale * vx * vy);
    }
    void add_square(const LinForm& x, long long scale = 1) { add_product(x, x, scale); }
    void add_s2(int k, long long scale) {
        if (scale != 0) add_key({QAtom::S2, k}, {QAtom::S2, k}, scale);
    }

    QForm& operator+=(const QForm& o) {
        for (const auto& [key, v] : o.coeffs_) add_raw(key, v);
        return *this;
    }
    QForm& operator-=(const QForm& o) {
        for (const auto& [key, v] : o.coeffs_) add_raw(key, -v);
        return *this;
    }
    friend QForm operator+(QForm x, const QForm& y) { return x += y; }
    friend QForm operator-(QForm x, const QForm& y) { return x -= y; }

    bool is_zero() const { return coeffs_.empty(); }
    bool operator==(const QForm&) const = default;

    QForm scaled(long long k) const {
        QForm out;
        for (const auto& [key, v] : coeffs_) out.add_raw(key, v * k);
        return out;
    }

    // keep only monomials touching a Chern-root atom (s1 or s2)
    QForm reduced_mod_base() const {
        QForm out;
        for (const auto& [key, v] : coeffs_)
            if (!key.first.is_base() || !key.second.is_base()) out.add_raw(key, v);
        return out;
    }

    // replace the degree-one atom by a linear form
    QForm substituted_s1(QAtom at, const LinForm& image) const {
        QForm out;
        for (const auto& [key, v] : coeffs_) {
            auto [x, y] = key;
            if (x.type == QAtom::S2) {  // standalone s2, untouched here
                out.add_raw(key, v);
                continue;
            }
            LinForm fx = (x == at) ? image : LinForm::single(x, 1);
            LinForm fy = (y == at) ? image : LinForm::single(y, 1);
            out.add_product(fx, fy, v);
        }
        return out;
    }

    // replace the standalone second power sum s2[k] by a quadratic form
    QForm substituted_s2(int k, const QForm& image) const {
        QForm out;
        for (const auto& [key, v] : coeffs_) {
            if (key.first.type == QAtom::S2 && key.first.idx == k)
                out += image.scaled(v);
            else
                out.add_raw(key, v);
        }
        return out;
    }

    const std::map<std::pair<QAtom, QAtom>, long long>& coeffs() const { return coeffs_; }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (const auto& [key, v] : coeffs_) {
            if (!s.empty()) s += " ";
            s += (v >= 0 ? "+" : "-") + std::to_string(v >= 0 ? v : -v) + "*";
            if (key.first.type == QAtom::S2)
                s += key.first.name();
            else
                s += key.first.name() + "*" + key.second.name();
        }
        return s;
    }

private:
    // (S2,k),(S2,k) encodes the standalone second power sum
    std::map<std::pair<QAtom, QAtom>, long long> coeffs_;

    void add_key(QAtom x, QAtom y, long long v) {
        if (y < x) std::swap(x, y);
        add_raw({x, y}, v);
    }
    void add_raw(const std::pair<QAtom, QAtom>& key, long long v) {
        if (v == 0) return;
        auto it = coeffs_.find(key);
        if (it == coeffs_.end())
            coeffs_.emplace(key, v);
        else {
            it->second += v;
            if (it->second == 0) coeffs_.erase(it);
        }
    }
};

// ---------------------------------------------------------------------------
// Power sums of a SegmentClass in the separated basis.  Ranks of the gap
// primitives decide whether s2[k] collapses to s1[k]^2.

struct SegmentSums {
    long long rank = 0;
    LinForm p1;
    QForm p2;
};

inline SegmentSums segment_sums(const SegmentClass& sc, const std::vector<int>& gap_rank) {
    SegmentSums out;
    out.rank = sc.rank;
    for (std::size_t k = 0; k < sc.prim.size(); ++k) {
        if (sc.prim[k] == 0) continue;
        int gap = static_cast<int>(k) + 1;
        if (gap_rank[k] == 0) continue;
        out.p1 += LinForm::s1(gap).scaled(sc.prim[k]);
        if (gap_rank[k] == 1)
            out.p2.add_product(LinForm::s1(gap), LinForm::s1(gap), sc.prim[k]);
        else
            out.p2.add_s2(gap, sc.prim[k]);
    }
    for (const auto& [w, mult] : sc.lines) {
        LinForm line = LinForm::a(w.first) + LinForm::h(w.second);
        out.p1 += line.scaled(mult);
        out.p2.add_square(line, mult);
    }
    return out;
}

inline SegmentSums line_sums(const WeightLine& w) {
    SegmentSums out;
    out.rank = 1;
    out.p1 = LinForm::a(w.first) + LinForm::h(w.second);
    out.p2.add_square(out.p1);
    return out;
}

// sum over root pairs of scale * (c + v - w)^2, v running over the roots of
// V and w over the roots of W
inline void add_hom_square(QForm& q, const LinForm& c, const SegmentSums& V, const SegmentSums& W,
                           long long scale) {
    q.add_product(c, c, scale * V.rank * W.rank);
    q.add_product(c, V.p1, 2 * scale * W.rank);
    q.add_product(c, W.p1, -2 * scale * V.rank);
    q += V.p2.scaled(scale * W.rank);
    q += W.p2.scaled(scale * V.rank);
    q.add_product(V.p1, W.p1, -2 * scale);
}

// ---------------------------------------------------------------------------
// Q(alpha): the squared first Chern classes of the alpha-class Hom blocks,
// with roots provided by the separated-basis dictionary.

inline QForm q_of_class(const AlphaClass& cls, const SeparatedDictionary& dict) {
    std::vector<SegmentSums> seg;
    seg.reserve(dict.segments.size());
    for (const auto& sc : dict.segments) seg.push_back(segment_sums(sc, dict.gap_rank));
    QForm q;
    LinForm h = LinForm::h(1);
    for (const HomBlock& b : cls.blocks) {
        SegmentSums src = b.src_is_line ? line_sums(dict.d5_lines[b.src - 1]) : seg[b.src];
        add_hom_square(q, h, src, seg[b.tgt], b.sign);
    }
    return q;
}

inline QForm q_of_alpha(const BraneDiagram& D, const SeparatedDictionary& dict) {
    return q_of_class(alpha_class(D), dict);
}

// ---------------------------------------------------------------------------
// The dynamical form QU = 2 sum_k s1(eta_k) (z_k - z_{k+1} +
// (l(Z_{k+1}) - ch(Z_k)) h), with eta_k the leftmost bundle in gap k.

inline QForm qu_form(const BraneDiagram& D, const SeparatedDictionary& dict) {
    QForm q;
    int m = D.num_ns5();
    if (m < 2) return q;
    ChargeVector ch = charges(D);
    // number of D5 branes left of each NS5 brane
    std::vector<int> ell(m, 0);
    {
        int d5 = 0, k = 0;
        for (int i = 0; i < D.num_branes(); ++i) {
            if (D.branes()[i] == Brane::NS5)
                ell[k++] = d5;
            else
                ++d5;
        }
    }
    for (int k = 1; k <= m - 1; ++k) {
        int seg = D.position_of(Brane::NS5, k) + 1;  // leftmost segment in gap k
        SegmentSums eta = segment_sums(dict.segments[seg], dict.gap_rank);
        LinForm zpart = LinForm::z(k) - LinForm::z(k + 1) + LinForm::h(ell[k] - ch.r[k - 1]);
        q.add_product(eta.p1, zpart, 2);
    }
    return q;
}

inline QForm line_bundle_qform(const BraneDiagram& D) {
    auto dict = separated_dictionary(D);
    return q_of_alpha(D, dict) + qu_form(D, dict);
}

// ---------------------------------------------------------------------------
// Degenerate diagrams impose relations among the gap primitives (a rank-0
// segment's formal class vanishes on the variety).  Reduce a form modulo the
// linear (s1-level) and quadratic (s2-level) parts of such relations.

inline QForm reduce_mod_relations(QForm q, std::vector<SegmentSums> rels) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < rels.size(); ++i) {
            // linear pivot: an s1 atom with unit coefficient
            for (const auto& [at_ref, v_ref] : rels[i].p1.c) {
                if (at_ref.type != QAtom::S1 || (v_ref != 1 && v_ref != -1)) continue;
                QAtom at = at_ref;  // copy before the relations are rewritten
                long long v = v_ref;
                LinForm image = (rels[i].p1 - LinForm::single(at, v)).scaled(-v);
                q = q.substituted_s1(at, image);
                for (auto& r : rels) {
                    QForm p2new = r.p2.substituted_s1(at, image);
                    LinForm p1new;
                    for (const auto& [a2, v2] : r.p1.c) {
                        if (a2 == at)
                            p1new += image.scaled(v2);
                        else
                            p1new.add(a2, v2);
                    }
                    r.p1 = p1new;
                    r.p2 = std::move(p2new);
                }
                progress = true;
                break;
            }
            if (progress) break;
            // quadratic pivot: a standalone s2[k] with unit coefficient
            for (const auto& [key_ref, v_ref] : rels[i].p2.coeffs()) {
                if (key_ref.first.type != QAtom::S2 || (v_ref != 1 && v_ref != -1)) continue;
                int k = key_ref.first.idx;  // copy before the relations are rewritten
                long long v = v_ref;
                // substitute s2[k] by -1/v times the rest of the relation
                QForm rest;
                for (const auto& [key2, v2] : rels[i].p2.coeffs())
                    if (!(key2.first.type == QAtom::S2 && key2.first.idx == k)) {
                        QForm tmp;
                        if (key2.first.type == QAtom::S2)
                            tmp.add_s2(key2.first.idx, v2);
                        else
                            tmp.add_product(LinForm::single(key2.first, 1),
                                            LinForm::single(key2.second, 1), v2);
                        rest += tmp;
                    }
                QForm image = rest.scaled(-v);
                q = q.substituted_s2(k, image);
                for (auto& r : rels) r.p2 = r.p2.substituted_s2(k, image);
                progress = true;
                break;
            }
            if (progress) break;
        }
    }
    return q;
}

// ---------------------------------------------------------------------------
// Hanany-Witten invariance of Q(alpha) + QU up to base forms; the report also
// carries the two intermediate deltas, which must be -/+ 2 h s1(xi_left).

struct HwInvarianceReport {
    bool pass = false;
    QForm delta;        // reduced difference of the full forms
    QForm delta_alpha;  // reduced Q(alpha) difference minus its predicted value
    QForm delta_qu;     // reduced QU difference minus its predicted value
};

inline HwInvarianceReport hw_invariance_check(const BraneDiagram& D, int site) {
    BraneDiagram E = hw_move(D, site);
    auto dictD = separated_dictionary(D);
    auto dictE = separated_dictionary(E);
    if (!(dictD.separated == dictE.separated))
        throw error("hw_invariance_check: separated representatives differ");

    QForm qaD = q_of_alpha(D, dictD), qaE = q_of_alpha(E, dictE);
    QForm quD = qu_form(D, dictD), quE = qu_form(E, dictE);

    std::vector<SegmentSums> rels;
    for (const auto& sc : dictD.relations) rels.push_back(segment_sums(sc, dictD.gap_rank));
    for (const auto& sc : dictE.relations) rels.push_back(segment_sums(sc, dictE.gap_rank));
    auto canon = [&](const QForm& q) {
        return reduce_mod_relations(q, rels).reduced_mod_base();
    };

    HwInvarianceReport rep;
    rep.delta = canon((qaE + quE) - (qaD + quD));

    // Cor/Prop deltas for the forward move /d\ -> \d/: Q(alpha) changes by
    // -2 h s1(xi_left), QU by +2 h s1(xi_left).  For the reverse move the
    // signs flip.
    int sign = (D.branes()[site] == Brane::NS5) ? +1 : -1;
    SegmentSums left = segment_sums(dictD.segments[site], dictD.gap_rank);
    QForm predicted;
    predicted.add_product(LinForm::h(1), left.p1, 2 * sign);
    rep.delta_alpha = canon((qaE - qaD) + predicted);
    rep.delta_qu = canon((quE - quD) - predicted);
    rep.pass = rep.delta.is_zero() && rep.delta_alpha.is_zero() && rep.delta_qu.is_zero();
    return rep;
}

// ---------------------------------------------------------------------------
// Section membership for pure theta products: the sum of squared argument
// forms (numerator minus denominator) must match the required quadratic form
// modulo base forms.

struct SectionCheckReport {
    bool pass = false;
    QForm delta;
    long long t_square_got = 0, t_square_want = 0;
};

inline QForm qform_of_product(const ThetaProduct& p) {
    QForm q;
    for (const auto& m : p.num) q.add_square(linform_of(m));
    for (const auto& m : p.den) q.add_square(linform_of(m), -1);
    return q;
}

inline SectionCheckReport section_check(const ThetaProduct& e, const QForm& required) {
    SectionCheckReport rep;
    QForm got = qform_of_product(e).reduced_mod_base();
    QForm want = required.reduced_mod_base();
    rep.delta = got - want;
    std::pair<QAtom, QAtom> tkey{{QAtom::S1, 1}, {QAtom::S1, 1}};
    auto it = got.coeffs().find(tkey);
    rep.t_square_got = it == got.coeffs().end() ? 0 : it->second;
    it = want.coeffs().find(tkey);
    rep.t_square_want = it == want.coeffs().end() ? 0 : it->second;
    rep.pass = rep.delta.is_zero();
    return rep;
}

// section_check on an expression tree; the expression must be a pure product
// of theta factors, integer powers, quotients and monomial prefactors.
inline void collect_factors(const ThetaExpr& e, int power, ThetaProduct& acc) {
    switch (e.op()) {
        case ThetaExpr::Op::Theta:
            for (int i = 0; i < std::abs(power); ++i) {
                if (power > 0)
                    acc.num.push_back(e.arg());
                else
                    acc.den.push_back(e.arg());
            }
            return;
        case ThetaExpr::Op::Mono:
            acc.prefactor *= e.arg().pow(power);
            return;
        case ThetaExpr::Op::Const:
            return;
        case ThetaExpr::Op::Product:
            for (const auto& k : e.kids()) collect_factors(k, power, acc);
            return;
        case ThetaExpr::Op::Quotient:
            collect_factors(e.kids()[0], power, acc);
            collect_factors(e.kids()[1], -power, acc);
            return;
        case ThetaExpr::Op::Power:
            collect_factors(e.kids()[0], power * e.ipow(), acc);
            return;
        case ThetaExpr::Op::Sum:
            throw error("section_check: expression is not a pure theta product");
    }
}

inline SectionCheckReport section_check(const ThetaExpr& e, const QForm& required) {
    ThetaProduct p;
    collect_factors(e, 1, p);
    return section_check(p, required);
}

}  // namespace bowlab
