#pragma once

// Laurent-monomial characters in the equivariant variables a_i, the Kahler
// variables z_i, hbar, and one distinguished Chern root t (enough for the
// explicit families treated here; t = 0 for honest torus characters).

#include <compare>
#include <map>
#include <vector>

#include "bowlab/diagram.hpp"

namespace bowlab {

struct Monomial {
    int t = 0;
    std::vector<int> a;
    std::vector<int> z;
    int h = 0;

    static Monomial unit() { return {}; }
    static Monomial t_pow(int e = 1) {
        Monomial m;
        m.t = e;
        return m;
    }
    static Monomial a_var(int i, int e = 1) {  // 1-based slot
        Monomial m;
        m.a.assign(i, 0);
        m.a[i - 1] = e;
        return m;
    }
    static Monomial z_var(int i, int e = 1) {
        Monomial m;
        m.z.assign(i, 0);
        m.z[i - 1] = e;
        return m;
    }
    static Monomial h_pow(int e = 1) {
        Monomial m;
        m.h = e;
        return m;
    }

    bool is_unit() const {
        if (t != 0 || h != 0) return false;
        for (int e : a)
            if (e != 0) return false;
        for (int e : z)
            if (e != 0) return false;
        return true;
    }

    Monomial& operator*=(const Monomial& o) {
        t += o.t;
        h += o.h;
        if (a.size() < o.a.size()) a.resize(o.a.size(), 0);
        for (std::size_t i = 0; i < o.a.size(); ++i) a[i] += o.a[i];
        if (z.size() < o.z.size()) z.resize(o.z.size(), 0);
        for (std::size_t i = 0; i < o.z.size(); ++i) z[i] += o.z[i];
        return *this;
    }
    friend Monomial operator*(Monomial x, const Monomial& y) { return x *= y; }

    Monomial inverse() const {
        Monomial m = *this;
        m.t = -m.t;
        m.h = -m.h;
        for (int& e : m.a) e = -e;
        for (int& e : m.z) e = -e;
        return m;
    }
    Monomial pow(int k) const {
        Monomial m = *this;
        m.t *= k;
        m.h *= k;
        for (int& e : m.a) e *= k;
        for (int& e : m.z) e *= k;
        return m;
    }

    // canonical form drops trailing zero exponents, so (a1) == (a1, a2^0)
    Monomial canonical() const {
        Monomial m = *this;
        while (!m.a.empty() && m.a.back() == 0) m.a.pop_back();
        while (!m.z.empty() && m.z.back() == 0) m.z.pop_back();
        return m;
    }

    friend bool operator==(const Monomial& x, const Monomial& y) {
        return x.canonical().cmp(y.canonical()) == 0;
    }
    friend bool operator<(const Monomial& x, const Monomial& y) {
        return x.canonical().cmp(y.canonical()) < 0;
    }

    int cmp(const Monomial& o) const {
        if (t != o.t) return t < o.t ? -1 : 1;
        if (h != o.h) return h < o.h ? -1 : 1;
        if (a != o.a) return a < o.a ? -1 : 1;
        if (z != o.z) return z < o.z ? -1 : 1;
        return 0;
    }
};

// Virtual multiset of monomials.
class Character {
public:
    Character() = default;

    void add(const Monomial& m, int mult = 1) {
        if (mult == 0) return;
        Monomial key = m.canonical();
        auto it = terms_.find(key);
        if (it == terms_.end())
            terms_.emplace(key, mult);
        else {
            it->second += mult;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<Monomial, int>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int multiplicity(const Monomial& m) const {
        auto it = terms_.find(m.canonical());
        return it == terms_.end() ? 0 : it->second;
    }

    long long rank() const {
        long long r = 0;
        for (const auto& [m, mult] : terms_) r += mult;
        return r;
    }

    Character dual() const {  // negate all exponents
        Character c;
        for (const auto& [m, mult] : terms_) c.add(m.inverse(), mult);
        return c;
    }
    Character scaled(const Monomial& s) const {
        Character c;
        for (const auto& [m, mult] : terms_) c.add(m * s, mult);
        return c;
    }
    Character& operator+=(const Character& o) {
        for (const auto& [m, mult] : o.terms_) add(m, mult);
        return *this;
    }
    Character& operator-=(const Character& o) {
        for (const auto& [m, mult] : o.terms_) add(m, -mult);
        return *this;
    }
    friend Character operator+(Character x, const Character& y) { return x += y; }
    friend Character operator-(Character x, const Character& y) { return x -= y; }

    bool operator==(const Character& o) const { return terms_ == o.terms_; }

private:
    std::map<Monomial, int> terms_;
};

// ---------------------------------------------------------------------------
// The T*P^{n-1} families.  Separated diagram /1/n\n-1\...\1\ with fixed point
// f_k tying Z1 to A_k; co-separated \1\2\...\n/1/ with f'_k tying Z2 to A_k.
// The distinguished Chern root restricts as t -> a_k h^{-1} and t -> a_k h.

inline Monomial restrict_tpn(int n, int k, Separation form) {
    if (k < 1 || k > n) throw error("restrict_tpn: index out of range");
    return Monomial::a_var(k) * Monomial::h_pow(form == Separation::Separated ? -1 : 1);
}

// N^< at f_k (same for both forms): sum_{i<k} (a_i/a_k) h + sum_{i>k} a_k/a_i.
inline Character negative_normal_tpn(int n, int k) {
    if (k < 1 || k > n) throw error("negative_normal_tpn: index out of range");
    Character c;
    for (int i = 1; i < k; ++i)
        c.add(Monomial::a_var(i) * Monomial::a_var(k, -1) * Monomial::h_pow(1));
    for (int i = k + 1; i <= n; ++i)
        c.add(Monomial::a_var(k) * Monomial::a_var(i, -1));
    return c;
}

// Tangent character {a_k/a_i : i != k} + {h a_i/a_k : i != k}.
inline Character tangent_tpn(int n, int k) {
    if (k < 1 || k > n) throw error("tangent_tpn: index out of range");
    Character c;
    for (int i = 1; i <= n; ++i) {
        if (i == k) continue;
        c.add(Monomial::a_var(k) * Monomial::a_var(i, -1));
        c.add(Monomial::a_var(i) * Monomial::a_var(k, -1) * Monomial::h_pow(1));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Chamber splitting.  A chamber is a permutation sigma with a_{sigma(1)} <
// ... < a_{sigma(n)}; a monomial is attracting iff its a-exponent vector,
// permuted into chamber order, has positive last nonzero entry.

struct ChamberSplit {
    Character positive, zero, negative;
};

inline ChamberSplit chamber_split(const Character& chi, const std::vector<int>& chamber) {
    ChamberSplit out;
    for (const auto& [m, mult] : chi.terms()) {
        int sign = 0;
        for (std::size_t pos = 0; pos < chamber.size(); ++pos) {
            int slot = chamber[pos];  // 1-based a-slot
            int e = (static_cast<std::size_t>(slot) <= m.a.size()) ? m.a[slot - 1] : 0;
            if (e != 0) sign = (e > 0) ? 1 : -1;
        }
        if (sign > 0)
            out.positive.add(m, mult);
        else if (sign < 0)
            out.negative.add(m, mult);
        else
            out.zero.add(m, mult);
    }
    return out;
}

inline std::vector<int> standard_chamber(int n) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = i + 1;
    return c;
}

// ---------------------------------------------------------------------------
// The alpha class: h ( sum_A Hom(xi^{A+}, xi^{A-}) + Hom(C_A, xi^{A-})
//                    + sum_Z Hom(xi^{Z-}, xi^{Z+}) - sum_xi Hom(xi, xi) )^dual.

struct HomBlock {
    int sign;          // +1 or -1
    bool src_is_line;  // source is C_A (by D5 ordinal) instead of a segment
    int src;           // segment index or D5 ordinal
    int tgt;           // segment index
};

struct AlphaClass {
    BraneDiagram diagram;
    std::vector<HomBlock> blocks;
};

inline AlphaClass alpha_class(const BraneDiagram& D) {
    AlphaClass a;
    a.diagram = D;
    for (int i = 0; i < D.num_branes(); ++i) {
        if (D.branes()[i] == Brane::D5) {
            a.blocks.push_back({+1, false, i + 1, i});       // Hom(xi^{A+}, xi^{A-})
            a.blocks.push_back({+1, true, D.ordinal(i), i}); // Hom(C_A, xi^{A-})
        } else {
            a.blocks.push_back({+1, false, i, i + 1});       // Hom(xi^{Z-}, xi^{Z+})
        }
    }
    for (int s = 0; s < D.num_branes() + 1; ++s)
        if (D.d3()[s] > 0) a.blocks.push_back({-1, false, s, s});
    return a;
}

inline long long alpha_rank(const AlphaClass& a) {
    long long r = 0;
    for (const HomBlock& b : a.blocks) {
        long long src = b.src_is_line ? 1 : a.diagram.d3()[b.src];
        r += b.sign * src * a.diagram.d3()[b.tgt];
    }
    return r;
}

// Restriction of every segment bundle of the T*P^{n-1} diagrams at the fixed
// point f_k, as a multiset of monomials; the bundles outside the NS5 gap are
// topologically trivial, so their multisets do not depend on k.
inline std::vector<Character> segment_restrictions_tpn(int n, Separation form) {
    std::vector<Character> segs;
    if (form == Separation::Separated) {
        // segments: 0 | Z 1 | Z n \ n-1 ... \ 1 \ 0   (m = 2 NS5 branes)
        segs.resize(n + 3);
        segs[1].add(Monomial::t_pow());
        for (int j = 0; j <= n; ++j) {  // zeta_j at segment 2 + j
            for (int i = j + 1; i <= n; ++i) segs[2 + j].add(Monomial::a_var(i));
        }
    } else {
        // segments: 0 \ 1 \ 2 ... \ n | Z 1 | Z 0
        segs.resize(n + 3);
        for (int j = 1; j <= n; ++j) {
            for (int i = 1; i <= j; ++i) segs[j].add(Monomial::a_var(i) * Monomial::h_pow(1));
        }
        segs[n + 1].add(Monomial::t_pow());
    }
    return segs;
}

// Evaluates an alpha class to a Character given per-segment restrictions.
inline Character alpha_character(const AlphaClass& a, const std::vector<Character>& segs) {
    Character inner;
    for (const HomBlock& b : a.blocks) {
        Character src;
        if (b.src_is_line)
            src.add(Monomial::a_var(b.src));
        else
            src = segs.at(b.src);
        const Character& tgt = segs.at(b.tgt);
        for (const auto& [ms, cs] : src.terms())
            for (const auto& [mt, ct] : tgt.terms())
                inner.add(mt * ms.inverse(), b.sign * cs * ct);
    }
    // h * inner^dual
    return inner.dual().scaled(Monomial::h_pow(1));
}

// ---------------------------------------------------------------------------
// The printed Chern-root specialization table for the worked 6x5 example
// fixed point (a fixture for validating restriction machinery).

inline std::vector<Character> example_restriction_table() {
    auto mono = [](int ai, int h) { return Monomial::a_var(ai) * Monomial::h_pow(h); };
    std::vector<std::vector<std::pair<int, int>>> spec = {
        {{1, 0}, {2, -1}},
        {{1, 0}, {2, -1}},
        {{1, 0}, {2, 0}},
        {{1, 0}, {2, 0}, {2, 1}, {2, 2}},
        {{2, 1}, {2, 2}, {3, -2}},
        {{2, 2}, {3, -2}, {3, -1}},
        {{2, 2}, {3, -1}, {3, 0}, {5, -1}},
        {{2, 2}, {3, -1}, {5, -1}},
        {{5, 0}, {5, -1}},
        {{5, 0}, {5, -1}},
    };
    std::vector<Character> out;
    for (const auto& row : spec) {
        Character c;
        for (auto [ai, h] : row) c.add(mono(ai, h));
        out.push_back(c);
    }
    return out;
}

}  // namespace bowlab
