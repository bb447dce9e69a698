#pragma once

// Type-A brane diagrams: alternating NS5 ('/') and D5 ('\') branes joined by
// D3 segments with integer multiplicities.  All operations are pure; diagrams
// are immutable values.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bowlab {

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Brane : std::uint8_t { NS5, D5 };

struct ChargeVector {
    std::vector<int> r;  // one per NS5 brane, left to right
    std::vector<int> c;  // one per D5 brane, left to right

    bool operator==(const ChargeVector&) const = default;
};

class BraneDiagram {
public:
    BraneDiagram() = default;

    BraneDiagram(std::vector<Brane> branes, std::vector<int> d3)
        : branes_(std::move(branes)), d3_(std::move(d3)) {
        validate();
    }

    const std::vector<Brane>& branes() const { return branes_; }
    const std::vector<int>& d3() const { return d3_; }

    int num_branes() const { return static_cast<int>(branes_.size()); }
    int num_ns5() const {
        int k = 0;
        for (Brane b : branes_) k += (b == Brane::NS5);
        return k;
    }
    int num_d5() const { return num_branes() - num_ns5(); }

    // Multiplicities left/right of brane i.
    int d_left(int i) const { return d3_.at(i); }
    int d_right(int i) const { return d3_.at(i + 1); }

    // 1-based ordinal of brane i among branes of its own type.
    int ordinal(int i) const {
        int k = 0;
        for (int j = 0; j <= i; ++j)
            if (branes_[j] == branes_[i]) ++k;
        return k;
    }

    // Brane position (0-based) of the k-th NS5/D5 (1-based k).
    int position_of(Brane type, int k) const {
        for (int j = 0; j < num_branes(); ++j) {
            if (branes_[j] == type && --k == 0) return j;
        }
        throw error("brane ordinal out of range");
    }

    bool is_separated() const {   // all NS5 left of all D5
        bool seen_d5 = false;
        for (Brane b : branes_) {
            if (b == Brane::D5) seen_d5 = true;
            else if (seen_d5) return false;
        }
        return true;
    }
    bool is_co_separated() const {
        bool seen_ns5 = false;
        for (Brane b : branes_) {
            if (b == Brane::NS5) seen_ns5 = true;
            else if (seen_ns5) return false;
        }
        return true;
    }

    bool operator==(const BraneDiagram&) const = default;

private:
    void validate() const {
        if (d3_.size() != branes_.size() + 1)
            throw error("d3 length must be #branes + 1");
        if (!d3_.empty() && (d3_.front() != 0 || d3_.back() != 0))
            throw error("leading and trailing multiplicities must be 0");
        for (int d : d3_)
            if (d < 0) throw error("negative multiplicity");
    }

    std::vector<Brane> branes_;
    std::vector<int> d3_;
};

// ---------------------------------------------------------------------------
// Text grammar: '/' = NS5, '\' = D5 (aliases 's' and 'b' for shell safety),
// non-negative integers between branes; boundary zeros may be omitted.

inline BraneDiagram parse_diagram(const std::string& text) {
    std::vector<Brane> branes;
    std::vector<int> d3;
    bool have_number = false;
    int value = 0;
    std::size_t pos = 0;
    auto flush_number = [&](bool before_brane) {
        if (branes.empty() && !before_brane) return;  // nothing pending yet
        if (!have_number) {
            d3.push_back(0);
        } else {
            d3.push_back(value);
        }
        have_number = false;
        value = 0;
    };
    for (; pos < text.size(); ++pos) {
        char ch = text[pos];
        if (ch == ' ' || ch == '\t') continue;
        if (ch >= '0' && ch <= '9') {
            if (branes.empty() && !have_number && value == 0 && d3.empty()) {
                // leading multiplicity (usually the printed 0)
            }
            have_number = true;
            value = value * 10 + (ch - '0');
            if (value > 1000000) throw error("multiplicity too large at position " + std::to_string(pos));
            continue;
        }
        Brane b;
        if (ch == '/' || ch == 's') b = Brane::NS5;
        else if (ch == '\\' || ch == 'b') b = Brane::D5;
        else throw error("unexpected character '" + std::string(1, ch) + "' at position " + std::to_string(pos));
        if (branes.empty()) {
            d3.push_back(have_number ? value : 0);
            have_number = false;
            value = 0;
        } else {
            flush_number(true);
        }
        branes.push_back(b);
    }
    if (branes.empty()) throw error("empty brane diagram");
    d3.push_back(have_number ? value : 0);
    return BraneDiagram(std::move(branes), std::move(d3));
}

inline std::string format_diagram(const BraneDiagram& D, bool with_boundary_zeros = false) {
    std::string out;
    const auto& d3 = D.d3();
    const auto& branes = D.branes();
    if (with_boundary_zeros) out += std::to_string(d3.front());
    for (int i = 0; i < D.num_branes(); ++i) {
        out += (branes[i] == Brane::NS5) ? '/' : '\\';
        if (i + 1 < D.num_branes())
            out += std::to_string(d3[i + 1]);
        else if (with_boundary_zeros)
            out += std::to_string(d3.back());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Charges (HW invariants).  ch(Z) = (d+ - d-) + #{D5 left of Z},
// ch(A) = (d- - d+) + #{NS5 right of A}.

inline ChargeVector charges(const BraneDiagram& D) {
    ChargeVector ch;
    int n = D.num_branes();
    std::vector<int> ns5_right(n + 1, 0);
    for (int i = n - 1; i >= 0; --i)
        ns5_right[i] = ns5_right[i + 1] + (D.branes()[i] == Brane::NS5);
    int d5_left = 0;
    for (int i = 0; i < n; ++i) {
        if (D.branes()[i] == Brane::NS5) {
            ch.r.push_back(D.d_right(i) - D.d_left(i) + d5_left);
        } else {
            ch.c.push_back(D.d_left(i) - D.d_right(i) + ns5_right[i + 1]);
            ++d5_left;
        }
    }
    return ch;
}

// Local charge |d+ - d-| of brane i.
inline int local_charge(const BraneDiagram& D, int i) {
    int w = D.d_right(i) - D.d_left(i);
    return w < 0 ? -w : w;
}

// ---------------------------------------------------------------------------
// Hanany-Witten transition at the adjacent pair (site, site+1):
//   d1 / d2 \ d3   <->   d1 \ d1+d3-d2+1 / d3.

struct HwMove {
    int site = 0;  // brane index of the left member of the pair
};

inline bool hw_move_applicable(const BraneDiagram& D, int site) {
    if (site < 0 || site + 1 >= D.num_branes()) return false;
    return D.branes()[site] != D.branes()[site + 1];
}

inline BraneDiagram hw_move(const BraneDiagram& D, int site) {
    if (site < 0 || site + 1 >= D.num_branes())
        throw error("hw_move: site out of range");
    if (D.branes()[site] == D.branes()[site + 1])
        throw error("hw_move: branes at site have equal type");
    int d1 = D.d3()[site], d2 = D.d3()[site + 1], d3 = D.d3()[site + 2];
    int d2p = d1 + d3 - d2 + 1;
    if (d2p < 0)
        throw error("hw_move: transition would need negative multiplicity "
                    "(empty bow variety)");
    auto branes = D.branes();
    std::swap(branes[site], branes[site + 1]);
    auto d3v = D.d3();
    d3v[site + 1] = d2p;
    return BraneDiagram(std::move(branes), std::move(d3v));
}

enum class Separation { Separated, CoSeparated };

// The unique separated (or co-separated) diagram with the given charges.
inline BraneDiagram diagram_from_charges(const ChargeVector& ch, Separation target) {
    int m = static_cast<int>(ch.r.size());
    int n = static_cast<int>(ch.c.size());
    std::vector<Brane> branes;
    std::vector<int> d3{0};
    auto push_run = [&](Brane b, int count, auto next_mult) {
        for (int k = 0; k < count; ++k) {
            branes.push_back(b);
            d3.push_back(next_mult(k));
        }
    };
    if (target == Separation::Separated) {
        int acc = 0;
        push_run(Brane::NS5, m, [&](int k) { return acc += ch.r[k]; });
        push_run(Brane::D5, n, [&](int k) { return acc -= ch.c[k]; });
    } else {
        int acc = 0;
        push_run(Brane::D5, n, [&](int k) { return acc += m - ch.c[k]; });
        push_run(Brane::NS5, m, [&](int k) { return acc += ch.r[k] - n; });
    }
    if (d3.back() != 0)
        throw error("inconsistent charges: total NS5 and D5 charge differ");
    for (std::size_t i = 0; i + 1 < d3.size(); ++i)
        if (d3[i] < 0) throw error("charges admit no separated representative "
                                   "(empty bow variety)");
    d3.back() = 0;
    return BraneDiagram(std::move(branes), std::move(d3));
}

// Leftmost applicable move toward the target arrangement, or nullopt.
inline std::optional<int> next_normalize_site(const BraneDiagram& D, Separation target) {
    Brane wrong_left = (target == Separation::Separated) ? Brane::D5 : Brane::NS5;
    for (int i = 0; i + 1 < D.num_branes(); ++i)
        if (D.branes()[i] == wrong_left && D.branes()[i + 1] != wrong_left)
            return i;
    return std::nullopt;
}

// Deterministic normalization: leftmost applicable HW move, repeated.
// Records the applied sites when `trace` is non-null.
inline BraneDiagram normalize(const BraneDiagram& D, Separation target,
                              std::vector<int>* trace = nullptr) {
    BraneDiagram cur = D;
    while (auto site = next_normalize_site(cur, target)) {
        cur = hw_move(cur, *site);
        if (trace) trace->push_back(*site);
    }
    // The separated representative is determined by the charges; any rewriting
    // strategy must land on it.
    BraneDiagram expect = diagram_from_charges(charges(D), target);
    if (!(cur == expect))
        throw error("normalize: rewriting disagrees with the charge reconstruction");
    return cur;
}

inline BraneDiagram dualize(const BraneDiagram& D) {
    std::vector<Brane> branes;
    branes.reserve(D.branes().size());
    for (Brane b : D.branes())
        branes.push_back(b == Brane::NS5 ? Brane::D5 : Brane::NS5);
    return BraneDiagram(std::move(branes), D.d3());
}

// ---------------------------------------------------------------------------
// Zero-charge elimination: realize the HW class with all 5-brane charges > 0
// by adding an extra 5-brane of maximal charge at the appropriate end.

inline BraneDiagram strip_zero_charge(const BraneDiagram& D) {
    BraneDiagram cur = D;
    ChargeVector ch = charges(cur);
    bool r_zero = false, c_zero = false;
    for (int x : ch.r) r_zero |= (x == 0);
    for (int x : ch.c) c_zero |= (x == 0);
    if (r_zero) {
        // co-separate, then prepend a D5 brane: every NS5 charge gains 1.
        cur = normalize(cur, Separation::CoSeparated);
        auto branes = cur.branes();
        auto d3 = cur.d3();
        branes.insert(branes.begin(), Brane::D5);
        d3.insert(d3.begin(), 0);
        cur = BraneDiagram(std::move(branes), std::move(d3));
    }
    ch = charges(cur);
    for (int x : ch.c) c_zero |= (x == 0);
    if (c_zero) {
        // separate, then append an NS5 brane: every D5 charge gains 1.
        cur = normalize(cur, Separation::Separated);
        auto branes = cur.branes();
        auto d3 = cur.d3();
        branes.push_back(Brane::NS5);
        d3.push_back(0);
        cur = BraneDiagram(std::move(branes), std::move(d3));
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Complex dimension of the bow variety: dim M - dim N - dim G, where the
// three-way parts of D5 branes, the two-way parts of NS5 branes and the
// moment-map targets contribute as below.

inline long long dimension(const BraneDiagram& D) {
    long long dim_m = 0, dim_n = 0, dim_g = 0;
    for (int i = 0; i < D.num_branes(); ++i) {
        long long dm = D.d_left(i), dp = D.d_right(i);
        if (D.branes()[i] == Brane::D5) {
            dim_m += dp * dm + dp + dm + dm * dm + dp * dp;
            dim_n += dp * dm;
        } else {
            dim_m += 2 * dm * dp;
        }
    }
    for (std::size_t s = 1; s + 1 < D.d3().size(); ++s) {
        long long d = D.d3()[s];
        dim_n += d * d;
        dim_g += d * d;
    }
    return dim_m - dim_n - dim_g;
}

}  // namespace bowlab
