#pragma once

// Torus fixed points of bow varieties as binary contingency tables (BCTs):
// 0/1 matrices whose margins are the NS5/D5 charge vectors.  Row 1 is the
// leftmost NS5 brane (the paper prints rows bottom-up; we store top-down).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "bowlab/diagram.hpp"

namespace bowlab {

class BCT {
public:
    BCT() = default;
    BCT(int rows, int cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int at(int i, int j) const { return bits_[i * cols_ + j]; }
    void set(int i, int j, int v) { bits_[i * cols_ + j] = static_cast<std::uint8_t>(v); }

    std::vector<int> row_sums() const {
        std::vector<int> r(rows_, 0);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += at(i, j);
        return r;
    }
    std::vector<int> col_sums() const {
        std::vector<int> c(cols_, 0);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) c[j] += at(i, j);
        return c;
    }

    // Tie set {(row, col)} of the 1 entries, row-major.
    std::vector<std::pair<int, int>> ties() const {
        std::vector<std::pair<int, int>> t;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j)) t.emplace_back(i, j);
        return t;
    }

    static BCT from_ties(int rows, int cols, const std::vector<std::pair<int, int>>& ties) {
        BCT f(rows, cols);
        for (auto [i, j] : ties) f.set(i, j, 1);
        return f;
    }

    auto operator<=>(const BCT&) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

using TieDiagram = std::vector<std::pair<int, int>>;

// ---------------------------------------------------------------------------
// Gale-Ryser feasibility: a 0/1 matrix with margins (r, c) exists iff the sums
// agree and the descending row sums are dominated by the conjugate of c.

inline bool gale_ryser_feasible(std::vector<int> r, const std::vector<int>& c) {
    long long sr = 0, sc = 0;
    for (int x : r) {
        if (x < 0 || x > static_cast<int>(c.size())) return false;
        sr += x;
    }
    for (int x : c) {
        if (x < 0 || x > static_cast<int>(r.size())) return false;
        sc += x;
    }
    if (sr != sc) return false;
    std::sort(r.begin(), r.end(), std::greater<int>());
    long long lhs = 0;
    for (std::size_t k = 1; k <= r.size(); ++k) {
        lhs += r[k - 1];
        long long rhs = 0;
        for (int cj : c) rhs += std::min<long long>(cj, k);
        if (lhs > rhs) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Enumeration (row-wise backtracking with feasibility pruning, lexicographic
// in row-major bit order) and counting via an independent DP.

namespace detail {

inline void enumerate_rows(int row, const std::vector<int>& r, std::vector<int>& rem_c,
                           BCT& work, std::vector<BCT>& out) {
    int m = static_cast<int>(r.size());
    int n = static_cast<int>(rem_c.size());
    if (row == m) {
        for (int j = 0; j < n; ++j)
            if (rem_c[j] != 0) return;
        out.push_back(work);
        return;
    }
    std::vector<int> tail_r(r.begin() + row + 1, r.end());
    std::function<void(int, int)> choose = [&](int j, int left) {
        if (left == 0) {
            if (gale_ryser_feasible(tail_r, rem_c))
                enumerate_rows(row + 1, r, rem_c, work, out);
            return;
        }
        if (n - j < left) return;
        for (int jj = j; jj <= n - left; ++jj) {
            if (rem_c[jj] == 0) continue;
            work.set(row, jj, 1);
            --rem_c[jj];
            choose(jj + 1, left - 1);
            ++rem_c[jj];
            work.set(row, jj, 0);
        }
    };
    choose(0, r[row]);
}

// DP count: process rows in order, state = multiset of remaining column sums.
inline long long count_bcts_dp(const std::vector<int>& r, std::vector<int> c,
                               std::map<std::pair<int, std::vector<int>>, long long>& memo,
                               int row) {
    if (row == static_cast<int>(r.size())) {
        for (int x : c)
            if (x != 0) return 0;
        return 1;
    }
    std::vector<int> key_c = c;
    std::sort(key_c.begin(), key_c.end());
    auto key = std::make_pair(row, key_c);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    // distribute r[row] ones among columns grouped by remaining sum value
    std::map<int, int> groups;  // value -> how many columns carry it
    for (int x : key_c) ++groups[x];
    std::vector<std::pair<int, int>> gv(groups.begin(), groups.end());
    long long total = 0;
    // choose k_i columns from each group; product of binomials
    std::vector<int> take(gv.size(), 0);
    std::function<void(int, int, long long)> rec = [&](std::size_t g, int left, long long ways) {
        if (g == gv.size()) {
            if (left != 0) return;
            std::vector<int> next;
            next.reserve(key_c.size());
            for (std::size_t gi = 0; gi < gv.size(); ++gi) {
                auto [val, cnt] = gv[gi];
                for (int t = 0; t < take[gi]; ++t) next.push_back(val - 1);
                for (int t = take[gi]; t < cnt; ++t) next.push_back(val);
            }
            total += ways * count_bcts_dp(r, next, memo, row + 1);
            return;
        }
        auto [val, cnt] = gv[g];
        long long binom = 1;
        for (int k = 0; k <= std::min(cnt, left); ++k) {
            if (val >= 1 || k == 0) {
                take[g] = k;
                rec(g + 1, left - k, ways * binom);
            }
            binom = binom * (cnt - k) / (k + 1);
        }
        take[g] = 0;
    };
    rec(0, r[row], 1);
    memo[key] = total;
    return total;
}

}  // namespace detail

inline std::vector<BCT> enumerate_bcts(const std::vector<int>& r, const std::vector<int>& c) {
    std::vector<BCT> out;
    if (!gale_ryser_feasible(r, c)) return out;
    BCT work(static_cast<int>(r.size()), static_cast<int>(c.size()));
    std::vector<int> rem_c = c;
    detail::enumerate_rows(0, r, rem_c, work, out);
    std::sort(out.begin(), out.end());
    return out;
}

inline long long count_bcts(const std::vector<int>& r, const std::vector<int>& c) {
    if (!gale_ryser_feasible(r, c)) return 0;
    std::map<std::pair<int, std::vector<int>>, long long> memo;
    return detail::count_bcts_dp(r, c, memo, 0);
}

// All fixed points of the bow variety of D.
inline std::vector<BCT> fixed_points(const BraneDiagram& D) {
    ChargeVector ch = charges(D);
    return enumerate_bcts(ch.r, ch.c);
}

// ---------------------------------------------------------------------------
// Crossings and the mirror sign.

inline long long crossings(const BCT& f) {
    long long total = 0;
    auto t = f.ties();
    for (std::size_t p = 0; p < t.size(); ++p)
        for (std::size_t q = 0; q < t.size(); ++q)
            if (t[q].first > t[p].first && t[q].second > t[p].second) ++total;
    return total;
}

inline int epsilon_sign(const BCT& f) { return (crossings(f) % 2 == 0) ? 1 : -1; }

// Transpose: the tie diagram read upside down.
inline BCT mirror_point(const BCT& f) {
    BCT g(f.cols(), f.rows());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) g.set(j, i, f.at(i, j));
    return g;
}

// ---------------------------------------------------------------------------
// Subtorus splitting: restrict to a block of D5 columns.

inline std::pair<BCT, BCT> split_subtorus(const BCT& f, const std::vector<int>& block) {
    std::set<int> in_block(block.begin(), block.end());
    std::vector<int> rest;
    for (int j = 0; j < f.cols(); ++j)
        if (!in_block.count(j)) rest.push_back(j);
    auto restrict_cols = [&](const std::vector<int>& cols) {
        BCT g(f.rows(), static_cast<int>(cols.size()));
        for (int i = 0; i < f.rows(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) g.set(i, static_cast<int>(j), f.at(i, cols[j]));
        return g;
    };
    std::vector<int> sorted_block(block.begin(), block.end());
    std::sort(sorted_block.begin(), sorted_block.end());
    return {restrict_cols(sorted_block), restrict_cols(rest)};
}

// ---------------------------------------------------------------------------
// 5-brane resolutions of fixed points.  Replacing one brane of local charge
// w = w' + w'' by two branes splits its ties between them in binomially many
// ways; the "sharp" representatives are the crossing-extremal ones.

namespace detail {
inline std::vector<std::vector<int>> subsets(const std::vector<int>& items, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        if (i == items.size()) return;
        if (items.size() - i < k - cur.size()) return;
        cur.push_back(items[i]);
        rec(i + 1);
        cur.pop_back();
        rec(i + 1);
    };
    rec(0);
    return out;
}
}  // namespace detail

// Column j of sum w is replaced by two adjacent columns of sums w', w''.
inline std::vector<BCT> d5_resolutions(const BCT& f, int j, int w1, int w2) {
    std::vector<int> rows;
    for (int i = 0; i < f.rows(); ++i)
        if (f.at(i, j)) rows.push_back(i);
    if (static_cast<int>(rows.size()) != w1 + w2)
        throw error("d5_resolutions: column sum does not match the split");
    std::vector<BCT> out;
    for (const auto& left_rows : detail::subsets(rows, w1)) {
        BCT g(f.rows(), f.cols() + 1);
        std::set<int> lset(left_rows.begin(), left_rows.end());
        for (int i = 0; i < f.rows(); ++i)
            for (int jj = 0; jj < f.cols(); ++jj) {
                if (jj < j) g.set(i, jj, f.at(i, jj));
                else if (jj > j) g.set(i, jj + 1, f.at(i, jj));
            }
        for (int i : rows) g.set(i, lset.count(i) ? j : j + 1, 1);
        out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Separated sharp: no crossings between the two new columns (the left column
// takes the w' largest row indices).  Co-separated: all w'w'' crossings.
inline BCT d5_sharp(const BCT& f, int j, int w1, int w2, Separation form) {
    std::vector<int> rows;
    for (int i = 0; i < f.rows(); ++i)
        if (f.at(i, j)) rows.push_back(i);
    if (static_cast<int>(rows.size()) != w1 + w2)
        throw error("d5_sharp: column sum does not match the split");
    std::vector<int> left_rows;
    if (form == Separation::Separated)
        left_rows.assign(rows.end() - w1, rows.end());
    else
        left_rows.assign(rows.begin(), rows.begin() + w1);
    BCT g(f.rows(), f.cols() + 1);
    std::set<int> lset(left_rows.begin(), left_rows.end());
    for (int i = 0; i < f.rows(); ++i)
        for (int jj = 0; jj < f.cols(); ++jj) {
            if (jj < j) g.set(i, jj, f.at(i, jj));
            else if (jj > j) g.set(i, jj + 1, f.at(i, jj));
        }
    for (int i : rows) g.set(i, lset.count(i) ? j : j + 1, 1);
    return g;
}

// Row i of sum w is replaced by two adjacent rows of sums w', w''.
inline std::vector<BCT> ns5_resolutions(const BCT& f, int i, int w1, int w2) {
    std::vector<int> cols;
    for (int j = 0; j < f.cols(); ++j)
        if (f.at(i, j)) cols.push_back(j);
    if (static_cast<int>(cols.size()) != w1 + w2)
        throw error("ns5_resolutions: row sum does not match the split");
    std::vector<BCT> out;
    for (const auto& top_cols : detail::subsets(cols, w1)) {
        BCT g(f.rows() + 1, f.cols());
        std::set<int> tset(top_cols.begin(), top_cols.end());
        for (int ii = 0; ii < f.rows(); ++ii)
            for (int j = 0; j < f.cols(); ++j) {
                if (ii < i) g.set(ii, j, f.at(ii, j));
                else if (ii > i) g.set(ii + 1, j, f.at(ii, j));
            }
        for (int j : cols) g.set(tset.count(j) ? i : i + 1, j, 1);
        out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Separated sharp: all ties between the two new rows cross (the top row takes
// the w' smallest columns).  Co-separated: no crossings.
inline BCT ns5_sharp(const BCT& f, int i, int w1, int w2, Separation form) {
    std::vector<int> cols;
    for (int j = 0; j < f.cols(); ++j)
        if (f.at(i, j)) cols.push_back(j);
    if (static_cast<int>(cols.size()) != w1 + w2)
        throw error("ns5_sharp: row sum does not match the split");
    std::vector<int> top_cols;
    if (form == Separation::Separated)
        top_cols.assign(cols.begin(), cols.begin() + w1);
    else
        top_cols.assign(cols.end() - w1, cols.end());
    BCT g(f.rows() + 1, f.cols());
    std::set<int> tset(top_cols.begin(), top_cols.end());
    for (int ii = 0; ii < f.rows(); ++ii)
        for (int j = 0; j < f.cols(); ++j) {
            if (ii < i) g.set(ii, j, f.at(ii, j));
            else if (ii > i) g.set(ii + 1, j, f.at(ii, j));
        }
    for (int j : cols) g.set(tset.count(j) ? i : i + 1, j, 1);
    return g;
}

// Shift multi-index for the NS5 resolution of row i: one entry per tie of
// row i (in column order), counting that column's ties strictly above row i
// (= ties to NS5 branes left of the resolved brane).
inline std::vector<int> gamma_index(const BCT& f, int i) {
    std::vector<int> gamma;
    for (int j = 0; j < f.cols(); ++j) {
        if (!f.at(i, j)) continue;
        int g = 0;
        for (int ii = 0; ii < i; ++ii) g += f.at(ii, j);
        gamma.push_back(g);
    }
    return gamma;
}

}  // namespace bowlab
