#pragma once

// Randomized diagrams with at least one fixed point, used by the property
// suites and the check runner: a separated diagram built from Gale-Ryser
// feasible charges, shuffled by random HW moves that keep multiplicities
// non-negative.

#include <random>

#include "bowlab/bct.hpp"
#include "bowlab/diagram.hpp"

namespace bowlab {

inline BraneDiagram random_feasible_diagram(std::mt19937_64& rng, int max_branes = 8,
                                            int max_charge = 3) {
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    for (;;) {
        int m = pick(1, std::max(1, max_branes / 2));
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

// A random legal HW move site of D, or -1 if none exists.
inline int random_move_site(const BraneDiagram& D, std::mt19937_64& rng) {
    std::vector<int> sites;
    for (int i = 0; i + 1 < D.num_branes(); ++i) {
        if (!hw_move_applicable(D, i)) continue;
        int d1 = D.d3()[i], d2 = D.d3()[i + 1], d3 = D.d3()[i + 2];
        if (d1 + d3 - d2 + 1 >= 0) sites.push_back(i);
    }
    if (sites.empty()) return -1;
    return sites[rng() % sites.size()];
}

}  // namespace bowlab
