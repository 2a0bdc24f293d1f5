#pragma once

#include <random>
#include <vector>

#include "khst/complexes.hpp"
#include "khst/morse.hpp"

namespace khst::testing {

/// Random free complex with d^2 = 0: a direct sum of elementary two-term
/// complexes and singletons, conjugated by random elementary unimodular
/// operations within each level. Test infrastructure only.
inline BigradedComplex random_complex(std::mt19937& rng) {
    std::uniform_int_distribution<int> levels_d(2, 4), per_level(2, 5), coin(0, 1);
    int levels = levels_d(rng);
    std::vector<int> count(levels);
    for (int& c : count) c = per_level(rng);

    BigradedComplex cx;
    std::vector<std::vector<int>> gens(levels);
    for (int l = 0; l < levels; ++l)
        for (int k = 0; k < count[l]; ++k) gens[l].push_back(cx.add_generator(l, 0));
    // Pair some generators of adjacent levels (disjointly) with unit arrows.
    for (int l = 0; l + 1 < levels; ++l) {
        size_t pairs = std::min(gens[l].size(), gens[l + 1].size());
        std::uniform_int_distribution<size_t> npairs(0, pairs);
        size_t n = npairs(rng);
        for (size_t k = 0; k < n; ++k)
            cx.add_entry(gens[l][k], gens[l + 1][k], coin(rng) ? 1 : -1);
    }
    // A generator may source at most one elementary arrow and receive at most
    // one, and never both (so d^2 = 0 holds trivially); the pairing above uses
    // positions, so exclude double use across levels by keeping only even
    // levels as sources.
    // (Rebuild: clear odd-level sources.)
    for (int l = 0; l + 1 < levels; ++l) {
        if (l % 2 == 1)
            for (int g : gens[l]) cx.diff[g].clear();
    }
    // Random elementary operations: replace generator b by b + c*a within a
    // level (a != b). Differential columns/rows update accordingly.
    std::uniform_int_distribution<int> ops_d(0, 12), coeff_d(-2, 2);
    int ops = ops_d(rng);
    for (int op = 0; op < ops; ++op) {
        std::uniform_int_distribution<int> lvl(0, levels - 1);
        int l = lvl(rng);
        if (gens[l].size() < 2) continue;
        std::uniform_int_distribution<size_t> pick(0, gens[l].size() - 1);
        size_t ia = pick(rng), ib = pick(rng);
        if (ia == ib) continue;
        int64_t c = coeff_d(rng);
        if (c == 0) continue;
        int a = gens[l][ia], b = gens[l][ib];
        // Unimodular change within level l: row(a) += c * row(b) on the
        // outgoing block pairs with col(b) -= c * col(a) on the incoming one.
        for (auto [t, w] : cx.diff[b]) cx.add_entry(a, t, c * w);
        for (int g = 0; g < cx.size(); ++g) {
            if (cx.grade_i[g] != l - 1) continue;
            int64_t to_a = 0;
            for (auto [t, w] : cx.diff[g])
                if (t == a) to_a = w;
            if (to_a != 0) cx.add_entry(g, b, -c * to_a);
        }
    }
    cx.compress();
    return cx;
}

/// A random acyclic matching, grown greedily by checking acyclicity.
inline Matching random_matching(const BigradedComplex& cx, std::mt19937& rng) {
    Matching m(cx.size());
    std::vector<std::pair<int, int>> candidates;
    for (int g = 0; g < cx.size(); ++g)
        for (auto [t, c] : cx.diff[g])
            if (c == 1 || c == -1) candidates.push_back({g, t});
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (auto [g, t] : candidates) {
        if (m.matched(g) || m.matched(t)) continue;
        m.pair(g, t);
        if (!verify_acyclic(cx, m)) {
            m.partner[g] = -1;
            m.partner[t] = -1;
        }
    }
    return m;
}

} // namespace khst::testing
