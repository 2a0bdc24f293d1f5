#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "khst/complexes.hpp"
#include "khst/laurent.hpp"

namespace khst {

struct SNFResult {
    std::vector<BigInt> factors; // nonzero invariant factors d1 | d2 | ...
    int rank = 0;
};

/// Smith normal form by elimination with minimal-absolute-value pivoting.
/// Exact over arbitrary-precision integers.
inline SNFResult smith_normal_form(std::vector<std::vector<BigInt>> m) {
    SNFResult out;
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int t = 0;
    auto abs_val = [](const BigInt& v) { return v < 0 ? BigInt(-v) : v; };
    while (true) {
        // Find the smallest nonzero entry in the remaining block.
        int pr = -1, pc = -1;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c)
                if (m[r][c] != 0 &&
                    (pr < 0 || abs_val(m[r][c]) < abs_val(m[pr][pc]))) {
                    pr = r;
                    pc = c;
                }
        if (pr < 0) break;
        std::swap(m[t], m[pr]);
        for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = t + 1; r < rows; ++r) {
                if (m[r][t] == 0) continue;
                BigInt q = m[r][t] / m[t][t];
                for (int c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
                if (m[r][t] != 0) {
                    std::swap(m[t], m[r]);
                    clean = false;
                }
            }
            for (int c = t + 1; c < cols; ++c) {
                if (m[t][c] == 0) continue;
                BigInt q = m[t][c] / m[t][t];
                for (int r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
                if (m[t][c] != 0) {
                    for (int r = t; r < rows; ++r) std::swap(m[r][t], m[r][c]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Entry m[t][t] must divide the rest of the block.
            for (int r = t + 1; r < rows && clean; ++r)
                for (int c = t + 1; c < cols && clean; ++c)
                    if (m[r][c] % m[t][t] != 0) {
                        for (int c2 = t; c2 < cols; ++c2) m[t][c2] += m[r][c2];
                        clean = false;
                    }
        }
        out.factors.push_back(abs_val(m[t][t]));
        ++t;
        if (t >= rows || t >= cols) break;
    }
    out.rank = static_cast<int>(out.factors.size());
    // Normalize the divisibility chain (defensive; elimination already sorts).
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

struct GroupSummand {
    int rank = 0;
    std::vector<BigInt> torsion; // invariant factors > 1, sorted
    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const GroupSummand& o) const { return rank == o.rank && torsion == o.torsion; }
    std::string str() const {
        if (trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (rank > 0) {
            os << "Z";
            if (rank > 1) os << "^" << rank;
            first = false;
        }
        for (const auto& d : torsion) {
            if (!first) os << "+";
            os << "Z" << d.str();
            first = false;
        }
        return os.str();
    }
};

struct BigradedHomology {
    std::map<std::pair<int, int>, GroupSummand> groups; // (i, j) -> summand

    bool operator==(const BigradedHomology& o) const { return groups == o.groups; }

    GroupSummand at(int i, int j) const {
        auto it = groups.find({i, j});
        return it == groups.end() ? GroupSummand{} : it->second;
    }

    bool has_torsion_factor(const BigInt& d) const {
        for (const auto& [ij, g] : groups)
            for (const auto& t : g.torsion)
                if (t == d) return true;
        return false;
    }

    std::string str() const {
        std::ostringstream os;
        for (const auto& [ij, g] : groups)
            os << "(" << ij.first << "," << ij.second << "): " << g.str() << "\n";
        return os.str();
    }
};

namespace detail {

inline std::vector<std::vector<BigInt>> block_matrix(const BigradedComplex& cx,
                                                     const std::vector<int>& from,
                                                     const std::vector<int>& to) {
    std::map<int, int> col;
    for (size_t k = 0; k < to.size(); ++k) col[to[k]] = static_cast<int>(k);
    std::vector<std::vector<BigInt>> m(from.size(), std::vector<BigInt>(to.size(), 0));
    for (size_t r = 0; r < from.size(); ++r)
        for (auto [t, c] : cx.diff[from[r]]) {
            auto it = col.find(t);
            if (it != col.end()) m[r][it->second] = c;
        }
    return m;
}

} // namespace detail

/// Exact bigraded homology over the integers: per (i, j), free rank plus
/// torsion read off the incoming differential's invariant factors.
inline BigradedHomology homology_of(const BigradedComplex& cx) {
    std::string why;
    if (!cx.is_complex(&why)) throw NotAComplex(why);
    if (cx.j_filtered)
        throw NotAComplex("bigraded homology needs a j-preserving differential");

    std::map<std::pair<int, int>, std::vector<int>> bucket;
    for (int g = 0; g < cx.size(); ++g) bucket[{cx.grade_i[g], cx.grade_j[g]}].push_back(g);

    BigradedHomology h;
    for (const auto& [ij, gens] : bucket) {
        auto [i, j] = ij;
        auto out_it = bucket.find({i + 1, j});
        auto in_it = bucket.find({i - 1, j});
        static const std::vector<int> none;
        const std::vector<int>& outs = out_it == bucket.end() ? none : out_it->second;
        const std::vector<int>& ins = in_it == bucket.end() ? none : in_it->second;

        SNFResult snf_out = smith_normal_form(detail::block_matrix(cx, gens, outs));
        SNFResult snf_in = smith_normal_form(detail::block_matrix(cx, ins, gens));

        GroupSummand g;
        g.rank = static_cast<int>(gens.size()) - snf_out.rank - snf_in.rank;
        for (const auto& d : snf_in.factors)
            if (d > 1) g.torsion.push_back(d);
        std::sort(g.torsion.begin(), g.torsion.end());
        if (!g.trivial()) h.groups[{i, j}] = g;
    }
    return h;
}

/// Ranks per homological degree over the rationals, for filtered (Lee-style)
/// complexes where j is not preserved.
inline std::map<int, int> rational_homology_ranks(const BigradedComplex& cx) {
    std::map<int, std::vector<int>> bucket;
    for (int g = 0; g < cx.size(); ++g) bucket[cx.grade_i[g]].push_back(g);
    std::map<int, int> ranks;
    for (const auto& [i, gens] : bucket) {
        auto out_it = bucket.find(i + 1);
        auto in_it = bucket.find(i - 1);
        static const std::vector<int> none;
        const std::vector<int>& outs = out_it == bucket.end() ? none : out_it->second;
        const std::vector<int>& ins = in_it == bucket.end() ? none : in_it->second;
        SNFResult snf_out = smith_normal_form(detail::block_matrix(cx, gens, outs));
        SNFResult snf_in = smith_normal_form(detail::block_matrix(cx, ins, gens));
        int r = static_cast<int>(gens.size()) - snf_out.rank - snf_in.rank;
        if (r != 0) ranks[i] = r;
    }
    return ranks;
}

/// Graded Euler characteristic of the chain level: sum (-1)^i q^j over
/// generators. Equals the same sum over homology.
inline Laurent euler_polynomial(const BigradedComplex& cx) {
    Laurent p;
    for (int g = 0; g < cx.size(); ++g)
        p.add_term((cx.grade_i[g] % 2 == 0) ? 1 : -1, cx.grade_j[g]);
    return p;
}

inline Laurent euler_polynomial(const BigradedHomology& h) {
    Laurent p;
    for (const auto& [ij, g] : h.groups)
        p.add_term((ij.first % 2 == 0) ? BigInt(g.rank) : BigInt(-g.rank), ij.second);
    return p;
}

// ---------------------------------------------------------------------------
// Filtration levels over the rationals
// ---------------------------------------------------------------------------

/// Maximal filtration level of a cycle class: the largest p such that the
/// class has a representative supported on generators with j >= p. The cycle
/// is reduced modulo a pivot basis of the boundary image, eliminating
/// low-j coordinates greedily; exact rational arithmetic throughout.
inline int filtered_homology_level(const BigradedComplex& cx, const Chain& cycle) {
    if (cycle.empty()) throw NotACycle("the zero chain has no filtration level");
    int deg = cx.grade_i[cycle.front().first];
    for (auto [g, c] : cycle)
        if (cx.grade_i[g] != deg) throw NotACycle("chain is not homogeneous in i");
    if (!apply_differential(cx, cycle).empty()) throw NotACycle("chain is not a cycle");

    // Order the degree-`deg` generators by j ascending; a class has level >= p
    // iff every coordinate with j < p can be cleared by boundaries.
    std::vector<int> level_gens;
    for (int g = 0; g < cx.size(); ++g)
        if (cx.grade_i[g] == deg) level_gens.push_back(g);
    std::stable_sort(level_gens.begin(), level_gens.end(),
                     [&](int a, int b) { return cx.grade_j[a] < cx.grade_j[b]; });
    std::vector<int> pos(cx.size(), -1);
    for (size_t k = 0; k < level_gens.size(); ++k) pos[level_gens[k]] = static_cast<int>(k);

    using Col = std::map<int, BigRat>; // position -> coefficient, min position first
    auto reduce = [](Col& col, const std::map<int, Col>& pivots) {
        while (!col.empty()) {
            int p = col.begin()->first;
            auto it = pivots.find(p);
            if (it == pivots.end()) return;
            BigRat f = col.begin()->second / it->second.begin()->second;
            for (const auto& [q, v] : it->second) {
                auto jt = col.find(q);
                BigRat nv = (jt == col.end() ? BigRat(0) : jt->second) - f * v;
                if (nv == 0) {
                    if (jt != col.end()) col.erase(jt);
                } else {
                    col[q] = nv;
                }
            }
        }
    };

    std::map<int, Col> pivots; // pivot position -> reduced boundary column
    for (int b = 0; b < cx.size(); ++b) {
        if (cx.grade_i[b] != deg - 1) continue;
        Col col;
        for (auto [t, c] : cx.diff[b])
            if (c != 0) col[pos[t]] = c;
        reduce(col, pivots);
        if (!col.empty()) pivots[col.begin()->first] = std::move(col);
    }

    Col z;
    for (auto [g, c] : cycle) z[pos[g]] = c;
    reduce(z, pivots);
    if (z.empty()) throw NotACycle("class is null-homologous");
    return cx.grade_j[level_gens[z.begin()->first]];
}

} // namespace khst
