#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "khst/complexes.hpp"
#include "khst/cube.hpp"
#include "khst/trees.hpp"

namespace khst {

/// An acyclic-matching candidate on the Hasse diagram of a complex. partner[v]
/// is the matched vertex (or -1); a matched pair (lower, upper) spans adjacent
/// i-gradings with the differential running lower -> upper.
struct Matching {
    std::vector<int> partner;

    explicit Matching(int n = 0) : partner(n, -1) {}

    void pair(int lower, int upper) {
        partner[lower] = upper;
        partner[upper] = lower;
    }
    bool matched(int v) const { return partner[v] >= 0; }
    int size() const { return static_cast<int>(partner.size()); }
};

namespace detail {

/// Out-edges of the matched Hasse diagram H_M: differential edges keep their
/// direction and weight; matched edges reverse with weight -1/[c:c'].
struct HasseDigraph {
    std::vector<std::vector<std::pair<int, int64_t>>> out;

    HasseDigraph(const BigradedComplex& cx, const Matching& m) : out(cx.size()) {
        for (int g = 0; g < cx.size(); ++g)
            for (auto [t, c] : cx.diff[g]) {
                if (c == 0) continue;
                if (m.partner[g] == t) {
                    if (c != 1 && c != -1)
                        throw NonUnitWeight("matched edge weight " + std::to_string(c));
                    out[t].push_back({g, -c}); // -1/c == -c for units
                } else {
                    out[g].push_back({t, c});
                }
            }
    }
};

} // namespace detail

/// Check the three acyclic-matching conditions. On failure an explanation is
/// written to `witness` (when given) and false returned. Grading violations
/// throw GradingMismatch.
inline bool verify_acyclic(const BigradedComplex& cx, const Matching& m,
                           std::string* witness = nullptr) {
    if (m.size() != cx.size()) throw GradingMismatch("matching size mismatch");
    for (int v = 0; v < cx.size(); ++v) {
        int p = m.partner[v];
        if (p < 0) continue;
        if (p == v || m.partner[p] != v) {
            if (witness) *witness = "matching is not an involution at " + std::to_string(v);
            return false;
        }
        if (std::abs(cx.grade_i[v] - cx.grade_i[p]) != 1)
            throw GradingMismatch("matched pair does not span adjacent gradings");
    }
    // Each matched pair must be an actual Hasse edge with unit weight.
    for (int v = 0; v < cx.size(); ++v) {
        int p = m.partner[v];
        if (p < 0 || cx.grade_i[p] != cx.grade_i[v] + 1) continue;
        int64_t w = 0;
        for (auto [t, c] : cx.diff[v])
            if (t == p) w = c;
        if (w == 0) {
            if (witness)
                *witness = "matched pair " + std::to_string(v) + "," + std::to_string(p) +
                           " is not a Hasse edge";
            return false;
        }
        if (w != 1 && w != -1) {
            if (witness)
                *witness = "matched weight " + std::to_string(w) + " is not a unit";
            return false;
        }
    }
    // No directed cycles in H_M.
    std::vector<std::vector<std::pair<int, int64_t>>> out(cx.size());
    for (int g = 0; g < cx.size(); ++g)
        for (auto [t, c] : cx.diff[g]) {
            if (c == 0) continue;
            if (m.partner[g] == t) out[t].push_back({g, 1});
            else out[g].push_back({t, 1});
        }
    std::vector<int8_t> state(cx.size(), 0); // 0 unseen, 1 on stack, 2 done
    std::vector<std::pair<int, size_t>> stack;
    for (int s = 0; s < cx.size(); ++s) {
        if (state[s] != 0) continue;
        stack.push_back({s, 0});
        state[s] = 1;
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            if (k < out[v].size()) {
                int u = out[v][k].first;
                ++k;
                if (state[u] == 1) {
                    if (witness)
                        *witness = "directed cycle through " + std::to_string(u);
                    return false;
                }
                if (state[u] == 0) {
                    state[u] = 1;
                    stack.push_back({u, 0});
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

/// Path-sum transfer from a single source over the matched Hasse diagram:
/// T[v] = sum of path weights from `source` to v (T[source] = 1).
inline std::vector<int64_t> morse_path_sums(const detail::HasseDigraph& hm, int source) {
    const int n = static_cast<int>(hm.out.size());
    // Topological order of the reachable part (H_M is a DAG once acyclic).
    std::vector<int> topo;
    std::vector<int8_t> state(n, 0);
    std::vector<std::pair<int, size_t>> stack = {{source, 0}};
    state[source] = 1;
    while (!stack.empty()) {
        auto& [v, k] = stack.back();
        if (k < hm.out[v].size()) {
            int u = hm.out[v][k].first;
            ++k;
            if (state[u] == 0) {
                state[u] = 1;
                stack.push_back({u, 0});
            }
        } else {
            topo.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(topo.begin(), topo.end());
    std::vector<int64_t> T(n, 0);
    T[source] = 1;
    for (int v : topo)
        if (T[v] != 0)
            for (auto [u, w] : hm.out[v]) T[u] += T[v] * w;
    return T;
}

struct MorseComplex {
    BigradedComplex cx;               // the reduced complex on critical cells
    std::vector<int> critical;        // reduced index -> original generator
    std::vector<int> critical_index;  // original generator -> reduced index or -1
};

/// The Morse complex of an acyclic matching: critical cells with the path-sum
/// differential.
inline MorseComplex morse_differential(const BigradedComplex& cx, const Matching& m) {
    std::string why;
    if (!verify_acyclic(cx, m, &why)) throw NotAComplex("matching is not acyclic: " + why);
    detail::HasseDigraph hm(cx, m);

    MorseComplex out;
    out.cx.j_filtered = cx.j_filtered;
    out.critical_index.assign(cx.size(), -1);
    for (int v = 0; v < cx.size(); ++v)
        if (!m.matched(v)) {
            out.critical_index[v] = static_cast<int>(out.critical.size());
            out.critical.push_back(v);
            out.cx.add_generator(cx.grade_i[v], cx.grade_j[v]);
        }
    for (size_t ci = 0; ci < out.critical.size(); ++ci) {
        int c = out.critical[ci];
        auto T = morse_path_sums(hm, c);
        for (size_t cj = 0; cj < out.critical.size(); ++cj) {
            int c2 = out.critical[cj];
            if (cx.grade_i[c2] != cx.grade_i[c] + 1) continue;
            if (T[c2] != 0) out.cx.add_entry(static_cast<int>(ci), static_cast<int>(cj), T[c2]);
        }
    }
    out.cx.compress();
    return out;
}

/// f: Morse -> original, by path sums into the same grading.
inline Chain f_map(const BigradedComplex& cx, const Matching& m, int critical_gen) {
    detail::HasseDigraph hm(cx, m);
    auto T = morse_path_sums(hm, critical_gen);
    Chain out;
    for (int v = 0; v < cx.size(); ++v)
        if (T[v] != 0 && cx.grade_i[v] == cx.grade_i[critical_gen]) chain_add(out, v, T[v]);
    chain_compress(out);
    return out;
}

/// g: original -> Morse (expressed in original generator ids of the critical
/// cells), by path sums into critical cells of the same grading.
inline Chain g_map(const BigradedComplex& cx, const Matching& m, int gen) {
    detail::HasseDigraph hm(cx, m);
    auto T = morse_path_sums(hm, gen);
    Chain out;
    for (int v = 0; v < cx.size(); ++v)
        if (T[v] != 0 && !m.matched(v) && cx.grade_i[v] == cx.grade_i[gen]) chain_add(out, v, T[v]);
    chain_compress(out);
    return out;
}

/// chi: original -> original, dropping the cohomological degree by one.
inline Chain chi_map(const BigradedComplex& cx, const Matching& m, int gen) {
    detail::HasseDigraph hm(cx, m);
    auto T = morse_path_sums(hm, gen);
    Chain out;
    for (int v = 0; v < cx.size(); ++v)
        if (T[v] != 0 && cx.grade_i[v] == cx.grade_i[gen] - 1) chain_add(out, v, T[v]);
    chain_compress(out);
    return out;
}

// ---------------------------------------------------------------------------
// The Khovanov matching
// ---------------------------------------------------------------------------

/// Per-tree data driving the inductive matching of the spanning-tree model.
struct TreeMatchingData {
    TwistTree gt;
    std::vector<MatchingStep> steps; // peeling order
    ResMask critical_mask = 0;
};

inline std::vector<TreeMatchingData> build_tree_matching_data(const TaitGraph& g,
                                                              const TreeFamily& fam) {
    std::vector<TreeMatchingData> out;
    out.reserve(fam.trees.size());
    for (size_t t = 0; t < fam.trees.size(); ++t) {
        TreeMatchingData d;
        d.gt = build_twist_tree(g, fam.trees[t], fam.words[t]);
        d.steps = matching_order(d.gt);
        d.critical_mask = mask_of_subgraph(g, d.gt.critical_subgraph);
        out.push_back(std::move(d));
    }
    return out;
}

/// Which spanning tree's twisted-unknot block a resolution belongs to.
inline std::vector<int> tree_of_mask_table(const TaitGraph& g, const TreeFamily& fam) {
    const int m = g.n_edges();
    std::vector<int> table(size_t(1) << m, -1);
    for (size_t t = 0; t < fam.trees.size(); ++t) {
        const ActivityWord& w = fam.words[t];
        ResMask frozen = 0;
        std::vector<int> live;
        for (int e = 0; e < m; ++e) {
            if (is_live(w.acts[e])) {
                live.push_back(e);
            } else if (letter_resolution(w.acts[e], w.signs[e]) == Res::B) {
                frozen |= ResMask(1) << e;
            }
        }
        for (uint32_t bits = 0; bits < (1u << live.size()); ++bits) {
            ResMask mask = frozen;
            for (size_t k = 0; k < live.size(); ++k)
                if ((bits >> k) & 1u) mask |= ResMask(1) << live[k];
            if (table[mask] != -1) throw std::logic_error("tree blocks overlap");
            table[mask] = static_cast<int>(t);
        }
    }
    for (size_t mask = 0; mask < table.size(); ++mask)
        if (table[mask] < 0) throw std::logic_error("resolution not covered by any tree block");
    return table;
}

namespace detail {

/// For a toggle of edge position e (joined <-> split), identify the circles
/// involved on both sides and relabel. Returns the partner's labels.
inline uint32_t transfer_labels_over_toggle(const CubeComplex& cube, ResMask mask,
                                            uint32_t labels, int e, int leaf_arc,
                                            bool to_split, int leaf_label) {
    ResMask mask2 = mask ^ (ResMask(1) << e);
    const auto& d = cube.state_data(mask);
    const auto& d2 = cube.state_data(mask2);
    const auto& c1 = d.circles;
    const auto& c2 = d2.circles;
    uint32_t out = 0;
    if (to_split) {
        // mask joined -> mask2 split: one circle splits; the piece containing
        // leaf_arc takes leaf_label, the other keeps the source label.
        if (c2.size() != c1.size() + 1) throw std::logic_error("expected a split");
        int source = -1, t1 = -1, t2 = -1;
        for (size_t b = 0; b < c2.size(); ++b) {
            int owner = d.circle_of_arc[c2[b].front()];
            if (c1[owner] != c2[b]) {
                (t1 < 0 ? t1 : t2) = static_cast<int>(b);
                source = owner;
            }
        }
        for (size_t b = 0; b < c2.size(); ++b) {
            if (static_cast<int>(b) == t1 || static_cast<int>(b) == t2) continue;
            int owner = d.circle_of_arc[c2[b].front()];
            if ((labels >> owner) & 1u) out |= 1u << b;
        }
        int leaf_circle = d2.circle_of_arc[leaf_arc];
        int other_circle = (leaf_circle == t1) ? t2 : t1;
        if (leaf_circle != t1 && leaf_circle != t2)
            throw std::logic_error("leaf arc not on a split circle");
        if (leaf_label) out |= 1u << leaf_circle;
        if ((labels >> source) & 1u) out |= 1u << other_circle;
    } else {
        // mask split -> mask2 joined: the leaf circle is absorbed; the merged
        // circle keeps the other side's label.
        if (c2.size() + 1 != c1.size()) throw std::logic_error("expected a merge");
        int f1 = -1, f2 = -1, target = -1;
        for (size_t a = 0; a < c1.size(); ++a) {
            int owner = d2.circle_of_arc[c1[a].front()];
            if (c2[owner] != c1[a]) {
                (f1 < 0 ? f1 : f2) = static_cast<int>(a);
                target = owner;
            }
        }
        for (size_t a = 0; a < c1.size(); ++a) {
            if (static_cast<int>(a) == f1 || static_cast<int>(a) == f2) continue;
            int owner = d2.circle_of_arc[c1[a].front()];
            if ((labels >> a) & 1u) out |= 1u << owner;
        }
        int leaf_circle = d.circle_of_arc[leaf_arc];
        int other_circle = (leaf_circle == f1) ? f2 : f1;
        if (leaf_circle != f1 && leaf_circle != f2)
            throw std::logic_error("leaf arc not on a merging circle");
        if ((labels >> other_circle) & 1u) out |= 1u << target;
    }
    return out;
}

} // namespace detail

struct KhovanovMatching {
    Matching matching;
    // Per critical generator (in cube ids): its tree and sign (+1 for root
    // label 1, -1 for root label x).
    std::vector<int> critical_tree;
    std::vector<int> critical_sign;
};

/// The union over spanning trees of the inductive near-perfect matchings.
/// Works for every variant: the pairing never touches the dotted circle's
/// label.
inline KhovanovMatching khovanov_matching(const CubeComplex& cube, const TaitGraph& g,
                                          const TreeFamily& fam,
                                          const std::vector<TreeMatchingData>& tmd,
                                          const std::vector<int>& tree_of_mask) {
    KhovanovMatching out;
    out.matching = Matching(cube.size());
    out.critical_tree.assign(cube.size(), -1);
    out.critical_sign.assign(cube.size(), 0);
    (void)fam;

    for (int gen = 0; gen < cube.size(); ++gen) {
        if (out.matching.matched(gen)) continue;
        ResMask mask = cube.mask_of(gen);
        uint32_t labels = cube.labels_of(gen);
        int t = tree_of_mask[mask];
        const TreeMatchingData& d = tmd[t];
        const auto& state = cube.state_data(mask);

        bool decided = false;
        for (const auto& step : d.steps) {
            int e = step.edge;
            int leaf_arc = d.gt.circle_min_arc[step.leaf_vertex];
            // Split resolution of the live edge = critical resolution bit.
            bool split_bit = (d.critical_mask >> e) & 1u;
            bool cur_bit = (mask >> e) & 1u;
            bool split = (cur_bit == split_bit);
            int matched_label = step.negative_twist ? 1 : 0; // x pairs for negative twists
            if (!split) {
                // Joined at this edge: matched, partner is the split state.
                uint32_t plabels = detail::transfer_labels_over_toggle(
                    cube, mask, labels, e, leaf_arc, /*to_split=*/true, matched_label);
                int partner = cube.generator_id(mask ^ (ResMask(1) << e), plabels);
                if (partner < 0) throw std::logic_error("matching partner left the variant");
                out.matching.pair(step.negative_twist ? gen : partner,
                                  step.negative_twist ? partner : gen);
                decided = true;
                break;
            }
            int leaf_circle = state.circle_of_arc[leaf_arc];
            int label = (labels >> leaf_circle) & 1u;
            if (label == matched_label) {
                uint32_t plabels = detail::transfer_labels_over_toggle(
                    cube, mask, labels, e, leaf_arc, /*to_split=*/false, matched_label);
                int partner = cube.generator_id(mask ^ (ResMask(1) << e), plabels);
                if (partner < 0) throw std::logic_error("matching partner left the variant");
                out.matching.pair(step.negative_twist ? partner : gen,
                                  step.negative_twist ? gen : partner);
                decided = true;
                break;
            }
            // Pass down to the smaller twist tree.
        }
        if (!decided) {
            // Critical cell: the unique unmatched state of the block.
            if (mask != d.critical_mask)
                throw std::logic_error("critical cell has unexpected resolution");
            out.critical_tree[gen] = t;
            int root_circle = state.circle_of_arc[d.gt.circle_min_arc[d.gt.root]];
            out.critical_sign[gen] = ((labels >> root_circle) & 1u) ? -1 : +1;
        }
    }
    return out;
}

} // namespace khst
