#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "khst/morse.hpp"

namespace khst {

struct STGenerator {
    int tree = 0;  // index into the tree family
    int sign = +1; // +1 for root label 1, -1 for root label x
    int i = 0, j = 0;
    int cube_gen = 0;
};

/// The spanning tree complex of a link diagram: one generator per tree (and
/// sign, in the unreduced and Lee variants), with the Morse path-sum
/// differential of the per-tree inductive matching.
struct STComplex {
    Variant variant = Variant::Unreduced;
    std::vector<STGenerator> gens;
    BigradedComplex cx;

    int index_of(int tree, int sign) const {
        for (size_t k = 0; k < gens.size(); ++k)
            if (gens[k].tree == tree && gens[k].sign == sign) return static_cast<int>(k);
        return -1;
    }
};

/// Everything produced along the way; kept so downstream consumers (maps f/g,
/// the s-invariant, dumps) can reuse the matching and the cube.
struct STBuild {
    TreeFamily fam;
    std::vector<TreeMatchingData> tmd;
    std::shared_ptr<CubeComplex> cube;
    KhovanovMatching km;
    MorseComplex morse;
    STComplex st;
};

inline STBuild build_st_complex(const TaitGraph& g, Variant variant) {
    STBuild b;
    b.fam = TreeFamily::of(g);
    b.tmd = build_tree_matching_data(g, b.fam);
    b.cube = std::make_shared<CubeComplex>(CubeComplex::over_tait(g, variant));
    auto table = tree_of_mask_table(g, b.fam);
    b.km = khovanov_matching(*b.cube, g, b.fam, b.tmd, table);
    b.morse = morse_differential(b.cube->complex(), b.km.matching);

    // Order generators by (tree, sign descending so + precedes -).
    b.st.variant = variant;
    std::vector<int> order(b.morse.critical.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    auto key = [&](int k) {
        int cg = b.morse.critical[k];
        return std::make_pair(b.km.critical_tree[cg], -b.km.critical_sign[cg]);
    };
    std::sort(order.begin(), order.end(), [&](int x, int y) { return key(x) < key(y); });
    std::vector<int> new_index(order.size());
    for (size_t k = 0; k < order.size(); ++k) new_index[order[k]] = static_cast<int>(k);

    b.st.cx.j_filtered = b.morse.cx.j_filtered;
    for (size_t k = 0; k < order.size(); ++k) {
        int old = order[k];
        int cg = b.morse.critical[old];
        STGenerator gen;
        gen.tree = b.km.critical_tree[cg];
        gen.sign = b.km.critical_sign[cg];
        gen.i = b.morse.cx.grade_i[old];
        gen.j = b.morse.cx.grade_j[old];
        gen.cube_gen = cg;
        b.st.gens.push_back(gen);
        b.st.cx.add_generator(gen.i, gen.j);
    }
    for (size_t k = 0; k < order.size(); ++k) {
        int old = order[k];
        for (auto [t, c] : b.morse.cx.diff[old])
            b.st.cx.add_entry(static_cast<int>(k), new_index[t], c);
    }
    b.st.cx.compress();
    return b;
}

// ---------------------------------------------------------------------------
// Subpath census
// ---------------------------------------------------------------------------

enum class SubpathKind {
    Negative,
    Positive,
    RootedNegative,
    RootedPositive,
    GeneralizedRootedPositive,
};

/// One component of a subpath: a descending path in the rooted twist tree.
struct SubpathComponent {
    std::vector<int> edges;   // twist-tree edge indices, top-down
    int top_vertex = 0;       // vertex closest to the root
    int bottom_vertex = 0;    // deepest vertex
    int top_label = -1;       // generalized kind: chosen label of the top vertex
};

struct Subpath {
    std::vector<SubpathComponent> components;
};

namespace detail {

/// Parent structure of the rooted twist tree.
struct RootedTwistTree {
    std::vector<int> parent_vertex;
    std::vector<int> parent_edge; // twist-tree edge index to the parent
    std::vector<int> depth;

    RootedTwistTree(const TwistTree& gt) {
        int n = gt.n_vertices;
        parent_vertex.assign(n, -1);
        parent_edge.assign(n, -1);
        depth.assign(n, 0);
        std::vector<std::vector<std::pair<int, int>>> adj(n);
        for (size_t k = 0; k < gt.edges.size(); ++k) {
            adj[gt.edges[k].va].push_back({gt.edges[k].vb, static_cast<int>(k)});
            adj[gt.edges[k].vb].push_back({gt.edges[k].va, static_cast<int>(k)});
        }
        std::vector<int> stack = {gt.root};
        std::vector<bool> seen(n, false);
        seen[gt.root] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, e] : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    parent_vertex[w] = v;
                    parent_edge[w] = e;
                    depth[w] = depth[v] + 1;
                    stack.push_back(w);
                }
        }
    }
};

inline void census_rec(const TwistTree& gt, const RootedTwistTree& rt,
                       const std::vector<bool>& eligible, SubpathKind kind, size_t vertex,
                       std::vector<bool>& vertex_used, Subpath& cur, std::vector<Subpath>& out) {
    if (vertex == static_cast<size_t>(gt.n_vertices)) {
        out.push_back(cur);
        return;
    }
    // Choice: no component starts (bottoms out) at this vertex.
    census_rec(gt, rt, eligible, kind, vertex + 1, vertex_used, cur, out);
    if (vertex_used[vertex]) return;
    // Choice: a component whose deepest vertex is `vertex`, extending upward.
    int v = static_cast<int>(vertex);
    SubpathComponent comp;
    comp.bottom_vertex = v;
    std::vector<int> covered = {v};
    int cur_v = v;
    while (rt.parent_edge[cur_v] >= 0 && eligible[rt.parent_edge[cur_v]] &&
           !vertex_used[rt.parent_vertex[cur_v]]) {
        comp.edges.insert(comp.edges.begin(), rt.parent_edge[cur_v]);
        cur_v = rt.parent_vertex[cur_v];
        covered.push_back(cur_v);
        comp.top_vertex = cur_v;
        bool top_may_be_root =
            (kind == SubpathKind::RootedNegative || kind == SubpathKind::RootedPositive ||
             kind == SubpathKind::GeneralizedRootedPositive);
        if (cur_v == gt.root && !top_may_be_root) break; // cannot use this as top
        if (cur_v != gt.root || top_may_be_root) {
            for (int w : covered) vertex_used[w] = true;
            cur.components.push_back(comp);
            if (kind == SubpathKind::GeneralizedRootedPositive) {
                for (int lbl = 0; lbl < 2; ++lbl) {
                    cur.components.back().top_label = lbl;
                    census_rec(gt, rt, eligible, kind, vertex + 1, vertex_used, cur, out);
                }
            } else {
                census_rec(gt, rt, eligible, kind, vertex + 1, vertex_used, cur, out);
            }
            cur.components.pop_back();
            for (int w : covered) vertex_used[w] = false;
        }
        if (cur_v == gt.root) break;
    }
}

} // namespace detail

/// Enumerate the subpaths of the twist tree per the combinatorial definitions:
/// vertex-disjoint descending paths whose edges carry the required letters
/// (positive twists for the negative kinds, negative twists for the positive
/// kinds), with the top vertex away from the root unless rooted. Includes the
/// empty subpath, which corresponds to the trivial alternating path.
inline std::vector<Subpath> subpath_census(const TwistTree& gt, SubpathKind kind) {
    detail::RootedTwistTree rt(gt);
    std::vector<bool> eligible(gt.edges.size());
    for (size_t k = 0; k < gt.edges.size(); ++k) {
        bool positive_twist = !gt.edges[k].negative_twist;
        bool want_positive_twist =
            (kind == SubpathKind::Negative || kind == SubpathKind::RootedNegative);
        eligible[k] = (positive_twist == want_positive_twist);
    }
    std::vector<Subpath> out;
    std::vector<bool> vertex_used(gt.n_vertices, false);
    Subpath cur;
    detail::census_rec(gt, rt, eligible, kind, 0, vertex_used, cur, out);
    return out;
}

/// The enhanced state reached by the alternating path of a subpath: labels of
/// the critical cell, with each component flipped to x except its deepest
/// vertex (negative kinds), or to 1 except its deepest vertex (positive
/// kinds).
inline std::pair<ResMask, uint32_t> subpath_state(const CubeComplex& cube,
                                                  const TreeMatchingData& d, int root_label,
                                                  const Subpath& sp, SubpathKind kind) {
    ResMask mask = d.critical_mask;
    const auto& state = cube.state_data(mask);
    // Critical labels: twist labels on non-root vertices, root_label on root.
    uint32_t labels = 0;
    std::vector<int> circle_of_vertex(d.gt.n_vertices);
    for (int v = 0; v < d.gt.n_vertices; ++v)
        circle_of_vertex[v] = state.circle_of_arc[d.gt.circle_min_arc[v]];
    detail::RootedTwistTree rt(d.gt);
    for (int v = 0; v < d.gt.n_vertices; ++v) {
        int lbl;
        if (v == d.gt.root) {
            lbl = root_label;
        } else {
            lbl = d.gt.edges[rt.parent_edge[v]].negative_twist ? 0 : 1;
        }
        if (lbl) labels |= 1u << circle_of_vertex[v];
    }
    bool negative_kind = (kind == SubpathKind::Negative || kind == SubpathKind::RootedNegative);
    for (const auto& comp : sp.components) {
        // Vertices of the component: top, interior, bottom.
        std::vector<int> vertices = {comp.bottom_vertex};
        int v = comp.bottom_vertex;
        for (size_t k = comp.edges.size(); k-- > 0;) {
            v = rt.parent_vertex[v];
            vertices.push_back(v);
        }
        for (int w : vertices) {
            int circle = circle_of_vertex[w];
            int lbl;
            if (w == comp.bottom_vertex) lbl = negative_kind ? 0 : 1;
            else lbl = negative_kind ? 1 : 0;
            if (kind == SubpathKind::GeneralizedRootedPositive && w == comp.top_vertex)
                lbl = comp.top_label;
            if (lbl) labels |= 1u << circle;
            else labels &= ~(1u << circle);
        }
    }
    return {mask, labels};
}

// ---------------------------------------------------------------------------
// Combinatorial incidence (the fast path, cross-checked against morse)
// ---------------------------------------------------------------------------

namespace detail {

/// All generator ids of a tree block in the cube.
inline std::vector<int> block_generators(const CubeComplex& cube, const TaitGraph& g,
                                         const TreeFamily& fam, int tree) {
    const ActivityWord& w = fam.words[tree];
    ResMask frozen = 0;
    std::vector<int> live;
    for (int e = 0; e < g.n_edges(); ++e) {
        if (is_live(w.acts[e])) live.push_back(e);
        else if (letter_resolution(w.acts[e], w.signs[e]) == Res::B) frozen |= ResMask(1) << e;
    }
    std::vector<int> out;
    for (uint32_t bits = 0; bits < (1u << live.size()); ++bits) {
        ResMask mask = frozen;
        for (size_t k = 0; k < live.size(); ++k)
            if ((bits >> k) & 1u) mask |= ResMask(1) << live[k];
        const auto& dat = cube.state_data(mask);
        for (uint32_t rank = 0; rank < dat.n_labelings; ++rank)
            out.push_back(dat.base_id + rank);
    }
    return out;
}

} // namespace detail

/// Compute the incidence between two signed trees by summing, over every chain
/// in the partial order, the alternating-path transfer through the chain's
/// broken paths. Must agree with the Morse path sum.
inline int64_t incidence_combinatorial(const CubeComplex& cube, const TaitGraph& g,
                                       const TreeFamily& fam,
                                       const std::vector<TreeMatchingData>& tmd,
                                       const KhovanovMatching& km,
                                       const std::vector<int>& tree_of_mask, int tree_from,
                                       int sign_from, int tree_to, int sign_to) {
    // Locate the critical generators.
    auto critical_gen = [&](int tree, int sign) {
        ResMask mask = tmd[tree].critical_mask;
        const auto& dat = cube.state_data(mask);
        for (uint32_t rank = 0; rank < dat.n_labelings; ++rank) {
            int gen = dat.base_id + rank;
            if (km.critical_tree[gen] == tree && km.critical_sign[gen] == sign) return gen;
        }
        return -1;
    };
    int gen_from = critical_gen(tree_from, sign_from);
    int gen_to = critical_gen(tree_to, sign_to);
    if (gen_from < 0 || gen_to < 0) return 0;
    const auto& cx = cube.complex();
    if (cx.grade_i[gen_to] != cx.grade_i[gen_from] + 1) return 0;

    auto chains = enumerate_chains(fam, tree_from, tree_to);
    if (tree_from == tree_to) return 0;
    int64_t total = 0;

    detail::HasseDigraph hm(cx, km.matching);
    for (const auto& chain : chains) {
        const std::vector<int>& blocks = chain;
        // Frontier: path-sum coefficients on states of the current block.
        std::map<int, int64_t> frontier = {{gen_from, 1}};
        for (size_t step = 0; step < blocks.size(); ++step) {
            int tree = blocks[step];
            // Closure within the block: path sums along intra-block edges.
            auto gens = detail::block_generators(cube, g, fam, tree);
            std::map<int, int> pos;
            for (size_t k = 0; k < gens.size(); ++k) pos[gens[k]] = static_cast<int>(k);
            // Topological DP over the block's H_M restricted to block states.
            // Kahn-style: order by repeated relaxation (the block DAG is small).
            std::vector<int64_t> T(gens.size(), 0);
            for (auto [s, c] : frontier) {
                auto it = pos.find(s);
                if (it == pos.end()) throw std::logic_error("frontier left its block");
                T[it->second] += c;
            }
            // Topo order via DFS.
            std::vector<int8_t> state(gens.size(), 0);
            std::vector<int> topo;
            std::vector<std::pair<int, size_t>> stack;
            for (size_t s0 = 0; s0 < gens.size(); ++s0) {
                if (state[s0] != 0) continue;
                stack.push_back({static_cast<int>(s0), 0});
                state[s0] = 1;
                while (!stack.empty()) {
                    auto& [v, k] = stack.back();
                    bool advanced = false;
                    while (k < hm.out[gens[v]].size()) {
                        int u = hm.out[gens[v]][k].first;
                        ++k;
                        auto it = pos.find(u);
                        if (it == pos.end()) continue;
                        if (state[it->second] == 0) {
                            state[it->second] = 1;
                            stack.push_back({it->second, 0});
                            advanced = true;
                            break;
                        }
                    }
                    if (!advanced && k >= hm.out[gens[v]].size()) {
                        state[v] = 2;
                        topo.push_back(v);
                        stack.pop_back();
                    }
                }
            }
            std::reverse(topo.begin(), topo.end());
            for (int v : topo) {
                if (T[v] == 0) continue;
                for (auto [u, w] : hm.out[gens[v]]) {
                    auto it = pos.find(u);
                    if (it != pos.end()) T[it->second] += T[v] * w;
                }
            }
            if (step + 1 == blocks.size()) {
                frontier.clear();
                auto it = pos.find(gen_to);
                if (it != pos.end()) total += T[it->second];
                break;
            }
            // Cross to the next block along plain differential edges.
            int next_tree = blocks[step + 1];
            std::map<int, int64_t> next_frontier;
            for (size_t v = 0; v < gens.size(); ++v) {
                if (T[v] == 0) continue;
                int gv = gens[v];
                for (auto [u, w] : cx.diff[gv]) {
                    if (tree_of_mask[cube.mask_of(u)] != next_tree) continue;
                    if (km.matching.partner[gv] == u) continue; // matched edges stay in-block anyway
                    next_frontier[u] += T[v] * w;
                }
            }
            frontier = std::move(next_frontier);
            if (frontier.empty()) break;
        }
    }
    return total;
}

} // namespace khst
