#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "khst/homology.hpp"
#include "khst/stc.hpp"

namespace khst {

/// The orientation preserving tree: the spanning tree whose critical cells
/// realize the oriented resolution, together with its induced four-block edge
/// order.
struct OrientationTree {
    std::vector<bool> red;        // per edge of the input graph (old order)
    EdgeSet tree = 0;             // the spanning tree, in the old edge order
    std::vector<int> edge_order;  // permutation: new position -> old index
    TaitGraph reordered;          // the graph carrying the four-block order
    EdgeSet tree_reordered = 0;   // the tree in the new order
    int tree_index = -1;          // index in the reordered enumeration
};

/// Red edges are those whose oriented (Seifert) smoothing joins the two black
/// regions, i.e. whose Tait sign equals the writhe sign of the crossing.
inline std::vector<bool> red_edges(const TaitGraph& g) {
    std::vector<bool> red(g.n_edges());
    for (int e = 0; e < g.n_edges(); ++e) {
        Res oriented = g.diagram().oriented_resolution(g.edge(e).crossing);
        bool joins_black = (g.edge(e).sign > 0) ? (oriented == Res::A) : (oriented == Res::B);
        red[e] = joins_black;
    }
    return red;
}

namespace detail {

/// Remove removable edges of the given class (largest index first) while the
/// subgraph stays connected on its own vertex set.
inline void remove_until_minimal(const TaitGraph& g, EdgeSet& sub,
                                 const std::vector<int>& candidates) {
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        int e = *it;
        if (!has_edge(sub, e)) continue;
        EdgeSet without = sub & ~(EdgeSet(1) << e);
        // Removable iff the endpoints stay connected within `without`.
        DSU dsu(g.n_vertices());
        for (int k = 0; k < g.n_edges(); ++k)
            if (has_edge(without, k)) dsu.unite(g.edge(k).a, g.edge(k).b);
        if (dsu.same(g.edge(e).a, g.edge(e).b)) sub = without;
    }
}

} // namespace detail

/// Execute the H1 -> H2 -> H3 -> H4 construction and install the four-block
/// order  {red removed} < {black in tree} < {red in tree} < {black removed}.
/// Verifies the resulting activity pattern and the oriented-resolution
/// correspondence; violations signal a coloring-convention bug.
inline OrientationTree build_orientation_tree(const TaitGraph& g) {
    if (!g.diagram().orientable())
        throw MissingOrientation("orientation preserving tree needs an oriented diagram");
    if (g.diagram().n_components() != 1)
        throw NotAKnot("orientation preserving tree implemented for knots");

    OrientationTree ot;
    ot.red = red_edges(g);

    // Observation: every red edge lies on a red cycle.
    {
        for (int e = 0; e < g.n_edges(); ++e) {
            if (!ot.red[e]) continue;
            detail::DSU dsu(g.n_vertices());
            for (int k = 0; k < g.n_edges(); ++k)
                if (ot.red[k] && k != e) dsu.unite(g.edge(k).a, g.edge(k).b);
            if (!dsu.same(g.edge(e).a, g.edge(e).b))
                throw ObservationViolated("red edge " + std::to_string(e + 1) +
                                          " is not on a red cycle");
        }
    }

    // H1: all red edges. H2: spanning forest of H1, removing positive red
    // edges first, then negative red.
    EdgeSet h = 0;
    for (int e = 0; e < g.n_edges(); ++e)
        if (ot.red[e]) h |= EdgeSet(1) << e;
    std::vector<int> pos_red, neg_red, pos_black, neg_black;
    for (int e = 0; e < g.n_edges(); ++e) {
        if (ot.red[e]) (g.edge(e).sign > 0 ? pos_red : neg_red).push_back(e);
        else (g.edge(e).sign > 0 ? pos_black : neg_black).push_back(e);
    }
    detail::remove_until_minimal(g, h, pos_red);
    detail::remove_until_minimal(g, h, neg_red);
    // H3: add all black edges; H4: remove positive black, then negative black.
    for (int e : pos_black) h |= EdgeSet(1) << e;
    for (int e : neg_black) h |= EdgeSet(1) << e;
    detail::remove_until_minimal(g, h, pos_black);
    detail::remove_until_minimal(g, h, neg_black);
    ot.tree = h;
    if (!g.subgraph_connects_all(h) || !g.subgraph_acyclic(h))
        throw ObservationViolated("orientation tree construction did not produce a tree");

    // Four-block order.
    for (int e = 0; e < g.n_edges(); ++e)
        if (ot.red[e] && !has_edge(h, e)) ot.edge_order.push_back(e);
    for (int e = 0; e < g.n_edges(); ++e)
        if (!ot.red[e] && has_edge(h, e)) ot.edge_order.push_back(e);
    for (int e = 0; e < g.n_edges(); ++e)
        if (ot.red[e] && has_edge(h, e)) ot.edge_order.push_back(e);
    for (int e = 0; e < g.n_edges(); ++e)
        if (!ot.red[e] && !has_edge(h, e)) ot.edge_order.push_back(e);
    ot.reordered = g.with_edge_order(ot.edge_order);
    ot.tree_reordered = 0;
    for (int k = 0; k < g.n_edges(); ++k)
        if (has_edge(h, ot.edge_order[k])) ot.tree_reordered |= EdgeSet(1) << k;

    // Verify the promised activity pattern.
    ActivityWord w = activity_word(ot.reordered, SpanningTree{ot.tree_reordered});
    for (int k = 0; k < g.n_edges(); ++k) {
        int old = ot.edge_order[k];
        bool in_tree = has_edge(ot.tree, old);
        Activity expect;
        if (ot.red[old] && !in_tree) expect = Activity::ExtLive;
        else if (!ot.red[old] && in_tree) expect = Activity::IntLive;
        else if (ot.red[old] && in_tree) expect = Activity::IntDead;
        else expect = Activity::ExtDead;
        if (w.acts[k] != expect)
            throw ObservationViolated("orientation tree activity pattern failed at edge " +
                                      std::to_string(old + 1));
    }
    // The critical subgraph must realize the oriented resolution.
    {
        std::vector<Res> expect(g.diagram().n_crossings());
        for (int c = 0; c < g.diagram().n_crossings(); ++c)
            expect[c] = g.diagram().oriented_resolution(c);
        std::vector<Res> got(g.diagram().n_crossings(), Res::A);
        for (int k = 0; k < g.n_edges(); ++k)
            got[ot.reordered.edge(k).crossing] = letter_resolution(w.acts[k], w.signs[k]);
        if (got != expect)
            throw ObservationViolated("critical cells do not realize the oriented resolution");
    }
    return ot;
}

struct SInvariantReport {
    int s_st_plus = 0;   // filtration level of [T_o^+]
    int s_st_minus = 0;  // filtration level of [T_o^-]
    int s = 0;           // (s+ + s-) / 2
    int j_plus = 0;      // j(T_o^+)
    int lobb_bound = 0;  // j(T_o^+) - 1, equal to the Seifert-graph expression
};

/// Index of the orientation tree in the tree family of the reordered graph.
inline int find_tree_index(const TreeFamily& fam, EdgeSet tree) {
    int t = fam.index_of(tree);
    if (t < 0) throw std::logic_error("orientation tree missing from enumeration");
    return t;
}

/// The Lee spanning-tree complex in the orientation-tree order, with the
/// filtration levels of the classes [T_o^+/-].
inline SInvariantReport s_invariant(const TaitGraph& g) {
    OrientationTree ot = build_orientation_tree(g);
    STBuild lee = build_st_complex(ot.reordered, Variant::Lee);
    int tree = find_tree_index(lee.fam, ot.tree_reordered);
    int gp = lee.st.index_of(tree, +1);
    int gm = lee.st.index_of(tree, -1);
    if (gp < 0 || gm < 0) throw std::logic_error("orientation tree generators missing");
    if (lee.st.gens[gp].i != 0 || lee.st.gens[gm].i != 0)
        throw ObservationViolated("orientation tree generators must sit at i = 0");

    SInvariantReport rep;
    rep.j_plus = lee.st.gens[gp].j;
    rep.s_st_plus = filtered_homology_level(lee.st.cx, Chain{{gp, 1}});
    rep.s_st_minus = filtered_homology_level(lee.st.cx, Chain{{gm, 1}});
    if ((rep.s_st_plus + rep.s_st_minus) % 2 != 0)
        throw std::logic_error("filtration levels of the two classes have odd sum");
    rep.s = (rep.s_st_plus + rep.s_st_minus) / 2;
    rep.lobb_bound = rep.j_plus - 1;
    if (rep.s < rep.lobb_bound)
        throw ObservationViolated("s fell below the quantum-grading lower bound");
    return rep;
}

/// The Lee ST differential must vanish on the orientation-tree generators.
inline bool verify_cycle(const STComplex& lee_st, int tree_index, std::string* offender = nullptr) {
    for (int sign : {+1, -1}) {
        int gen = lee_st.index_of(tree_index, sign);
        if (gen < 0) return false;
        for (auto [t, c] : lee_st.cx.diff[gen])
            if (c != 0) {
                if (offender)
                    *offender = "T_o" + std::string(sign > 0 ? "+" : "-") + " hits tree " +
                                std::to_string(lee_st.gens[t].tree + 1);
                return false;
            }
    }
    return true;
}

/// Independent route to s: the Lee cube complex and the filtration levels of
/// the classes  s_o +- s_obar.
inline int s_invariant_cube_oracle(const TaitGraph& g) {
    CubeComplex lee = CubeComplex::over_tait(g, Variant::Lee);
    Chain so = oriented_resolution_generator(lee, false);
    Chain sobar = oriented_resolution_generator(lee, true);
    Chain plus = so, minus = so;
    for (auto [gen, c] : sobar) {
        chain_add(plus, gen, c);
        chain_add(minus, gen, -c);
    }
    chain_compress(plus);
    chain_compress(minus);
    int lp = filtered_homology_level(lee.complex(), plus);
    int lm = filtered_homology_level(lee.complex(), minus);
    return (lp + lm) / 2;
}

/// The Seifert-graph form of the quantum-grading lower bound:
///   w(D) - #nodes(T(D)) + 2 #components(T+(D)) - 1.
inline int lobb_bound_seifert(const TaitGraph& g) {
    const LinkDiagram& d = g.diagram();
    std::vector<Res> res(d.n_crossings());
    for (int c = 0; c < d.n_crossings(); ++c) res[c] = d.oriented_resolution(c);
    auto circles = d.circles(res);
    int nodes = static_cast<int>(circles.size());
    std::vector<int> circle_of_arc(d.n_arcs(), -1);
    for (size_t c = 0; c < circles.size(); ++c)
        for (int a : circles[c]) circle_of_arc[a] = static_cast<int>(c);
    // T+(D): keep only positive crossings as edges.
    detail::DSU dsu(nodes);
    for (int c = 0; c < d.n_crossings(); ++c) {
        if (d.crossing_sign(c) <= 0) continue;
        int a0 = d.arc_at(c, 0);
        int a2 = d.arc_at(c, 2);
        dsu.unite(circle_of_arc[a0], circle_of_arc[a2]);
    }
    std::set<int> comps;
    for (int v = 0; v < nodes; ++v) comps.insert(dsu.find(v));
    int w = d.writhe();
    return w - nodes + 2 * static_cast<int>(comps.size()) - 1;
}

/// Quantum-grading route to the same bound: j(T_o^+) - 1.
inline int lobb_bound(const TaitGraph& g) {
    OrientationTree ot = build_orientation_tree(g);
    TreeFamily fam = TreeFamily::of(ot.reordered);
    int tree = find_tree_index(fam, ot.tree_reordered);
    auto tmd = build_tree_matching_data(ot.reordered, fam);
    CubeComplex cube = CubeComplex::over_tait(ot.reordered, Variant::Unreduced);
    // j(T_o^+): root labeled 1, other circles by twist type.
    ResMask mask = tmd[tree].critical_mask;
    const auto& dat = cube.state_data(mask);
    detail::RootedTwistTree rt(tmd[tree].gt);
    uint32_t labels = 0;
    for (int v = 0; v < tmd[tree].gt.n_vertices; ++v) {
        if (v == tmd[tree].gt.root) continue;
        bool neg = tmd[tree].gt.edges[rt.parent_edge[v]].negative_twist;
        if (!neg) labels |= 1u << dat.circle_of_arc[tmd[tree].gt.circle_min_arc[v]];
    }
    int gen = cube.generator_id(mask, labels);
    int j_plus = cube.complex().grade_j[gen];
    int bound = j_plus - 1;
    int seifert = lobb_bound_seifert(g);
    if (bound != seifert)
        throw ObservationViolated("quantum-grading bound disagrees with the Seifert-graph form");
    return bound;
}

/// The distinguished oriented-resolution cycle f(T_o^+) in the unreduced
/// Khovanov cube complex with the orientation-tree order.
struct DistinguishedCycle {
    OrientationTree ot;
    std::shared_ptr<CubeComplex> cube;
    Chain cycle;
};

inline DistinguishedCycle distinguished_cycle(const TaitGraph& g) {
    DistinguishedCycle out;
    out.ot = build_orientation_tree(g);
    const TaitGraph& rg = out.ot.reordered;
    TreeFamily fam = TreeFamily::of(rg);
    auto tmd = build_tree_matching_data(rg, fam);
    out.cube = std::make_shared<CubeComplex>(CubeComplex::over_tait(rg, Variant::Unreduced));
    auto table = tree_of_mask_table(rg, fam);
    KhovanovMatching km = khovanov_matching(*out.cube, rg, fam, tmd, table);
    int tree = find_tree_index(fam, out.ot.tree_reordered);
    // Locate the critical generator T_o^+ and push it through f.
    int gen_plus = -1;
    ResMask mask = tmd[tree].critical_mask;
    const auto& dat = out.cube->state_data(mask);
    for (uint32_t rank = 0; rank < dat.n_labelings; ++rank) {
        int gen = dat.base_id + rank;
        if (km.critical_tree[gen] == tree && km.critical_sign[gen] == +1) gen_plus = gen;
    }
    if (gen_plus < 0) throw std::logic_error("critical generator T_o^+ not found");
    out.cycle = f_map(out.cube->complex(), km.matching, gen_plus);
    return out;
}

} // namespace khst
