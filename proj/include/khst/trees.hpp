#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "khst/tait.hpp"

namespace khst {

struct SpanningTree {
    EdgeSet edges = 0;
};

/// Edge activity relative to a spanning tree and the fixed edge order.
/// Internal letters sit on tree edges, external letters on the rest; a letter
/// is live when the edge is the minimum of its cut (internal) or cycle
/// (external) set.
enum class Activity : uint8_t {
    IntLive,  // L
    IntDead,  // D
    ExtLive,  // l
    ExtDead,  // d
};

inline bool is_internal(Activity a) { return a == Activity::IntLive || a == Activity::IntDead; }
inline bool is_live(Activity a) { return a == Activity::IntLive || a == Activity::ExtLive; }

struct ActivityWord {
    std::vector<Activity> acts;   // per edge, in edge order
    std::vector<int> signs;       // edge signs, for rendering barred letters

    std::string token(int i) const {
        static const char* base[] = {"L", "D", "l", "d"};
        std::string t = base[static_cast<int>(acts[i])];
        if (signs[i] < 0) t += "-";
        return t;
    }
    std::string str() const {
        std::string s;
        for (size_t i = 0; i < acts.size(); ++i) s += token(static_cast<int>(i));
        return s;
    }
};

/// Per-crossing marker of the partial smoothing that defines the twisted
/// unknot: live edges stay unsmoothed (Star), dead edges resolve per the
/// activity/sign table.
enum class Smooth : uint8_t { A, B, Star };

struct PartialSmoothing {
    std::vector<Smooth> marks; // indexed by edge order position
    std::string str() const {
        std::string s;
        for (Smooth m : marks) s += (m == Smooth::A ? 'A' : m == Smooth::B ? 'B' : '*');
        return s;
    }
};

/// Resolution (A/B) assigned to every letter: for live letters this is the
/// resolution in the critical state; for dead letters the frozen smoothing.
///   L->B  D->A  l->A  d->B   and barred letters flip.
inline Res letter_resolution(Activity act, int sign) {
    bool a_res;
    switch (act) {
        case Activity::IntLive: a_res = false; break;
        case Activity::IntDead: a_res = true; break;
        case Activity::ExtLive: a_res = true; break;
        case Activity::ExtDead: a_res = false; break;
        default: a_res = true;
    }
    if (sign < 0) a_res = !a_res;
    return a_res ? Res::A : Res::B;
}

// ---------------------------------------------------------------------------
// Enumeration and activities
// ---------------------------------------------------------------------------

namespace detail {

inline void enumerate_trees_rec(const TaitGraph& g, int edge, EdgeSet chosen, DSU dsu,
                                int components_left, std::vector<SpanningTree>& out) {
    int m = g.n_edges();
    if (components_left == 1) {
        // Remaining edges are all excluded.
        out.push_back(SpanningTree{chosen});
        return;
    }
    if (edge == m) return;
    // Quick feasibility: can the remaining edges still connect everything?
    {
        DSU probe = dsu;
        int left = components_left;
        for (int e = edge; e < m && left > 1; ++e) {
            int a = probe.find(g.edge(e).a), b = probe.find(g.edge(e).b);
            if (a != b) {
                probe.unite(a, b);
                --left;
            }
        }
        if (left > 1) return;
    }
    const TaitEdge& e = g.edge(edge);
    bool loop = dsu.same(e.a, e.b);
    // Include the edge (unless it closes a cycle).
    if (!loop) {
        DSU next = dsu;
        next.unite(e.a, e.b);
        enumerate_trees_rec(g, edge + 1, chosen | (EdgeSet(1) << edge), next, components_left - 1,
                            out);
    }
    // Exclude the edge.
    enumerate_trees_rec(g, edge + 1, chosen, dsu, components_left, out);
}

} // namespace detail

/// All spanning trees, in a deterministic order (contraction/deletion over the
/// edge order, include-branch first).
inline std::vector<SpanningTree> enumerate_spanning_trees(const TaitGraph& g) {
    if (g.n_edges() > 30) throw TooLarge("spanning tree enumeration capped at 30 edges");
    std::vector<SpanningTree> out;
    detail::DSU dsu(g.n_vertices());
    detail::enumerate_trees_rec(g, 0, 0, dsu, g.n_vertices(), out);
    return out;
}

/// Edges of the cut defined by removing tree edge e (including e itself).
inline EdgeSet cut_set(const TaitGraph& g, const SpanningTree& t, int e) {
    detail::DSU dsu(g.n_vertices());
    for (int i = 0; i < g.n_edges(); ++i)
        if (has_edge(t.edges, i) && i != e) dsu.unite(g.edge(i).a, g.edge(i).b);
    EdgeSet cut = 0;
    for (int i = 0; i < g.n_edges(); ++i) {
        const TaitEdge& ed = g.edge(i);
        if (!dsu.same(ed.a, ed.b)) cut |= EdgeSet(1) << i;
    }
    return cut;
}

/// Edges of the unique cycle created by adding non-tree edge f (including f).
inline EdgeSet cyc_set(const TaitGraph& g, const SpanningTree& t, int f) {
    // Tree path between the endpoints of f, found by rooted parent walk.
    const int n = g.n_vertices();
    std::vector<int> parent_vertex(n, -1), parent_edge(n, -1), order;
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int i = 0; i < g.n_edges(); ++i)
        if (has_edge(t.edges, i)) {
            adj[g.edge(i).a].push_back({g.edge(i).b, i});
            adj[g.edge(i).b].push_back({g.edge(i).a, i});
        }
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {g.edge(f).a};
    seen[g.edge(f).a] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, e] : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                parent_vertex[w] = v;
                parent_edge[w] = e;
                stack.push_back(w);
            }
    }
    EdgeSet cyc = EdgeSet(1) << f;
    int v = g.edge(f).b;
    while (v != g.edge(f).a) {
        cyc |= EdgeSet(1) << parent_edge[v];
        v = parent_vertex[v];
    }
    return cyc;
}

inline ActivityWord activity_word(const TaitGraph& g, const SpanningTree& t) {
    ActivityWord w;
    w.acts.resize(g.n_edges());
    w.signs.resize(g.n_edges());
    for (int e = 0; e < g.n_edges(); ++e) {
        w.signs[e] = g.edge(e).sign;
        if (has_edge(t.edges, e)) {
            EdgeSet cut = cut_set(g, t, e);
            int min = __builtin_ctz(cut);
            w.acts[e] = (min == e) ? Activity::IntLive : Activity::IntDead;
        } else {
            EdgeSet cyc = cyc_set(g, t, e);
            int min = __builtin_ctz(cyc);
            w.acts[e] = (min == e) ? Activity::ExtLive : Activity::ExtDead;
        }
    }
    return w;
}

inline PartialSmoothing partial_smoothing(const ActivityWord& w) {
    PartialSmoothing p;
    p.marks.resize(w.acts.size());
    for (size_t e = 0; e < w.acts.size(); ++e) {
        if (is_live(w.acts[e])) {
            p.marks[e] = Smooth::Star;
        } else {
            p.marks[e] =
                letter_resolution(w.acts[e], w.signs[e]) == Res::A ? Smooth::A : Smooth::B;
        }
    }
    return p;
}

/// Generating relation of the partial order on spanning trees (before
/// transitive closure): T > T' iff every A of T' is A-or-star in T and some
/// coordinate moves A -> B.
inline bool tree_greater(const PartialSmoothing& x, const PartialSmoothing& y) {
    bool strict = false;
    for (size_t i = 0; i < x.marks.size(); ++i) {
        if (y.marks[i] == Smooth::A && x.marks[i] == Smooth::B) return false;
        if (x.marks[i] == Smooth::A && y.marks[i] == Smooth::B) strict = true;
    }
    return strict;
}

// ---------------------------------------------------------------------------
// Twist tree G(T) and matching word
// ---------------------------------------------------------------------------

/// Twist type of a live edge: negative twists pair by splitting (letters L and
/// barred-l), positive twists pair by merging (letters barred-L and l).
inline bool is_negative_twist(Activity act, int sign) {
    bool internal = is_internal(act);
    return (sign > 0) ? internal : !internal;
}

struct TwistTreeEdge {
    int edge = 0;          // Tait edge index (live edge of T)
    int va = 0, vb = 0;    // endpoints: indices into the critical circle list
    bool negative_twist = false;
};

/// The rooted tree G(T): vertices are the circles of the critical resolution
/// of U(T), edges are the live edges of T joining the two circles they merge.
struct TwistTree {
    int root = 0;                              // circle containing the dotted arc
    int n_vertices = 0;
    std::vector<TwistTreeEdge> edges;
    std::vector<int> circle_min_arc;           // identifying arc per vertex
    std::vector<Res> critical_resolution;      // per crossing
    EdgeSet critical_subgraph = 0;             // spanning subgraph of the critical state
};

inline TwistTree build_twist_tree(const TaitGraph& g, const SpanningTree& t,
                                  const ActivityWord& w) {
    TwistTree gt;
    for (int e = 0; e < g.n_edges(); ++e)
        if (is_internal(w.acts[e]) != has_edge(t.edges, e))
            throw std::logic_error("activity word does not belong to the tree");
    // Critical resolution: every letter resolves per the activity table.
    gt.critical_resolution.assign(g.diagram().n_crossings(), Res::A);
    for (int e = 0; e < g.n_edges(); ++e)
        gt.critical_resolution[g.edge(e).crossing] = letter_resolution(w.acts[e], w.signs[e]);
    gt.critical_subgraph = g.subgraph_of_resolution(gt.critical_resolution);

    auto circles = g.diagram().circles(gt.critical_resolution);
    gt.n_vertices = static_cast<int>(circles.size());
    std::vector<int> circle_of_arc(g.diagram().n_arcs(), -1);
    for (int ci = 0; ci < gt.n_vertices; ++ci) {
        gt.circle_min_arc.push_back(circles[ci].front());
        for (int a : circles[ci]) circle_of_arc[a] = ci;
    }
    gt.root = circle_of_arc[g.dotted_arc()];

    for (int e = 0; e < g.n_edges(); ++e) {
        if (!is_live(w.acts[e])) continue;
        // Toggling the live edge to its joined resolution merges two circles.
        auto res = gt.critical_resolution;
        int c = g.edge(e).crossing;
        res[c] = (res[c] == Res::A) ? Res::B : Res::A;
        auto joined = g.diagram().circles(res);
        // The two critical circles that vanish are the endpoints.
        std::vector<int> merged;
        {
            std::vector<bool> survives(gt.n_vertices, false);
            for (const auto& circ : joined) {
                // A critical circle survives iff it appears unchanged.
                int owner = circle_of_arc[circ.front()];
                if (circ == circles[owner]) survives[owner] = true;
            }
            for (int ci = 0; ci < gt.n_vertices; ++ci)
                if (!survives[ci]) merged.push_back(ci);
        }
        if (merged.size() != 2)
            throw std::logic_error("live edge does not merge exactly two critical circles");
        gt.edges.push_back(TwistTreeEdge{e, merged[0], merged[1],
                                         is_negative_twist(w.acts[e], w.signs[e])});
    }

    // G(T) must be a spanning tree of its vertex set.
    if (gt.n_vertices != static_cast<int>(gt.edges.size()) + 1)
        throw std::logic_error("twist tree is not a tree");
    detail::DSU dsu(gt.n_vertices);
    for (const auto& e : gt.edges) {
        if (dsu.same(e.va, e.vb)) throw std::logic_error("twist tree has a cycle");
        dsu.unite(e.va, e.vb);
    }
    return gt;
}

/// One step of the inductive matching: the live edge processed and its leaf
/// vertex (as an index into the twist-tree circle list).
struct MatchingStep {
    int edge = 0;      // Tait edge index
    int leaf_vertex = 0;
    bool negative_twist = false;
};

/// Peeling order of the inductive matching: repeatedly remove the least-ordered
/// leaf edge whose degree-1 endpoint is not the root.
inline std::vector<MatchingStep> matching_order(const TwistTree& gt) {
    int n = gt.n_vertices;
    std::vector<int> degree(n, 0);
    std::vector<bool> edge_alive(gt.edges.size(), true);
    for (const auto& e : gt.edges) {
        degree[e.va]++;
        degree[e.vb]++;
    }
    std::vector<MatchingStep> steps;
    for (size_t round = 0; round < gt.edges.size(); ++round) {
        int best = -1;
        int best_leaf = -1;
        for (size_t k = 0; k < gt.edges.size(); ++k) {
            if (!edge_alive[k]) continue;
            const auto& e = gt.edges[k];
            int leaf = -1;
            if (degree[e.va] == 1 && e.va != gt.root) leaf = e.va;
            else if (degree[e.vb] == 1 && e.vb != gt.root) leaf = e.vb;
            if (leaf < 0) continue;
            if (best < 0 || gt.edges[k].edge < gt.edges[best].edge) {
                best = static_cast<int>(k);
                best_leaf = leaf;
            }
        }
        if (best < 0) throw std::logic_error("no leaf available while peeling twist tree");
        steps.push_back(MatchingStep{gt.edges[best].edge, best_leaf, gt.edges[best].negative_twist});
        edge_alive[best] = false;
        degree[gt.edges[best].va]--;
        degree[gt.edges[best].vb]--;
    }
    return steps;
}

/// The matching word lists the live edges in reverse peeling order (base case
/// first), each suffixed with its edge-order position (1-based).
struct MatchingWord {
    std::vector<std::pair<std::string, int>> letters; // (letter token, 1-based edge position)
    std::string str() const {
        std::string s;
        for (const auto& [tok, idx] : letters) s += tok + std::to_string(idx);
        return s;
    }
};

inline MatchingWord matching_word(const TaitGraph& g, const ActivityWord& w,
                                  const std::vector<MatchingStep>& steps) {
    (void)g;
    MatchingWord mw;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        ActivityWord tmp;
        tmp.acts = {w.acts[it->edge]};
        tmp.signs = {w.signs[it->edge]};
        mw.letters.push_back({tmp.token(0), it->edge + 1});
    }
    return mw;
}

// ---------------------------------------------------------------------------
// Chains in the partial order
// ---------------------------------------------------------------------------

/// All smoothing tuples, precomputed for chain enumeration over a tree family.
struct TreeFamily {
    std::vector<SpanningTree> trees;
    std::vector<ActivityWord> words;
    std::vector<PartialSmoothing> smoothings;

    static TreeFamily of(const TaitGraph& g) {
        TreeFamily f;
        f.trees = enumerate_spanning_trees(g);
        f.words.reserve(f.trees.size());
        f.smoothings.reserve(f.trees.size());
        for (const auto& t : f.trees) {
            f.words.push_back(activity_word(g, t));
            f.smoothings.push_back(partial_smoothing(f.words.back()));
        }
        return f;
    }

    int index_of(EdgeSet edges) const {
        for (size_t i = 0; i < trees.size(); ++i)
            if (trees[i].edges == edges) return static_cast<int>(i);
        return -1;
    }
};

/// All chains t_from = T_1 > T_2 > ... > T_k = t_to in the generating
/// relation, each returned with both endpoints included.
inline std::vector<std::vector<int>> enumerate_chains(const TreeFamily& f, int from, int to) {
    std::vector<std::vector<int>> out;
    if (from == to) return out;
    std::vector<int> path = {from};
    // DFS over the generating relation.
    std::vector<std::vector<int>> succ(f.trees.size());
    for (size_t a = 0; a < f.trees.size(); ++a)
        for (size_t b = 0; b < f.trees.size(); ++b)
            if (a != b && tree_greater(f.smoothings[a], f.smoothings[b]))
                succ[a].push_back(static_cast<int>(b));
    struct Rec {
        const std::vector<std::vector<int>>& succ;
        int to;
        std::vector<std::vector<int>>& out;
        std::vector<int>& path;
        void go(int v) {
            if (v == to) {
                out.push_back(path);
                return;
            }
            for (int w : succ[v]) {
                path.push_back(w);
                go(w);
                path.pop_back();
            }
        }
    } rec{succ, to, out, path};
    for (int w : succ[from]) {
        path.push_back(w);
        rec.go(w);
        path.pop_back();
    }
    return out;
}

} // namespace khst
