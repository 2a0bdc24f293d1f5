#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "khst/homology.hpp"
#include "khst/stc.hpp"

namespace khst {

struct TorsionCertificate {
    std::vector<int> edge_order; // ear-decomposition order (old edge indices)
    EdgeSet tree = 0;            // T, in the new order
    EdgeSet tree_prime = 0;      // T', in the new order
    int cycle_length = 0;        // |E(G_0)|
    int64_t incidence = 0;       // Gamma(T'^+, T^-); must be +-2
    bool torsion_found = false;  // Z2 seen in the ST homology
    bool used_dual = false;      // witness computed on the dual (all-negative case)
};

namespace detail {

/// A cycle with at least three distinct vertices, as an edge sequence.
inline std::vector<int> find_long_cycle(const TaitGraph& g) {
    // DFS on the simple graph; parallel edges never give length >= 3.
    int n = g.n_vertices();
    for (int start = 0; start < n; ++start) {
        std::vector<int> parent_edge(n, -1), parent_vertex(n, -1);
        std::vector<int> color(n, 0);
        std::vector<int> order;
        // Iterative DFS recording a back edge spanning >= 2 tree levels.
        struct Frame { int v; size_t k; };
        std::vector<Frame> stack = {{start, 0}};
        color[start] = 1;
        std::vector<std::vector<std::pair<int, int>>> adj(n);
        for (int e = 0; e < g.n_edges(); ++e) {
            adj[g.edge(e).a].push_back({g.edge(e).b, e});
            adj[g.edge(e).b].push_back({g.edge(e).a, e});
        }
        std::vector<int> depth(n, 0);
        while (!stack.empty()) {
            auto& f = stack.back();
            if (f.k < adj[f.v].size()) {
                auto [w, e] = adj[f.v][f.k++];
                if (color[w] == 0) {
                    color[w] = 1;
                    parent_vertex[w] = f.v;
                    parent_edge[w] = e;
                    depth[w] = depth[f.v] + 1;
                    stack.push_back({w, 0});
                } else if (w != parent_vertex[f.v] && depth[f.v] - depth[w] >= 2) {
                    // Back edge closing a cycle of length >= 3.
                    std::vector<int> cycle = {e};
                    int v = f.v;
                    while (v != w) {
                        cycle.push_back(parent_edge[v]);
                        v = parent_vertex[v];
                    }
                    return cycle;
                }
            } else {
                color[f.v] = 2;
                stack.pop_back();
            }
        }
    }
    return {};
}

inline bool two_connected(const TaitGraph& g) {
    int n = g.n_vertices();
    if (n < 3) return false;
    for (int skip = 0; skip < n; ++skip) {
        DSU dsu(n);
        for (int e = 0; e < g.n_edges(); ++e) {
            if (g.edge(e).a == skip || g.edge(e).b == skip) continue;
            dsu.unite(g.edge(e).a, g.edge(e).b);
        }
        int rep = -1;
        for (int v = 0; v < n; ++v) {
            if (v == skip) continue;
            if (rep < 0) rep = dsu.find(v);
            else if (dsu.find(v) != rep) return false;
        }
    }
    return true;
}

} // namespace detail

/// Constructive Z2-torsion certificate for a reduced alternating diagram whose
/// Tait edges all share one sign: an ear-decomposition edge order, the
/// extremal tree pair (T, T') of the proof, the +-2 incidence between them,
/// and the torsion subgroup located in the spanning-tree homology.
inline TorsionCertificate torsion_witness_alternating(const TaitGraph& g_in) {
    TorsionCertificate cert;
    TaitGraph g = g_in;
    {
        bool all_pos = true, all_neg = true;
        for (int e = 0; e < g.n_edges(); ++e)
            (g.edge(e).sign > 0 ? all_neg : all_pos) = false;
        if (g.n_edges() == 0) throw TooSmall("the unknot carries no torsion");
        if (!all_pos && !all_neg)
            throw NotAlternating("Tait edges carry mixed signs");
        if (all_neg) {
            g = dual_tait(g_in);
            cert.used_dual = true;
        }
    }
    for (int e = 0; e < g.n_edges(); ++e)
        if (g.edge(e).a == g.edge(e).b)
            throw NotAlternating("diagram is not reduced (loop edge)");

    auto cycle = detail::find_long_cycle(g);
    if (cycle.empty()) throw TooSmall("no cycle of length >= 3 (Hopf-link territory)");
    if (!detail::two_connected(g)) throw NotAlternating("Tait graph is not 2-connected");

    // Ear decomposition starting from the cycle.
    std::vector<int> order(cycle.rbegin(), cycle.rend()); // cycle edges in path order
    cert.cycle_length = static_cast<int>(order.size());
    std::vector<bool> edge_used(g.n_edges(), false);
    std::vector<bool> vertex_used(g.n_vertices(), false);
    for (int e : order) {
        edge_used[e] = true;
        vertex_used[g.edge(e).a] = vertex_used[g.edge(e).b] = true;
    }
    std::vector<std::vector<int>> ears;
    while (static_cast<int>(order.size()) < g.n_edges()) {
        // Find an ear: walk from an unused edge at a used vertex until
        // re-hitting a used vertex.
        int seed = -1, anchor = -1;
        for (int e = 0; e < g.n_edges() && seed < 0; ++e) {
            if (edge_used[e]) continue;
            if (vertex_used[g.edge(e).a]) { seed = e; anchor = g.edge(e).a; }
            else if (vertex_used[g.edge(e).b]) { seed = e; anchor = g.edge(e).b; }
        }
        if (seed < 0) throw std::logic_error("ear decomposition stalled");
        std::vector<int> ear = {seed};
        int v = (g.edge(seed).a == anchor) ? g.edge(seed).b : g.edge(seed).a;
        while (!vertex_used[v]) {
            vertex_used[v] = true;
            int next = -1;
            for (int e = 0; e < g.n_edges(); ++e) {
                if (edge_used[e] || e == ear.back()) continue;
                if (g.edge(e).a == v || g.edge(e).b == v) { next = e; break; }
            }
            if (next < 0) throw std::logic_error("ear ran into a dead end");
            ear.push_back(next);
            v = (g.edge(next).a == v) ? g.edge(next).b : g.edge(next).a;
        }
        for (int e : ear) edge_used[e] = true;
        ears.push_back(ear);
        order.insert(order.end(), ear.begin(), ear.end());
    }
    cert.edge_order = order;

    // T: drop the largest edge of the cycle and of each ear.
    // T': swap the two largest cycle edges.
    int m = g.n_edges();
    int gl = cert.cycle_length;
    EdgeSet tree_new = (EdgeSet(1) << m) - 1;
    tree_new &= ~(EdgeSet(1) << (gl - 1)); // largest cycle edge (new index gl-1)
    {
        int base = gl;
        for (const auto& ear : ears) {
            int len = static_cast<int>(ear.size());
            tree_new &= ~(EdgeSet(1) << (base + len - 1));
            base += len;
        }
    }
    EdgeSet tree_prime_new =
        (tree_new | (EdgeSet(1) << (gl - 1))) & ~(EdgeSet(1) << (gl - 2));
    cert.tree = tree_new;
    cert.tree_prime = tree_prime_new;

    // Root the reduced complex at a vertex of the cycle.
    TaitGraph rg = g.with_edge_order(order);
    int root_vertex = rg.edge(0).a;
    rg = rg.with_dotted_arc(rg.arc_at_vertex(root_vertex));

    STBuild st = build_st_complex(rg, Variant::Unreduced);
    int t_idx = st.fam.index_of(tree_new);
    int tp_idx = st.fam.index_of(tree_prime_new);
    if (t_idx < 0 || tp_idx < 0) throw std::logic_error("certificate trees not enumerated");
    // The extremal tree's activity pattern: internal edges live, external dead.
    for (int k = 0; k < m; ++k) {
        Activity a = st.fam.words[t_idx].acts[k];
        bool in = has_edge(tree_new, k);
        if (in && a != Activity::IntLive)
            throw std::logic_error("certificate tree has a dead internal edge");
        if (!in && a != Activity::ExtDead)
            throw std::logic_error("certificate tree has a live external edge");
    }

    int gp = st.st.index_of(tp_idx, +1);
    int gm = st.st.index_of(t_idx, -1);
    cert.incidence = 0;
    for (auto [t, c] : st.st.cx.diff[gp])
        if (t == gm) cert.incidence = c;
    if (cert.incidence != 2 && cert.incidence != -2)
        throw std::logic_error("certificate incidence is not +-2");

    BigradedHomology h = homology_of(st.st.cx);
    cert.torsion_found = h.has_torsion_factor(2);
    return cert;
}

} // namespace khst
