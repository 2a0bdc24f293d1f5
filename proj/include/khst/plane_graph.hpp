#pragma once

#include <array>
#include <map>
#include <vector>

#include "khst/pd.hpp"

namespace khst {

/// A signed plane multigraph given by rotation systems. Half-edge 2e is the
/// end of edge e at `u`, half-edge 2e+1 the end at `v`; rotations list the
/// half-edges counterclockwise around each vertex.
struct PlaneGraph {
    struct Edge {
        int u = 0, v = 0;
        int sign = +1;
    };
    int n_vertices = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> rotation;

    int half_edge_vertex(int h) const { return (h % 2 == 0) ? edges[h / 2].u : edges[h / 2].v; }
};

/// Faces of a rotation system: orbits of h -> next-ccw-at-vertex(twin(h)).
inline int count_rotation_faces(const PlaneGraph& pg) {
    const int m = static_cast<int>(pg.edges.size());
    std::vector<int> next(2 * m, -1);
    for (int v = 0; v < pg.n_vertices; ++v) {
        const auto& rot = pg.rotation[v];
        for (size_t k = 0; k < rot.size(); ++k) next[rot[k]] = rot[(k + 1) % rot.size()];
    }
    auto twin = [](int h) { return h ^ 1; };
    std::vector<bool> seen(2 * m, false);
    int faces = 0;
    for (int h = 0; h < 2 * m; ++h) {
        if (seen[h]) continue;
        ++faces;
        int cur = h;
        do {
            seen[cur] = true;
            cur = next[twin(cur)];
        } while (cur != h);
    }
    return faces;
}

inline bool is_planar_embedding(const PlaneGraph& pg) {
    int v = pg.n_vertices;
    int e = static_cast<int>(pg.edges.size());
    return count_rotation_faces(pg) == e - v + 2;
}

/// Brute-force a planar rotation system for a small connected multigraph.
inline PlaneGraph embed_planar(int n_vertices, std::vector<PlaneGraph::Edge> edges) {
    PlaneGraph pg;
    pg.n_vertices = n_vertices;
    pg.edges = std::move(edges);
    pg.rotation.assign(n_vertices, {});
    for (size_t e = 0; e < pg.edges.size(); ++e) {
        pg.rotation[pg.edges[e].u].push_back(2 * static_cast<int>(e));
        pg.rotation[pg.edges[e].v].push_back(2 * static_cast<int>(e) + 1);
    }
    // Permute each vertex's rotation (first entry pinned) until planar.
    std::vector<std::vector<int>> base = pg.rotation;
    std::vector<std::vector<int>> perms;
    for (int v = 0; v < n_vertices; ++v) {
        std::vector<int> idx(base[v].size());
        for (size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
        perms.push_back(idx);
    }
    struct Rec {
        PlaneGraph& pg;
        std::vector<std::vector<int>>& base;
        bool found = false;
        void go(int v) {
            if (found) return;
            if (v == pg.n_vertices) {
                if (is_planar_embedding(pg)) found = true;
                return;
            }
            std::vector<int> idx(base[v].size());
            for (size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
            // Fix position 0; permute the rest.
            std::sort(idx.begin() + (idx.empty() ? 0 : 1), idx.end());
            do {
                for (size_t k = 0; k < idx.size(); ++k) pg.rotation[v][k] = base[v][idx[k]];
                go(v + 1);
                if (found) return;
            } while (std::next_permutation(idx.begin() + (idx.empty() ? 0 : 1), idx.end()));
        }
    } rec{pg, base};
    rec.go(0);
    if (!rec.found) throw MalformedCode("no planar embedding found for corpus graph");
    return pg;
}

struct MedialResult {
    LinkDiagram diagram;
    std::vector<int> arc_vertex;  // per arc label (1-based -> index label-1): the
                                  // plane-graph vertex whose corner the arc hugs
};

/// The medial knot/link diagram of a signed plane graph: one crossing per
/// edge, arcs hugging the vertex corners, over/under chosen per the edge sign
/// so that the A-smoothing joins the two vertex regions exactly for positive
/// edges.
inline MedialResult medial_diagram(const PlaneGraph& pg) {
    const int m = static_cast<int>(pg.edges.size());
    // Arms of each crossing, indexed by geometric position with the edge drawn
    // from u (south) to v (north):
    //   0 = SE (cw corner at u), 1 = NE (ccw corner at v),
    //   2 = NW (cw corner at v), 3 = SW (ccw corner at u).
    // This listing is counterclockwise around the crossing.
    struct Arm {
        int crossing;
        int pos; // 0..3 as above
    };
    // Corners: (vertex, k) between rotation[v][k] and rotation[v][k+1].
    // Each corner carries one arc joining two arms.
    std::map<std::pair<int, int>, std::array<Arm, 2>> corner_arms;
    auto corner_of = [&](int vertex, int k) {
        int deg = static_cast<int>(pg.rotation[vertex].size());
        return std::make_pair(vertex, ((k % deg) + deg) % deg);
    };
    for (int vtx = 0; vtx < pg.n_vertices; ++vtx) {
        int deg = static_cast<int>(pg.rotation[vtx].size());
        for (int k = 0; k < deg; ++k) {
            int h1 = pg.rotation[vtx][k];               // corner is ccw of h1
            int h2 = pg.rotation[vtx][(k + 1) % deg];   // and cw of h2
            int e1 = h1 / 2, e2 = h2 / 2;
            bool h1_at_u = (h1 % 2 == 0);
            bool h2_at_u = (h2 % 2 == 0);
            Arm a1{e1, h1_at_u ? 3 : 1}; // ccw corner: SW at u-side, NE at v-side
            Arm a2{e2, h2_at_u ? 0 : 2}; // cw corner: SE at u-side, NW at v-side
            corner_arms[corner_of(vtx, k)] = {a1, a2};
        }
    }

    // Arc adjacency per arm.
    std::vector<std::array<std::pair<int, int>, 4>> arm_corner(m); // crossing,pos -> corner key
    for (const auto& [corner, arms] : corner_arms)
        for (const auto& arm : arms) arm_corner[arm.crossing][arm.pos] = corner;

    // Strand continuation inside a crossing: diagonals 0<->2 and 1<->3.
    auto through = [](int pos) { return (pos + 2) % 4; };

    // Trace components; assign arc labels along the traversal.
    std::map<std::pair<int, int>, int> arc_label; // corner -> label
    std::vector<int> arc_vertex_by_label;
    int next_label = 1;
    std::vector<std::array<bool, 4>> arm_seen(m, {false, false, false, false});
    // Direction data: entering arm per crossing for the under-strand.
    // under diagonal: positive edge -> SE-NW (arms 0,2); negative -> NE-SW (1,3).
    std::vector<std::array<int, 4>> slots(m, {0, 0, 0, 0});
    std::vector<bool> crossing_done(m, false);

    for (int start_cross = 0; start_cross < m; ++start_cross) {
        for (int start_pos = 0; start_pos < 4; ++start_pos) {
            if (arm_seen[start_cross][start_pos]) continue;
            // Walk the strand: leave crossing via this arm, follow the arc.
            int cr = start_cross, pos = start_pos;
            do {
                // Leaving (cr, pos): the arc at that corner leads to the
                // adjacent crossing's arm.
                auto corner = arm_corner[cr][pos];
                int label;
                auto it = arc_label.find(corner);
                if (it == arc_label.end()) {
                    label = next_label++;
                    arc_label[corner] = label;
                    arc_vertex_by_label.push_back(corner.first);
                } else {
                    label = it->second;
                }
                (void)label;
                arm_seen[cr][pos] = true;
                const auto& arms = corner_arms[corner];
                Arm other = (arms[0].crossing == cr && arms[0].pos == pos) ? arms[1] : arms[0];
                arm_seen[other.crossing][other.pos] = true;
                // Enter the next crossing at `other`, pass through.
                cr = other.crossing;
                pos = through(other.pos);
            } while (!(cr == start_cross && pos == start_pos));
        }
    }

    // Second pass: fix a direction per component and emit PD slots. Walk each
    // strand once more, recording at each crossing which arm each passage
    // enters through.
    std::vector<std::array<int, 4>> entering_label(m, {0, 0, 0, 0});
    std::vector<std::array<bool, 4>> entered(m, {false, false, false, false});
    {
        std::vector<std::array<bool, 4>> visited(m, {false, false, false, false});
        for (int sc = 0; sc < m; ++sc)
            for (int sp = 0; sp < 4; ++sp) {
                if (visited[sc][sp]) continue;
                int cr = sc, pos = sp;
                do {
                    visited[cr][pos] = true;
                    auto corner = arm_corner[cr][pos];
                    int label = arc_label[corner];
                    const auto& arms = corner_arms[corner];
                    Arm other = (arms[0].crossing == cr && arms[0].pos == pos) ? arms[1] : arms[0];
                    visited[other.crossing][other.pos] = true;
                    entering_label[other.crossing][other.pos] = label;
                    entered[other.crossing][other.pos] = true;
                    cr = other.crossing;
                    pos = through(other.pos);
                } while (!(cr == sc && pos == sp));
            }
    }
    // Each arm is either an entering or a leaving arm for the chosen walk
    // direction; entering arms carry the incoming arc label. The two diagonals
    // are traversed once each, so exactly two arms per crossing are entering.

    std::vector<Crossing> crossings(m);
    for (int e = 0; e < m; ++e) {
        bool positive = pg.edges[e].sign > 0;
        // Under-strand arms per sign.
        std::array<int, 2> under_arms = positive ? std::array<int, 2>{0, 2}
                                                 : std::array<int, 2>{1, 3};
        int slot0_arm = -1;
        for (int a : under_arms)
            if (entered[e][a]) slot0_arm = a;
        if (slot0_arm < 0) throw std::logic_error("under-strand has no entering arm");
        // Slots list arms counterclockwise from the incoming under arm; the
        // arm order 0,1,2,3 is already counterclockwise.
        for (int k = 0; k < 4; ++k) {
            int arm = (slot0_arm + k) % 4;
            auto corner = arm_corner[e][arm];
            crossings[e].arcs[k] = arc_label[corner];
        }
    }

    MedialResult out;
    out.diagram = LinkDiagram(std::move(crossings));
    out.arc_vertex = std::move(arc_vertex_by_label);
    return out;
}

} // namespace khst
