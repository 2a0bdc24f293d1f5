#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "khst/errors.hpp"
#include "khst/laurent.hpp"
#include "khst/pd.hpp"

namespace khst {

using EdgeSet = uint32_t;

inline int popcount(EdgeSet s) { return __builtin_popcount(s); }
inline bool has_edge(EdgeSet s, int i) { return (s >> i) & 1u; }

struct TaitEdge {
    int a = 0, b = 0;   // endpoint vertices (black region classes)
    int sign = 1;       // +1 iff the A-smoothing connects the two black regions
    int crossing = 0;   // crossing index in the diagram
};

/// Signed checkerboard graph of a connected link diagram. The edge list order
/// is the total edge order used by activities and differentials; the diagram
/// is retained as the embedding datum for face computations.
class TaitGraph {
  public:
    TaitGraph() = default;

    int n_vertices() const { return n_vertices_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<TaitEdge>& edges() const { return edges_; }
    const TaitEdge& edge(int i) const { return edges_[i]; }
    const LinkDiagram& diagram() const { return diagram_; }
    LinkDiagram& diagram() { return diagram_; }
    bool colors_swapped() const { return colors_swapped_; }

    int dotted_arc() const { return dotted_arc_; }
    /// Black region adjacent to the dotted arc.
    int dotted_vertex() const { return dotted_vertex_; }

    /// Resolution of the diagram realizing a spanning subgraph: a positive
    /// edge lies in the subgraph iff its crossing is A-smoothed, a negative
    /// edge iff B-smoothed.
    std::vector<Res> resolution_of_subgraph(EdgeSet subgraph) const {
        std::vector<Res> res(diagram_.n_crossings(), Res::A);
        for (int i = 0; i < n_edges(); ++i) {
            bool in = has_edge(subgraph, i);
            bool a_res = (edges_[i].sign > 0) ? in : !in;
            res[edges_[i].crossing] = a_res ? Res::A : Res::B;
        }
        return res;
    }

    EdgeSet subgraph_of_resolution(const std::vector<Res>& res) const {
        EdgeSet s = 0;
        for (int i = 0; i < n_edges(); ++i) {
            bool a_res = res[edges_[i].crossing] == Res::A;
            bool in = (edges_[i].sign > 0) ? a_res : !a_res;
            if (in) s |= EdgeSet(1) << i;
        }
        return s;
    }

    /// Faces of a spanning subgraph: the circles of the corresponding resolved
    /// state, as sorted arc-index sets ordered by minimal arc.
    std::vector<std::vector<int>> faces(EdgeSet subgraph) const {
        return diagram_.circles(resolution_of_subgraph(subgraph));
    }

    /// Reorder the edges; perm[k] = index into current edge list of the k-th
    /// edge in the new order.
    TaitGraph with_edge_order(const std::vector<int>& perm) const {
        if (perm.size() != edges_.size())
            throw MalformedCode("edge order permutation has wrong length");
        std::vector<bool> seen(edges_.size(), false);
        TaitGraph g = *this;
        g.edges_.clear();
        for (int p : perm) {
            if (p < 0 || p >= n_edges() || seen[p])
                throw MalformedCode("edge order is not a permutation");
            seen[p] = true;
            g.edges_.push_back(edges_[p]);
        }
        return g;
    }

    /// Adjacency: vertices reachable within a subgraph.
    bool subgraph_connects_all(EdgeSet subgraph) const {
        detail::DSU dsu(n_vertices_);
        for (int i = 0; i < n_edges(); ++i)
            if (has_edge(subgraph, i)) dsu.unite(edges_[i].a, edges_[i].b);
        for (int v = 1; v < n_vertices_; ++v)
            if (!dsu.same(0, v)) return false;
        return true;
    }

    bool subgraph_acyclic(EdgeSet subgraph) const {
        detail::DSU dsu(n_vertices_);
        for (int i = 0; i < n_edges(); ++i) {
            if (!has_edge(subgraph, i)) continue;
            if (dsu.same(edges_[i].a, edges_[i].b)) return false;
            dsu.unite(edges_[i].a, edges_[i].b);
        }
        return true;
    }

    /// Number of spanning trees via the Matrix-Tree theorem.
    BigInt matrix_tree_count() const {
        int n = n_vertices_;
        if (n <= 1) return 1;
        std::vector<std::vector<BigRat>> lap(n - 1, std::vector<BigRat>(n - 1, 0));
        for (const auto& e : edges_) {
            int a = e.a, b = e.b;
            if (a == b) continue;
            if (a < n - 1) lap[a][a] += 1;
            if (b < n - 1) lap[b][b] += 1;
            if (a < n - 1 && b < n - 1) {
                lap[a][b] -= 1;
                lap[b][a] -= 1;
            }
        }
        BigRat det = 1;
        for (int col = 0; col < n - 1; ++col) {
            int pivot = -1;
            for (int r = col; r < n - 1; ++r)
                if (lap[r][col] != 0) { pivot = r; break; }
            if (pivot < 0) return 0;
            if (pivot != col) {
                std::swap(lap[pivot], lap[col]);
                det = -det;
            }
            det *= lap[col][col];
            for (int r = col + 1; r < n - 1; ++r) {
                BigRat f = lap[r][col] / lap[col][col];
                for (int c2 = col; c2 < n - 1; ++c2) lap[r][c2] -= f * lap[col][c2];
            }
        }
        return boost::multiprecision::numerator(det) / boost::multiprecision::denominator(det);
    }

    /// |det Goeritz matrix|, the knot determinant for knot diagrams.
    BigInt goeritz_determinant() const {
        int n = n_vertices_;
        if (n <= 1) return 1;
        std::vector<std::vector<BigRat>> g(n - 1, std::vector<BigRat>(n - 1, 0));
        for (const auto& e : edges_) {
            if (e.a == e.b) continue;
            int a = e.a, b = e.b;
            if (a < n - 1) g[a][a] += e.sign;
            if (b < n - 1) g[b][b] += e.sign;
            if (a < n - 1 && b < n - 1) {
                g[a][b] -= e.sign;
                g[b][a] -= e.sign;
            }
        }
        BigRat det = 1;
        for (int col = 0; col < n - 1; ++col) {
            int pivot = -1;
            for (int r = col; r < n - 1; ++r)
                if (g[r][col] != 0) { pivot = r; break; }
            if (pivot < 0) return 0;
            if (pivot != col) {
                std::swap(g[pivot], g[col]);
                det = -det;
            }
            det *= g[col][col];
            for (int r = col + 1; r < n - 1; ++r) {
                BigRat f = g[r][col] / g[col][col];
                for (int c2 = col; c2 < n - 1; ++c2) g[r][c2] -= f * g[col][c2];
            }
        }
        if (det < 0) det = -det;
        return boost::multiprecision::numerator(det) / boost::multiprecision::denominator(det);
    }

    /// Black region adjacent to each arc.
    int black_vertex_of_arc(int arc_idx) const { return black_vertex_of_arc_[arc_idx]; }

    /// Same graph with the basepoint moved to another arc.
    TaitGraph with_dotted_arc(int arc_label) const {
        TaitGraph g = *this;
        g.dotted_arc_ = diagram_.arc_index(arc_label);
        g.diagram_.set_dotted_arc(arc_label);
        g.dotted_vertex_ = black_vertex_of_arc_[g.dotted_arc_];
        return g;
    }

    /// Some arc label adjacent to a given black vertex.
    int arc_at_vertex(int v) const {
        for (int a = 0; a < diagram_.n_arcs(); ++a)
            if (black_vertex_of_arc_[a] == v) return diagram_.arc_label(a);
        throw std::logic_error("vertex has no adjacent arc");
    }

    friend TaitGraph checkerboard_and_tait(const LinkDiagram&, const std::optional<std::vector<int>>&, bool);
    friend TaitGraph dual_tait(const TaitGraph&);

  private:
    int n_vertices_ = 1;
    std::vector<TaitEdge> edges_;
    LinkDiagram diagram_;
    int dotted_arc_ = 0;
    int dotted_vertex_ = 0;
    bool colors_swapped_ = false;
    std::vector<int> region_class_of_vertex_; // representative corner per black vertex
    std::vector<int> black_vertex_of_arc_;    // arc index -> adjacent black vertex
};

/// Construct the signed Tait graph of a connected diagram. The black color
/// class is fixed deterministically (the region left of the dotted arc at its
/// head); `swap_colors` selects the other class.
inline TaitGraph checkerboard_and_tait(const LinkDiagram& d,
                                       const std::optional<std::vector<int>>& order = std::nullopt,
                                       bool swap_colors = false) {
    TaitGraph g;
    g.diagram_ = d;
    g.colors_swapped_ = swap_colors;
    g.dotted_arc_ = d.dotted_arc_or_default();

    if (d.n_crossings() == 0) {
        // Trivial unknot: one vertex, no edges.
        g.n_vertices_ = 1;
        g.dotted_vertex_ = 0;
        return g;
    }

    std::vector<int> region = d.diagram_regions();
    // Two-color regions: the two corners flanking any arc end lie in regions
    // of opposite color, as do adjacent corners around a crossing.
    std::map<int, int> color;
    std::vector<int> stack;
    auto set_color = [&](int rep, int c) {
        auto it = color.find(rep);
        if (it == color.end()) {
            color[rep] = c;
            stack.push_back(rep);
        } else if (it->second != c) {
            throw MalformedCode("checkerboard coloring is inconsistent (non-planar code?)");
        }
    };
    set_color(region[0], 0);
    while (!stack.empty()) {
        stack.pop_back();
        // Propagate around every crossing: adjacent corners alternate.
        for (int c = 0; c < d.n_crossings(); ++c)
            for (int k = 0; k < 4; ++k) {
                int r0 = region[d.corner_id(c, k)];
                int r1 = region[d.corner_id(c, (k + 1) % 4)];
                auto i0 = color.find(r0);
                auto i1 = color.find(r1);
                if (i0 != color.end() && i1 == color.end()) set_color(r1, 1 - i0->second);
                if (i1 != color.end() && i0 == color.end()) set_color(r0, 1 - i1->second);
            }
    }
    for (int c = 0; c < d.n_crossings(); ++c)
        for (int k = 0; k < 4; ++k)
            if (!color.count(region[d.corner_id(c, k)]))
                throw MalformedCode("region coloring did not reach every region");

    // Determine the black class: region on the right of the first arc at its
    // head end (deterministic and independent of the dot placement; calibrated
    // so the positive-triangle diagram is the right-handed trefoil).
    int dot = g.dotted_arc_;
    const ArcEnd head = d.arc_ends(0)[1];
    int right_corner = d.corner_id(head.crossing, head.slot);
    int black = color[region[right_corner]];
    if (swap_colors) black = 1 - black;

    // Vertices: black region classes, indexed by first appearance over corners.
    std::map<int, int> vertex_of_region;
    for (int c = 0; c < d.n_crossings(); ++c)
        for (int k = 0; k < 4; ++k) {
            int rep = region[d.corner_id(c, k)];
            if (color[rep] == black && !vertex_of_region.count(rep)) {
                int id = static_cast<int>(vertex_of_region.size());
                vertex_of_region[rep] = id;
                g.region_class_of_vertex_.push_back(rep);
            }
        }
    g.n_vertices_ = static_cast<int>(vertex_of_region.size());

    // One edge per crossing. Corners (c,0),(c,2) share a color, as do
    // (c,1),(c,3). The A-smoothing merges corners (c,1) and (c,3).
    for (int c = 0; c < d.n_crossings(); ++c) {
        int r0 = region[d.corner_id(c, 0)];
        int r1 = region[d.corner_id(c, 1)];
        int r2 = region[d.corner_id(c, 2)];
        int r3 = region[d.corner_id(c, 3)];
        if (color[r0] != color[r2] || color[r1] != color[r3] || color[r0] == color[r1])
            throw MalformedCode("checkerboard coloring is not proper at a crossing");
        TaitEdge e;
        e.crossing = c;
        if (color[r1] == black) {
            e.a = vertex_of_region[r1];
            e.b = vertex_of_region[r3];
            e.sign = +1; // A-smoothing joins the black corners (c,1),(c,3)
        } else {
            e.a = vertex_of_region[r0];
            e.b = vertex_of_region[r2];
            e.sign = -1;
        }
        g.edges_.push_back(e);
    }

    // The black region adjacent to each arc; the dotted vertex follows.
    g.black_vertex_of_arc_.assign(d.n_arcs(), -1);
    for (int a = 0; a < d.n_arcs(); ++a) {
        const ArcEnd h = d.arc_ends(a)[1];
        int ra = region[d.corner_id(h.crossing, h.slot)];
        int rb = region[d.corner_id(h.crossing, (h.slot + 3) % 4)];
        int chosen = (color[ra] == black) ? ra : rb;
        g.black_vertex_of_arc_[a] = vertex_of_region[chosen];
    }
    g.dotted_vertex_ = g.black_vertex_of_arc_[dot];

    if (order) g = g.with_edge_order(*order);
    return g;
}

/// Planar dual: white regions become vertices, signs flip.
inline TaitGraph dual_tait(const TaitGraph& g) {
    TaitGraph tmp = checkerboard_and_tait(g.diagram(), std::nullopt, !g.colors_swapped());
    if (g.diagram().n_crossings() == 0) return tmp;
    // Re-apply g's edge order by crossing id.
    std::vector<int> pos_of_crossing(g.diagram().n_crossings());
    for (int i = 0; i < tmp.n_edges(); ++i) pos_of_crossing[tmp.edge(i).crossing] = i;
    std::vector<int> perm;
    perm.reserve(g.n_edges());
    for (int i = 0; i < g.n_edges(); ++i) perm.push_back(pos_of_crossing[g.edge(i).crossing]);
    return tmp.with_edge_order(perm);
}

inline std::pair<int, int> crossing_signs(const LinkDiagram& d) { return d.crossing_sign_counts(); }

} // namespace khst
