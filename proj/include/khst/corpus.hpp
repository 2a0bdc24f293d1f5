#pragma once

#include <map>
#include <string>
#include <vector>

#include "khst/plane_graph.hpp"
#include "khst/tait.hpp"

namespace khst {

/// A bundled small-knot entry: the diagram plus the hand-checked invariants
/// used by the verification harness.
struct CorpusEntry {
    std::string name;
    LinkDiagram diagram;
    int crossings = 0;
    int components = 1;
    bool alternating = true;
    int determinant = 1; // |det K|, = spanning tree count for alternating
};

namespace detail {

/// Checkerboard graph of a rational (2-bridge) diagram from its continued
/// fraction: alternating series (odd positions) and parallel (even positions)
/// blocks between two poles, closed by identifying them when the chain ends
/// in a series block.
inline std::vector<PlaneGraph::Edge> rational_edges(const std::vector<int>& cf, int& n_vertices) {
    std::vector<PlaneGraph::Edge> edges;
    int s = 0;
    int next = 1;
    int t = -1;
    bool ends_series = (cf.size() % 2 == 1);
    for (size_t k = 0; k < cf.size(); ++k) {
        if (k % 2 == 0) {
            // Series block: extend a path from the current t (or start at s).
            int from = (k == 0) ? s : t;
            for (int step = 0; step < cf[k]; ++step) {
                bool last_edge_overall = ends_series && k + 1 == cf.size() && step + 1 == cf[k];
                int to = last_edge_overall ? s : next++;
                edges.push_back({from, to, +1});
                from = to;
            }
            t = from;
        } else {
            for (int copy = 0; copy < cf[k]; ++copy) edges.push_back({s, t, +1});
        }
    }
    n_vertices = next;
    return edges;
}

inline CorpusEntry make_rational(const std::string& name, const std::vector<int>& cf, int det) {
    int n = 0;
    auto edges = rational_edges(cf, n);
    PlaneGraph pg = embed_planar(n, std::move(edges));
    MedialResult med = medial_diagram(pg);
    CorpusEntry e;
    e.name = name;
    e.diagram = med.diagram;
    e.crossings = med.diagram.n_crossings();
    e.components = med.diagram.n_components();
    e.alternating = true;
    e.determinant = det;
    return e;
}

inline CorpusEntry make_cycle(const std::string& name, int n, int det) {
    std::vector<PlaneGraph::Edge> edges;
    for (int k = 0; k < n; ++k) edges.push_back({k, (k + 1) % n, +1});
    PlaneGraph pg = embed_planar(n, std::move(edges));
    MedialResult med = medial_diagram(pg);
    CorpusEntry e;
    e.name = name;
    e.diagram = med.diagram;
    // Basepoint in the region shared by edges 1 and 2, matching the worked
    // trefoil matching words.
    for (size_t arc = 0; arc < med.arc_vertex.size(); ++arc)
        if (med.arc_vertex[arc] == 1) {
            e.diagram.set_dotted_arc(e.diagram.arc_label(static_cast<int>(arc)));
            break;
        }
    e.crossings = n;
    e.components = med.diagram.n_components();
    e.determinant = det;
    return e;
}

inline CorpusEntry make_8_20() {
    // Tait graph of 8_20: vertices a..g, edges 1..8 with signs
    // (1+,2+,3+,4+,5+,6-,7-,8-); rotations transcribed from the standard
    // planar drawing (a and d have degree three).
    enum { A, B, C, D, E, F, G };
    PlaneGraph pg;
    pg.n_vertices = 7;
    pg.edges = {
        {A, E, +1}, // 1
        {A, G, +1}, // 2
        {G, D, +1}, // 3
        {F, D, +1}, // 4
        {E, F, +1}, // 5
        {A, B, -1}, // 6
        {B, C, -1}, // 7
        {C, D, -1}, // 8
    };
    pg.rotation.assign(7, {});
    auto half = [](int edge, bool at_u) { return 2 * edge + (at_u ? 0 : 1); };
    pg.rotation[A] = {half(0, true), half(5, true), half(1, true)};   // 1, 6, 2 ccw
    pg.rotation[B] = {half(5, false), half(6, true)};
    pg.rotation[C] = {half(6, false), half(7, true)};
    pg.rotation[D] = {half(2, false), half(7, false), half(3, false)}; // 3, 8, 4 ccw
    pg.rotation[E] = {half(0, false), half(4, true)};
    pg.rotation[F] = {half(4, false), half(3, true)};
    pg.rotation[G] = {half(1, false), half(2, true)};
    if (!is_planar_embedding(pg)) throw MalformedCode("8_20 rotations are not planar");

    MedialResult med = medial_diagram(pg);
    CorpusEntry e;
    e.name = "8_20";
    e.diagram = med.diagram;
    // Basepoint in the region of vertex a, as in the worked computation.
    for (size_t arc = 0; arc < med.arc_vertex.size(); ++arc)
        if (med.arc_vertex[arc] == A) {
            e.diagram.set_dotted_arc(e.diagram.arc_label(static_cast<int>(arc)));
            break;
        }
    e.crossings = 8;
    e.alternating = false;
    e.determinant = 9;
    return e;
}

} // namespace detail

/// The bundled corpus. Alternating entries are identified by crossing count
/// plus determinant (reduced alternating diagrams are minimal, and within each
/// crossing count the determinants are distinct).
inline const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        {
            CorpusEntry e;
            e.name = "unknot";
            e.diagram = LinkDiagram({}, 1);
            e.crossings = 0;
            e.determinant = 1;
            out.push_back(e);
        }
        {
            // One-crossing kink.
            std::vector<PlaneGraph::Edge> edges = {{0, 0, +1}};
            PlaneGraph pg;
            pg.n_vertices = 1;
            pg.edges = edges;
            pg.rotation = {{0, 1}};
            MedialResult med = medial_diagram(pg);
            CorpusEntry e;
            e.name = "unknot1";
            e.diagram = med.diagram;
            e.crossings = 1;
            e.determinant = 1;
            out.push_back(e);
        }
        out.push_back(detail::make_cycle("trefoil", 3, 3));
        {
            CorpusEntry e = detail::make_cycle("trefoil", 3, 3);
            e.name = "trefoil_mirror";
            e.diagram = e.diagram.mirror();
            out.push_back(e);
        }
        {
            // Hopf link: double edge.
            PlaneGraph pg = embed_planar(2, {{0, 1, +1}, {0, 1, +1}});
            MedialResult med = medial_diagram(pg);
            CorpusEntry e;
            e.name = "hopf";
            e.diagram = med.diagram;
            e.crossings = 2;
            e.components = 2;
            e.determinant = 2;
            out.push_back(e);
        }
        out.push_back(detail::make_rational("4_1", {2, 2}, 5));
        out.push_back(detail::make_cycle("5_1", 5, 5));
        out.push_back(detail::make_rational("5_2", {2, 3}, 7));
        out.push_back(detail::make_rational("6_1", {4, 2}, 9));
        out.push_back(detail::make_rational("6_2", {2, 1, 3}, 11));
        out.push_back(detail::make_rational("6_3", {2, 1, 1, 2}, 13));
        out.push_back(detail::make_cycle("7_1", 7, 7));
        out.push_back(detail::make_rational("7_2", {5, 2}, 11));
        out.push_back(detail::make_rational("7_3", {4, 3}, 13));
        out.push_back(detail::make_rational("7_4", {3, 1, 3}, 15));
        out.push_back(detail::make_rational("7_5", {3, 2, 2}, 17));
        out.push_back(detail::make_rational("7_6", {2, 2, 1, 2}, 19));
        out.push_back(detail::make_rational("7_7", {2, 1, 1, 1, 2}, 21));
        out.push_back(detail::make_8_20());
        return out;
    }();
    return entries;
}

inline const CorpusEntry& corpus_entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw MalformedCode("unknown corpus knot: " + name);
}

} // namespace khst
