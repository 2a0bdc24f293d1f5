#include <catch2/catch_amalgamated.hpp>

#include "khst/corpus.hpp"
#include "khst/kauffman.hpp"
#include "khst/pd.hpp"
#include "khst/tait.hpp"

using namespace khst;

TEST_CASE("corpus diagrams parse, connect and carry the right determinants") {
    for (const auto& e : corpus()) {
        INFO(e.name);
        CHECK(e.diagram.n_crossings() == e.crossings);
        CHECK(e.diagram.n_components() == e.components);
        CHECK(e.diagram.orientable());
        if (e.crossings > 0) CHECK(e.diagram.is_alternating() == e.alternating);
        TaitGraph g = checkerboard_and_tait(e.diagram);
        CHECK(g.n_edges() == e.crossings);
        CHECK(g.goeritz_determinant() == BigInt(e.determinant));
        // Alternating reduced diagrams: tree count equals the determinant.
        if (e.alternating && e.crossings > 0)
            CHECK(g.matrix_tree_count() == BigInt(e.determinant));
    }
}

TEST_CASE("trefoil Tait graph is the positive triangle") {
    const auto& e = corpus_entry("trefoil");
    TaitGraph g = checkerboard_and_tait(e.diagram);
    REQUIRE(g.n_edges() == 3);
    CHECK(g.n_vertices() == 3);
    for (int k = 0; k < 3; ++k) CHECK(g.edge(k).sign == +1);
    CHECK(g.matrix_tree_count() == 3);
    auto [np, nm] = crossing_signs(e.diagram);
    CHECK(np == 3);
    CHECK(nm == 0);
}

TEST_CASE("mirror trefoil has opposite writhe") {
    const auto& e = corpus_entry("trefoil_mirror");
    auto [np, nm] = crossing_signs(e.diagram);
    CHECK(np == 0);
    CHECK(nm == 3);
}

TEST_CASE("8_20 Tait graph matches the worked example") {
    const auto& e = corpus_entry("8_20");
    TaitGraph g = checkerboard_and_tait(e.diagram);
    REQUIRE(g.n_edges() == 8);
    CHECK(g.n_vertices() == 7);
    std::vector<int> signs;
    for (int k = 0; k < 8; ++k) signs.push_back(g.edge(k).sign);
    CHECK(signs == std::vector<int>{1, 1, 1, 1, 1, -1, -1, -1});
    CHECK(g.matrix_tree_count() == 21);
    auto [np, nm] = crossing_signs(e.diagram);
    CHECK(np + nm == 8);
    CHECK(nm == 5); // pinned by the appendix gradings
    CHECK_FALSE(e.diagram.is_alternating());
}

TEST_CASE("dual Tait graph flips signs and is an involution") {
    const auto& e = corpus_entry("trefoil");
    TaitGraph g = checkerboard_and_tait(e.diagram);
    TaitGraph d = dual_tait(g);
    CHECK(d.n_vertices() == 2); // theta graph
    for (int k = 0; k < d.n_edges(); ++k) CHECK(d.edge(k).sign == -1);
    TaitGraph dd = dual_tait(d);
    CHECK(dd.n_vertices() == g.n_vertices());
    for (int k = 0; k < g.n_edges(); ++k) CHECK(dd.edge(k).sign == g.edge(k).sign);
}

TEST_CASE("checkerboard faces count via Euler relation") {
    for (const auto& e : corpus()) {
        if (e.crossings == 0) continue;
        INFO(e.name);
        std::set<int> regions;
        auto reg = e.diagram.diagram_regions();
        for (int r : reg) regions.insert(r);
        // 4-valent map: V = n, E = 2n, so F = n + 2.
        CHECK(static_cast<int>(regions.size()) == e.crossings + 2);
    }
}

TEST_CASE("split and dangling codes are rejected") {
    CHECK_THROWS_AS(LinkDiagram({Crossing{{1, 2, 3, 4}}}), DanglingArc);
    // Two disjoint kinks: arcs are fine but the 4-valent graph is split.
    CHECK_THROWS_AS(LinkDiagram({Crossing{{1, 2, 2, 1}}, Crossing{{3, 4, 4, 3}}}), SplitDiagram);
    CHECK_THROWS_AS(LinkDiagram({Crossing{{1, 2, 2, 1}}}, 1), SplitDiagram);
}
