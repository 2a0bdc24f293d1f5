#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <random>
#include <set>

#include "khst/corpus.hpp"
#include "khst/homology.hpp"
#include "khst/stc.hpp"
#include "khst/torsion.hpp"

using namespace khst;

namespace {

// Paper labels for the 8_20 trees, via their activity words.
const std::map<std::string, int>& words_820() {
    static const std::map<std::string, int> m = {
        {"lDDDDd-D-D-", 1},  {"LdDDDd-D-D-", 2},  {"LLdDDd-D-D-", 3},  {"LLLdDd-D-D-", 4},
        {"LLLLdd-D-D-", 5},  {"lDDDDL-d-D-", 6},  {"LdDDDL-d-D-", 7},  {"LLdDDL-d-D-", 8},
        {"LLLdDL-d-D-", 9},  {"LLLLdL-d-D-", 10}, {"lDDDDL-L-d-", 11}, {"LdDDDL-L-d-", 12},
        {"LLdDDL-L-d-", 13}, {"LLLdDL-L-d-", 14}, {"LLLLdL-L-d-", 15}, {"llDDDD-D-D-", 16},
        {"lLdDDD-D-D-", 17}, {"LlDdDD-D-D-", 18}, {"LlDLdD-D-D-", 19}, {"LLddDD-D-D-", 20},
        {"LLdLdD-D-D-", 21},
    };
    return m;
}

// (paper tree, sign) -> (i, j) from the appendix complex table.
const std::map<std::pair<int, int>, std::pair<int, int>>& gradings_820() {
    static const std::map<std::pair<int, int>, std::pair<int, int>> m = [] {
        std::map<std::pair<int, int>, std::pair<int, int>> g;
        auto put = [&](int tree, int i, int j) {
            g[{tree, +1}] = {i, j};
            g[{tree, -1}] = {i, j - 2};
        };
        put(1, -3, -5);
        put(2, -1, -1);
        put(3, 0, 1);
        put(4, 1, 3);
        put(5, 2, 5);
        put(6, -4, -7);
        put(7, -2, -3);
        put(8, -1, -1);
        put(9, 0, 1);
        put(10, 1, 3);
        put(11, -5, -9);
        put(12, -3, -5);
        put(13, -2, -3);
        put(14, -1, -1);
        put(15, 0, 1);
        put(16, -2, -5);
        put(17, 0, -1);
        put(18, 0, -1);
        put(19, 1, 1);
        put(20, 2, 3);
        put(21, 3, 5);
        return g;
    }();
    return m;
}

// The appendix incidence list: (tree, sign) -> sum of coeff * (tree, sign).
// The T1- row is forced by the homology table although the printed list
// omits it.
using Incidence = std::map<std::pair<int, int>, std::vector<std::pair<int64_t, std::pair<int, int>>>>;
const Incidence& incidences_820() {
    static const Incidence m = [] {
        Incidence g;
        auto P = [](int t) { return std::make_pair(t, +1); };
        auto M = [](int t) { return std::make_pair(t, -1); };
        g[P(11)] = {{2, M(6)}};
        g[P(6)] = {};
        g[M(12)] = {};
        g[P(12)] = {{2, M(13)}};
        g[P(1)] = {{1, P(16)}};
        g[M(1)] = {{1, M(16)}};
        g[P(13)] = {};
        g[P(7)] = {{-2, M(8)}, {-2, M(2)}};
        g[M(14)] = {{1, M(18)}};
        g[M(8)] = {{-1, M(17)}};
        g[M(2)] = {{1, M(17)}};
        g[P(14)] = {{-2, M(15)}, {2, M(9)}, {1, P(18)}};
        g[P(8)] = {{-1, P(17)}, {2, M(3)}};
        g[P(2)] = {{1, P(17)}, {-2, M(3)}};
        g[P(20)] = {{-2, M(21)}};
        g[P(17)] = {};
        g[P(18)] = {{-2, M(19)}};
        g[M(15)] = {{1, M(19)}};
        g[M(9)] = {{1, M(19)}};
        g[M(3)] = {{1, M(19)}};
        g[P(15)] = {{1, P(19)}, {-2, M(10)}};
        g[P(9)] = {{1, P(19)}, {-2, M(10)}};
        g[P(3)] = {{1, P(19)}};
        g[P(19)] = {};
        g[M(10)] = {};
        g[M(4)] = {{1, M(20)}};
        g[P(10)] = {};
        g[P(4)] = {{1, P(20)}, {-2, M(5)}};
        g[P(5)] = {{-1, P(21)}};
        g[M(5)] = {{-1, M(21)}};
        return g;
    }();
    return m;
}

} // namespace

TEST_CASE("8_20 spanning tree complex reproduces the appendix") {
    TaitGraph g = checkerboard_and_tait(corpus_entry("8_20").diagram);
    STBuild b = build_st_complex(g, Variant::Unreduced);
    REQUIRE(b.st.gens.size() == 42);

    // Map enumeration order to paper labels via activity words.
    std::vector<int> paper(b.fam.trees.size());
    for (size_t k = 0; k < b.fam.trees.size(); ++k)
        paper[k] = words_820().at(b.fam.words[k].str());

    SECTION("gradings") {
        for (const auto& gen : b.st.gens) {
            auto expect = gradings_820().at({paper[gen.tree], gen.sign});
            INFO("T" << paper[gen.tree] << (gen.sign > 0 ? "+" : "-"));
            CHECK(gen.i == expect.first);
            CHECK(gen.j == expect.second);
        }
    }

    SECTION("incidences up to one global sign per bidegree") {
        // Group arrows by the source bidegree; within each block the computed
        // and printed tables must agree up to one overall sign.
        std::map<std::pair<int, int>, int> block_sign;
        for (size_t k = 0; k < b.st.gens.size(); ++k) {
            const auto& gen = b.st.gens[k];
            std::map<std::pair<int, int>, int64_t> got;
            for (auto [t, c] : b.st.cx.diff[k])
                got[{paper[b.st.gens[t].tree], b.st.gens[t].sign}] = c;
            std::map<std::pair<int, int>, int64_t> want;
            auto it = incidences_820().find({paper[gen.tree], gen.sign});
            if (it != incidences_820().end())
                for (auto [c, target] : it->second) want[target] = c;
            INFO("T" << paper[gen.tree] << (gen.sign > 0 ? "+" : "-"));
            REQUIRE(got.size() == want.size());
            for (auto [target, c] : want) {
                REQUIRE(got.count(target));
                int64_t mine = got[target];
                REQUIRE(std::abs(mine) == std::abs(c));
                int sign = (mine == c) ? +1 : -1;
                auto key = std::make_pair(gen.i, gen.j);
                auto [slot, inserted] = block_sign.insert({key, sign});
                CHECK(slot->second == sign);
            }
        }
    }

    SECTION("homology") {
        BigradedHomology h = homology_of(b.st.cx);
        CHECK(h.groups.size() == 12);
        CHECK(h.at(1, 3) == GroupSummand{1, {}});
        CHECK(h.at(1, 1) == GroupSummand{0, {2}});
        CHECK(h.at(0, -1) == GroupSummand{2, {}});
        CHECK(h.at(-2, -5) == GroupSummand{1, {2}});
        CHECK(h.at(-4, -9) == GroupSummand{0, {2}});
        CHECK(h.at(-5, -11) == GroupSummand{1, {}});
        CHECK(h == homology_of(CubeComplex::over_tait(g, Variant::Unreduced).complex()));
    }
}

TEST_CASE("ST homology equals cube homology across variants") {
    for (const auto& name : {"unknot1", "trefoil", "trefoil_mirror", "4_1", "hopf", "5_2"}) {
        INFO(name);
        TaitGraph g = checkerboard_and_tait(corpus_entry(name).diagram);
        for (Variant v : {Variant::Unreduced, Variant::ReducedPlus, Variant::ReducedMinus}) {
            INFO(variant_name(v));
            STBuild b = build_st_complex(g, v);
            int per_tree = (v == Variant::Unreduced) ? 2 : 1;
            CHECK(static_cast<int>(b.st.gens.size()) ==
                  per_tree * static_cast<int>(b.fam.trees.size()));
            CHECK(homology_of(b.st.cx) ==
                  homology_of(CubeComplex::over_tait(g, v).complex()));
        }
        // Lee: rational ranks agree.
        STBuild lee = build_st_complex(g, Variant::Lee);
        CHECK(rational_homology_ranks(lee.st.cx) ==
              rational_homology_ranks(CubeComplex::over_tait(g, Variant::Lee).complex()));
    }
}

TEST_CASE("trefoil reduced complex is free of rank three with zero differential") {
    TaitGraph g = checkerboard_and_tait(corpus_entry("trefoil").diagram);
    STBuild b = build_st_complex(g, Variant::ReducedPlus);
    REQUIRE(b.st.gens.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(b.st.cx.diff[k].empty());
    BigradedHomology h = homology_of(b.st.cx);
    int rank = 0;
    for (auto& [ij, grp] : h.groups) {
        rank += grp.rank;
        CHECK(grp.torsion.empty());
    }
    CHECK(rank == 3);
}

TEST_CASE("differential never maps minus generators to plus generators") {
    for (const auto& name : {"trefoil", "4_1", "8_20"}) {
        TaitGraph g = checkerboard_and_tait(corpus_entry(name).diagram);
        STBuild b = build_st_complex(g, Variant::Unreduced);
        for (size_t k = 0; k < b.st.gens.size(); ++k) {
            if (b.st.gens[k].sign > 0) continue;
            for (auto [t, c] : b.st.cx.diff[k]) CHECK(b.st.gens[t].sign == -1);
        }
    }
}

TEST_CASE("ST homology is invariant under edge-order permutations") {
    std::mt19937 rng(5);
    for (const auto& name : {"trefoil", "5_2"}) {
        TaitGraph g = checkerboard_and_tait(corpus_entry(name).diagram);
        BigradedHomology base = homology_of(build_st_complex(g, Variant::Unreduced).st.cx);
        std::vector<int> perm(g.n_edges());
        for (int k = 0; k < g.n_edges(); ++k) perm[k] = k;
        for (int round = 0; round < 3; ++round) {
            std::shuffle(perm.begin(), perm.end(), rng);
            TaitGraph h = g.with_edge_order(perm);
            CHECK(homology_of(build_st_complex(h, Variant::Unreduced).st.cx) == base);
        }
    }
}

TEST_CASE("combinatorial incidence equals the Morse path sum") {
    for (const auto& name : {"trefoil", "unknot1", "5_2", "8_20"}) {
        INFO(name);
        TaitGraph g = checkerboard_and_tait(corpus_entry(name).diagram);
        STBuild b = build_st_complex(g, Variant::Unreduced);
        auto table = tree_of_mask_table(g, b.fam);
        for (size_t from = 0; from < b.st.gens.size(); ++from) {
            for (size_t to = 0; to < b.st.gens.size(); ++to) {
                const auto& gf = b.st.gens[from];
                const auto& gt = b.st.gens[to];
                if (gt.i != gf.i + 1 || gt.j != gf.j) continue;
                int64_t morse_val = 0;
                for (auto [t, c] : b.st.cx.diff[from])
                    if (t == static_cast<int>(to)) morse_val = c;
                int64_t comb = incidence_combinatorial(*b.cube, g, b.fam, b.tmd, b.km, table,
                                                       gf.tree, gf.sign, gt.tree, gt.sign);
                INFO("from tree " << gf.tree << " sign " << gf.sign << " to tree " << gt.tree
                                  << " sign " << gt.sign);
                CHECK(comb == morse_val);
            }
        }
    }
}

TEST_CASE("8_20 signature incidences via the combinatorial route") {
    TaitGraph g = checkerboard_and_tait(corpus_entry("8_20").diagram);
    STBuild b = build_st_complex(g, Variant::Unreduced);
    auto table = tree_of_mask_table(g, b.fam);
    std::map<int, int> bywords;
    for (size_t k = 0; k < b.fam.trees.size(); ++k)
        bywords[words_820().at(b.fam.words[k].str())] = static_cast<int>(k);
    // Gamma(T9+, T19+) = +1: the unique alternating path of the worked example.
    int64_t v = incidence_combinatorial(*b.cube, g, b.fam, b.tmd, b.km, table, bywords[9], +1,
                                        bywords[19], +1);
    CHECK(std::abs(v) == 1);
    // Gamma(T11+, T6-) = 2 up to the block sign.
    int64_t w = incidence_combinatorial(*b.cube, g, b.fam, b.tmd, b.km, table, bywords[11], +1,
                                        bywords[6], -1);
    CHECK(std::abs(w) == 2);
    // Grading mismatch gives zero.
    CHECK(incidence_combinatorial(*b.cube, g, b.fam, b.tmd, b.km, table, bywords[11], +1,
                                  bywords[19], +1) == 0);
}

namespace {

// Brute-force alternating path counts inside a tree block.
struct BlockPaths {
    const CubeComplex& cube;
    const KhovanovMatching& km;
    const std::vector<int>& table;
    int tree = 0;
    detail::HasseDigraph hm;

    BlockPaths(const CubeComplex& c, const KhovanovMatching& k, const std::vector<int>& t, int tr)
        : cube(c), km(k), table(t), tree(tr), hm(c.complex(), k.matching) {}

    // Path counts from src to every generator, restricted to the block.
    std::map<int, int64_t> counts_from(int src) const {
        std::map<int, int64_t> cnt;
        std::vector<int> order;
        std::vector<int8_t> state(cube.size(), 0);
        // Depth-first topological order over block-restricted edges.
        std::function<void(int)> dfs = [&](int v) {
            state[v] = 1;
            for (auto [u, w] : hm.out[v]) {
                if (table[cube.mask_of(u)] != tree) continue;
                if (state[u] == 0) dfs(u);
            }
            state[v] = 2;
            order.push_back(v);
        };
        dfs(src);
        std::reverse(order.begin(), order.end());
        cnt[src] = 1;
        for (int v : order) {
            auto it = cnt.find(v);
            if (it == cnt.end()) continue;
            for (auto [u, w] : hm.out[v]) {
                if (table[cube.mask_of(u)] != tree) continue;
                cnt[u] += it->second;
            }
        }
        return cnt;
    }
};

} // namespace

TEST_CASE("subpath census bijections against brute-force path counts") {
    for (const auto& name : {"trefoil", "unknot1", "4_1", "8_20"}) {
        INFO(name);
        TaitGraph g = checkerboard_and_tait(corpus_entry(name).diagram);
        TreeFamily fam = TreeFamily::of(g);
        auto tmd = build_tree_matching_data(g, fam);
        auto table = tree_of_mask_table(g, fam);

        SECTION(std::string("reduced: negative and positive subpaths / ") + name) {
            CubeComplex cube = CubeComplex::over_tait(g, Variant::ReducedPlus);
            KhovanovMatching km = khovanov_matching(cube, g, fam, tmd, table);
            for (size_t t = 0; t < fam.trees.size(); ++t) {
                int crit = -1;
                ResMask cm = tmd[t].critical_mask;
                const auto& dat = cube.state_data(cm);
                for (uint32_t r = 0; r < dat.n_labelings; ++r)
                    if (!km.matching.matched(dat.base_id + r)) crit = dat.base_id + r;
                REQUIRE(crit >= 0);
                BlockPaths bp(cube, km, table, static_cast<int>(t));
                auto cnt = bp.counts_from(crit);
                std::set<int> reachable;
                for (auto [v, c] : cnt) {
                    if (cube.complex().grade_i[v] != cube.complex().grade_i[crit]) continue;
                    CHECK(c == 1); // at most one alternating path
                    reachable.insert(v);
                }
                auto census = subpath_census(tmd[t].gt, SubpathKind::Negative);
                std::set<int> from_census;
                for (const auto& sp : census) {
                    auto [mask, labels] = subpath_state(cube, tmd[t], 0, sp, SubpathKind::Negative);
                    int gen = cube.generator_id(mask, labels);
                    REQUIRE(gen >= 0);
                    from_census.insert(gen);
                }
                CHECK(from_census == reachable);
                CHECK(from_census.size() == census.size());
            }
        }
    }
}

TEST_CASE("rooted subpath census: the 8_20 examples") {
    TaitGraph g = checkerboard_and_tait(corpus_entry("8_20").diagram);
    TreeFamily fam = TreeFamily::of(g);
    auto tmd = build_tree_matching_data(g, fam);
    std::map<int, int> bywords;
    for (size_t k = 0; k < fam.trees.size(); ++k)
        bywords[words_820().at(fam.words[k].str())] = static_cast<int>(k);
    // T13 (LLdDD L-L-d-) carries a rooted negative subpath through the root.
    {
        int t13 = bywords[13];
        auto census = subpath_census(tmd[t13].gt, SubpathKind::RootedNegative);
        bool some_rooted = false;
        for (const auto& sp : census)
            for (const auto& comp : sp.components)
                if (comp.top_vertex == tmd[t13].gt.root) some_rooted = true;
        CHECK(some_rooted);
    }
    // Trefoil T2 (LLd) carries no nonempty negative subpath: its twist-tree
    // edges are all negative twists.
    {
        TaitGraph tg = checkerboard_and_tait(corpus_entry("trefoil").diagram);
        TreeFamily tf = TreeFamily::of(tg);
        auto ttmd = build_tree_matching_data(tg, tf);
        for (size_t k = 0; k < tf.trees.size(); ++k) {
            if (tf.words[k].str() != "LLd") continue;
            auto census = subpath_census(ttmd[k].gt, SubpathKind::Negative);
            REQUIRE(census.size() == 1);
            CHECK(census[0].components.empty());
        }
    }
    // A single negative-twist edge: exactly one negative subpath (the empty
    // one).
    {
        TaitGraph ug = checkerboard_and_tait(corpus_entry("unknot1").diagram);
        TreeFamily uf = TreeFamily::of(ug);
        auto utmd = build_tree_matching_data(ug, uf);
        REQUIRE(utmd[0].gt.edges.size() == 1);
        if (utmd[0].gt.edges[0].negative_twist) {
            CHECK(subpath_census(utmd[0].gt, SubpathKind::Negative).size() == 1);
        }
    }
}

TEST_CASE("torsion witness for alternating knots") {
    for (const auto& name : {"trefoil", "4_1", "6_2"}) {
        INFO(name);
        TaitGraph g = checkerboard_and_tait(corpus_entry(name).diagram);
        TorsionCertificate cert = torsion_witness_alternating(g);
        CHECK(std::abs(cert.incidence) == 2);
        CHECK(cert.torsion_found);
        CHECK(cert.cycle_length >= 3);
    }
}

TEST_CASE("torsion witness rejects the unknot and the Hopf link") {
    CHECK_THROWS_AS(
        torsion_witness_alternating(checkerboard_and_tait(corpus_entry("unknot").diagram)),
        TooSmall);
    CHECK_THROWS_AS(
        torsion_witness_alternating(checkerboard_and_tait(corpus_entry("hopf").diagram)),
        TooSmall);
}
