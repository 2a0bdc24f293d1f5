#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "khst/complexes.hpp"
#include "khst/tait.hpp"

namespace khst {

enum class Variant : uint8_t { Unreduced, ReducedPlus, ReducedMinus, Lee };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Unreduced: return "unreduced";
        case Variant::ReducedPlus: return "reduced+";
        case Variant::ReducedMinus: return "reduced-";
        case Variant::Lee: return "lee";
    }
    return "?";
}

/// Resolution mask over an ordered crossing list: bit k set means the k-th
/// crossing in the order is B-resolved.
using ResMask = uint32_t;

/// The Khovanov / Lee cube complex over all resolved states of a diagram.
/// Generators are pairs (resolution, labels) with labels assigning 1 or x to
/// each circle. This module is the brute-force verifier; it enumerates every
/// enhanced state. Over a Tait graph the states are exactly the enhanced
/// spanning subgraphs.
class CubeComplex {
  public:
    struct StateData {
        std::vector<std::vector<int>> circles; // sorted arc-index sets, by min arc
        std::vector<int> circle_of_arc;
        int dot_circle = 0;
        int grade_i = 0;
        int base_id = 0;
        uint32_t n_labelings = 0;
    };

    CubeComplex(const LinkDiagram& d, std::vector<int> crossing_order, Variant variant)
        : diagram_(d), order_(std::move(crossing_order)), variant_(variant) {
        if (d.n_crossings() > 22) throw TooLarge("cube oracle refuses beyond 22 crossings");
        if (static_cast<int>(order_.size()) != d.n_crossings())
            throw MalformedCode("crossing order has wrong length");
        if (d.n_crossings() > 0 || d.n_loops() > 0) {
            if (d.orientable()) {
                auto [np, nm] = d.crossing_sign_counts();
                n_plus_ = np;
                n_minus_ = nm;
            } else if (d.n_crossings() > 0) {
                throw MissingOrientation("cube complex gradings need an orientation");
            }
        }
        cx_.j_filtered = (variant == Variant::Lee);
        build();
    }

    static CubeComplex over_tait(const TaitGraph& g, Variant variant) {
        std::vector<int> order;
        order.reserve(g.n_edges());
        for (int e = 0; e < g.n_edges(); ++e) order.push_back(g.edge(e).crossing);
        return CubeComplex(g.diagram(), std::move(order), variant);
    }

    const LinkDiagram& diagram() const { return diagram_; }
    const std::vector<int>& order() const { return order_; }
    Variant variant() const { return variant_; }
    const BigradedComplex& complex() const { return cx_; }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }
    int size() const { return cx_.size(); }

    ResMask mask_of(int gen) const { return gen_mask_[gen]; }
    uint32_t labels_of(int gen) const { return gen_labels_[gen]; }
    const StateData& state_data(ResMask mask) const { return data_[mask]; }

    std::vector<Res> resolution_of_mask(ResMask mask) const {
        std::vector<Res> res(diagram_.n_crossings(), Res::A);
        for (size_t k = 0; k < order_.size(); ++k)
            if ((mask >> k) & 1u) res[order_[k]] = Res::B;
        return res;
    }

    ResMask mask_of_resolution(const std::vector<Res>& res) const {
        ResMask mask = 0;
        for (size_t k = 0; k < order_.size(); ++k)
            if (res[order_[k]] == Res::B) mask |= ResMask(1) << k;
        return mask;
    }

    /// Generator id of an enhanced state, or -1 if excluded by the variant.
    int generator_id(ResMask mask, uint32_t labels) const {
        const StateData& d = data_[mask];
        if (variant_ == Variant::ReducedPlus && ((labels >> d.dot_circle) & 1u)) return -1;
        if (variant_ == Variant::ReducedMinus && !((labels >> d.dot_circle) & 1u)) return -1;
        return d.base_id + label_rank(d, labels);
    }

    int label_of_circle(int gen, int circle) const { return (gen_labels_[gen] >> circle) & 1u; }

    std::string describe(int gen) const {
        std::string s = "res=";
        for (int k = 0; k < diagram_.n_crossings(); ++k)
            s += ((gen_mask_[gen] >> k) & 1u) ? 'B' : 'A';
        s += " eps=";
        const auto& d = data_[gen_mask_[gen]];
        for (size_t c = 0; c < d.circles.size(); ++c)
            s += ((gen_labels_[gen] >> c) & 1u) ? 'x' : '1';
        return s;
    }

  private:
    uint32_t label_rank(const StateData& d, uint32_t labels) const {
        if (variant_ == Variant::Unreduced || variant_ == Variant::Lee) return labels;
        uint32_t low = labels & ((1u << d.dot_circle) - 1u);
        uint32_t high = labels >> (d.dot_circle + 1);
        return low | (high << d.dot_circle);
    }

    uint32_t labels_from_rank(const StateData& d, uint32_t rank) const {
        if (variant_ == Variant::Unreduced || variant_ == Variant::Lee) return rank;
        uint32_t low = rank & ((1u << d.dot_circle) - 1u);
        uint32_t high = rank >> d.dot_circle;
        uint32_t labels = low | (high << (d.dot_circle + 1));
        if (variant_ == Variant::ReducedMinus) labels |= (1u << d.dot_circle);
        return labels;
    }

    void build() {
        const int m = diagram_.n_crossings();
        const uint64_t n_masks = uint64_t(1) << m;
        int dot_arc = diagram_.n_arcs() > 0 ? diagram_.dotted_arc_or_default() : 0;

        data_.resize(n_masks);
        int64_t total = 0;
        for (uint64_t mask = 0; mask < n_masks; ++mask) {
            StateData& d = data_[mask];
            d.circles = diagram_.circles(resolution_of_mask(static_cast<ResMask>(mask)));
            d.circle_of_arc.assign(diagram_.n_arcs(), -1);
            for (size_t c = 0; c < d.circles.size(); ++c)
                for (int a : d.circles[c]) d.circle_of_arc[a] = static_cast<int>(c);
            d.dot_circle = diagram_.n_arcs() > 0 ? d.circle_of_arc[dot_arc] : 0;
            d.grade_i = __builtin_popcountll(mask) - n_minus_;
            int nc = static_cast<int>(d.circles.size());
            bool full = (variant_ == Variant::Unreduced || variant_ == Variant::Lee);
            d.n_labelings = full ? (1u << nc) : (1u << (nc - 1));
            d.base_id = static_cast<int>(total);
            total += d.n_labelings;
            if (total > 4'000'000) throw TooLarge("cube complex generator count too large");
        }

        gen_mask_.resize(total);
        gen_labels_.resize(total);
        for (uint64_t mask = 0; mask < n_masks; ++mask) {
            const StateData& d = data_[mask];
            for (uint32_t rank = 0; rank < d.n_labelings; ++rank) {
                uint32_t labels = labels_from_rank(d, rank);
                int xs = __builtin_popcount(labels);
                int ones = static_cast<int>(d.circles.size()) - xs;
                int j = d.grade_i + (ones - xs) + n_plus_ - n_minus_;
                int id = cx_.add_generator(d.grade_i, j);
                gen_mask_[id] = static_cast<ResMask>(mask);
                gen_labels_[id] = labels;
            }
        }

        for (int gen = 0; gen < cx_.size(); ++gen) add_boundary(gen);
        cx_.compress();
    }

    void add_boundary(int gen) {
        const int m = diagram_.n_crossings();
        ResMask mask = gen_mask_[gen];
        uint32_t labels = gen_labels_[gen];
        const StateData& d = data_[mask];
        bool lee = (variant_ == Variant::Lee);

        for (int k = 0; k < m; ++k) {
            if ((mask >> k) & 1u) continue; // already B-resolved
            int b_smaller = __builtin_popcount(mask & ((ResMask(1) << k) - 1u));
            int64_t sign = (b_smaller % 2 == 0) ? 1 : -1;
            ResMask mask2 = mask | (ResMask(1) << k);
            emit_terms(gen, d, labels, mask2, data_[mask2], sign, lee);
        }
    }

    void emit_terms(int gen, const StateData& d, uint32_t labels, ResMask mask2,
                    const StateData& d2, int64_t sign, bool lee) {
        const auto& c1 = d.circles;
        const auto& c2 = d2.circles;
        if (c2.size() + 1 == c1.size()) {
            // Merge: two circles of the source fuse into one.
            int f1 = -1, f2 = -1, target = -1;
            for (size_t a = 0; a < c1.size(); ++a) {
                int owner = d2.circle_of_arc[c1[a].front()];
                if (c2[owner] != c1[a]) {
                    (f1 < 0 ? f1 : f2) = static_cast<int>(a);
                    target = owner;
                }
            }
            uint32_t base = 0;
            for (size_t a = 0; a < c1.size(); ++a) {
                if (static_cast<int>(a) == f1 || static_cast<int>(a) == f2) continue;
                int owner = d2.circle_of_arc[c1[a].front()];
                if ((labels >> a) & 1u) base |= 1u << owner;
            }
            int la = (labels >> f1) & 1u, lb = (labels >> f2) & 1u;
            // m(1,1)=1, m(1,x)=m(x,1)=x, m(x,x)=0; Lee adds m(x,x)=1.
            if (la + lb == 0) {
                push(gen, mask2, base, sign);
            } else if (la + lb == 1) {
                push(gen, mask2, base | (1u << target), sign);
            } else if (lee) {
                push(gen, mask2, base, sign);
            }
        } else if (c2.size() == c1.size() + 1) {
            // Split: one circle of the source splits in two.
            int source = -1, t1 = -1, t2 = -1;
            for (size_t b = 0; b < c2.size(); ++b) {
                int owner = d.circle_of_arc[c2[b].front()];
                if (c1[owner] != c2[b]) {
                    (t1 < 0 ? t1 : t2) = static_cast<int>(b);
                    source = owner;
                }
            }
            uint32_t base = 0;
            for (size_t b = 0; b < c2.size(); ++b) {
                if (static_cast<int>(b) == t1 || static_cast<int>(b) == t2) continue;
                int owner = d.circle_of_arc[c2[b].front()];
                if ((labels >> owner) & 1u) base |= 1u << b;
            }
            int ls = (labels >> source) & 1u;
            // Delta(1) = 1x + x1, Delta(x) = xx; Lee adds Delta(x) += 11.
            if (ls == 0) {
                push(gen, mask2, base | (1u << t2), sign);
                push(gen, mask2, base | (1u << t1), sign);
            } else {
                push(gen, mask2, base | (1u << t1) | (1u << t2), sign);
                if (lee) push(gen, mask2, base, sign);
            }
        } else {
            throw std::logic_error("toggle changed circle count by more than one");
        }
    }

    void push(int gen, ResMask mask2, uint32_t labels2, int64_t coeff) {
        int id = generator_id(mask2, labels2);
        if (id < 0) return; // projected away in the reduced-plus quotient
        cx_.add_entry(gen, id, coeff);
    }

    LinkDiagram diagram_;
    std::vector<int> order_;
    Variant variant_;
    BigradedComplex cx_;
    int n_plus_ = 0, n_minus_ = 0;
    std::vector<StateData> data_;
    std::vector<ResMask> gen_mask_;
    std::vector<uint32_t> gen_labels_;
};

/// Pack a Tait spanning subgraph as a resolution mask for a cube built with
/// CubeComplex::over_tait on the same graph.
inline ResMask mask_of_subgraph(const TaitGraph& g, EdgeSet subgraph) {
    ResMask mask = 0;
    for (int e = 0; e < g.n_edges(); ++e) {
        bool in = has_edge(subgraph, e);
        bool b_res = (g.edge(e).sign > 0) ? !in : in;
        if (b_res) mask |= ResMask(1) << e;
    }
    return mask;
}

inline EdgeSet subgraph_of_mask(const TaitGraph& g, ResMask mask) {
    EdgeSet s = 0;
    for (int e = 0; e < g.n_edges(); ++e) {
        bool b_res = (mask >> e) & 1u;
        bool in = (g.edge(e).sign > 0) ? !b_res : b_res;
        if (in) s |= EdgeSet(1) << e;
    }
    return s;
}

/// The distinguished Lee generator of an orientation: the oriented-resolution
/// state with circles labeled (x+1)/(x-1) by the mod-2 nesting rule, expanded
/// in the {1,x} basis.
inline Chain oriented_resolution_generator(const CubeComplex& cube, bool reversed = false) {
    LinkDiagram diag = cube.diagram();
    if (!diag.orientable()) throw MissingOrientation("oriented resolution needs an orientation");
    if (reversed) diag.reverse_all_components();

    std::vector<Res> res(diag.n_crossings());
    for (int c = 0; c < diag.n_crossings(); ++c) res[c] = diag.oriented_resolution(c);
    ResMask mask = cube.mask_of_resolution(res);
    auto circles = diag.circles(res);
    int nc = static_cast<int>(circles.size());

    std::vector<int> delta(nc, +1); // +1 for label (x+1), -1 for (x-1)
    if (diag.n_crossings() == 0) {
        // Crossing-free loops: unnested, counterclockwise when oriented +1.
        for (int c = 0; c < nc; ++c) {
            bool ccw = diag.orientation()[c] == 1;
            delta[c] = (ccw ? 1 : 0) % 2 == 0 ? +1 : -1;
        }
    } else {
        std::vector<int> region = diag.resolved_regions(res);
        std::vector<int> left_region(nc, -1), right_region(nc, -1);
        for (int c = 0; c < nc; ++c) {
            int arc = circles[c].front();
            bool fwd = diag.arc_forward(arc);
            int start_arc = arc;
            bool start_fwd = fwd;
            do {
                ArcEnd head = fwd ? diag.arc_ends(arc)[1] : diag.arc_ends(arc)[0];
                int cr = head.crossing, k = head.slot;
                int left = region[diag.corner_id(cr, (k + 3) % 4)];
                int right = region[diag.corner_id(cr, k)];
                if (left_region[c] < 0) {
                    left_region[c] = left;
                    right_region[c] = right;
                } else if (left_region[c] != left || right_region[c] != right) {
                    throw std::logic_error("inconsistent circle sides in oriented resolution");
                }
                int l;
                if (res[cr] == Res::A)
                    l = (k == 0) ? 1 : (k == 1) ? 0 : (k == 2) ? 3 : 2;
                else
                    l = (k == 0) ? 3 : (k == 3) ? 0 : (k == 1) ? 2 : 1;
                int next = diag.arc_at(cr, l);
                const auto& e2 = diag.arc_ends(next);
                fwd = (e2[0].crossing == cr && e2[0].slot == l);
                arc = next;
            } while (!(arc == start_arc && fwd == start_fwd));
        }

        // The circles cut the sphere into (#circles + 1) regions whose
        // incidence graph is a tree; depth below the outer region gives the
        // nesting number.
        std::map<int, std::vector<std::pair<int, int>>> incidence;
        for (int c = 0; c < nc; ++c) {
            incidence[left_region[c]].push_back({c, right_region[c]});
            incidence[right_region[c]].push_back({c, left_region[c]});
        }
        int outer = region[diag.corner_id(0, 0)];
        std::map<int, int> depth;
        depth[outer] = 0;
        std::vector<int> queue = {outer};
        std::vector<int> circle_depth(nc, -1), interior_left(nc, 0);
        size_t qi = 0;
        while (qi < queue.size()) {
            int r = queue[qi++];
            for (auto [c, other] : incidence[r]) {
                if (circle_depth[c] >= 0) continue;
                circle_depth[c] = depth[r];
                interior_left[c] = (left_region[c] == other) ? 1 : 0;
                if (!depth.count(other)) {
                    depth[other] = depth[r] + 1;
                    queue.push_back(other);
                }
            }
        }
        for (int c = 0; c < nc; ++c) {
            if (circle_depth[c] < 0) throw std::logic_error("region tree missed a circle");
            bool ccw = interior_left[c] == 1; // counterclockwise: interior on the left
            delta[c] = ((circle_depth[c] + (ccw ? 1 : 0)) % 2 == 0) ? +1 : -1;
        }
    }

    Chain chain;
    for (uint32_t labels = 0; labels < (1u << nc); ++labels) {
        int64_t coeff = 1;
        for (int c = 0; c < nc; ++c)
            if (!((labels >> c) & 1u) && delta[c] < 0) coeff = -coeff;
        int id = cube.generator_id(mask, labels);
        if (id >= 0) chain_add(chain, id, coeff);
    }
    chain_compress(chain);
    return chain;
}

// ---------------------------------------------------------------------------
// Saddle cobordism
// ---------------------------------------------------------------------------

/// A single saddle (band) move joining two arcs of a diagram, or an arc to
/// itself (splitting off a crossing-free circle). Both diagrams share the
/// crossing list; the caller asserts the band is geometrically realizable.
struct SaddleMove {
    LinkDiagram from;
    LinkDiagram to;
    int arc1_label = 0, arc2_label = 0;
};

/// A band is realizable as a single planar saddle only if every resolution's
/// circle count moves by exactly one.
inline bool saddle_coherent(const SaddleMove& mv) {
    int n = mv.from.n_crossings();
    for (uint64_t s = 0; s < (uint64_t(1) << n); ++s) {
        std::vector<Res> res(n);
        for (int c = 0; c < n; ++c) res[c] = ((s >> c) & 1u) ? Res::B : Res::A;
        int cf = static_cast<int>(mv.from.circles(res).size());
        int ct = static_cast<int>(mv.to.circles(res).size());
        if (std::abs(cf - ct) != 1) return false;
    }
    return true;
}

inline SaddleMove saddle_move(const LinkDiagram& d, int arc1_label, int arc2_label) {
    SaddleMove mv;
    mv.from = d;
    mv.arc1_label = arc1_label;
    mv.arc2_label = arc2_label;
    int a1 = d.arc_index(arc1_label);
    int a2 = d.arc_index(arc2_label);
    bool loop1 = d.is_loop_arc(a1), loop2 = d.is_loop_arc(a2);

    if (a1 == a2) {
        mv.to = LinkDiagram(d.crossings(), d.n_loops() + 1);
        return mv;
    }
    if (loop1 || loop2) {
        mv.to = LinkDiagram(d.crossings(), d.n_loops() - 1);
        return mv;
    }
    // Cut both arcs and reconnect across the band. Two reconnections are
    // possible; keep the one realizable as a planar saddle.
    ArcEnd h1 = d.arc_ends(a1)[1];
    ArcEnd h2 = d.arc_ends(a2)[1];
    ArcEnd t2 = d.arc_ends(a2)[0];
    for (const ArcEnd& other : {h2, t2}) {
        std::vector<Crossing> cs = d.crossings();
        std::swap(cs[h1.crossing].arcs[h1.slot], cs[other.crossing].arcs[other.slot]);
        mv.to = LinkDiagram(cs, d.n_loops());
        if (saddle_coherent(mv)) return mv;
    }
    throw IncompatibleBand("no coherent reconnection of the two arcs");
}

/// Image of one generator of cube_from under the saddle chain map.
inline Chain saddle_apply(const SaddleMove& mv, const CubeComplex& cube_from,
                          const CubeComplex& cube_to, int gen) {
    ResMask mask = cube_from.mask_of(gen);
    uint32_t labels = cube_from.labels_of(gen);
    const auto& cf = cube_from.state_data(mask).circles;
    const auto& ct = cube_to.state_data(mask).circles;

    std::set<int> from_labels, to_labels;
    for (int a = 0; a < mv.from.n_arcs(); ++a) from_labels.insert(mv.from.arc_label(a));
    for (int a = 0; a < mv.to.n_arcs(); ++a) to_labels.insert(mv.to.arc_label(a));

    auto touched = [&](const LinkDiagram& d, const std::set<int>& other,
                       const std::vector<int>& circ) {
        for (int a : circ) {
            int lbl = d.arc_label(a);
            if (lbl == mv.arc1_label || lbl == mv.arc2_label) return true;
            if (!other.count(lbl)) return true;
        }
        return false;
    };
    auto label_set = [](const LinkDiagram& d, const std::vector<int>& circ) {
        std::set<int> s;
        for (int a : circ) s.insert(d.arc_label(a));
        return s;
    };

    std::vector<int> from_touched, to_touched;
    std::map<std::set<int>, int> to_by_content;
    for (size_t b = 0; b < ct.size(); ++b) {
        if (touched(mv.to, from_labels, ct[b])) to_touched.push_back(static_cast<int>(b));
        else to_by_content[label_set(mv.to, ct[b])] = static_cast<int>(b);
    }
    for (size_t a = 0; a < cf.size(); ++a)
        if (touched(mv.from, to_labels, cf[a])) from_touched.push_back(static_cast<int>(a));

    // Transfer labels of untouched circles by arc-label content.
    uint32_t base = 0;
    for (size_t a = 0; a < cf.size(); ++a) {
        if (touched(mv.from, to_labels, cf[a])) continue;
        auto it = to_by_content.find(label_set(mv.from, cf[a]));
        if (it == to_by_content.end())
            throw IncompatibleBand("circle mismatch away from the band");
        if ((labels >> a) & 1u) base |= 1u << it->second;
    }

    Chain out;
    auto emit = [&](uint32_t lbl) {
        int id = cube_to.generator_id(mask, lbl);
        if (id >= 0) chain_add(out, id, 1);
    };
    if (from_touched.size() == 2 && to_touched.size() == 1) {
        int la = (labels >> from_touched[0]) & 1u;
        int lb = (labels >> from_touched[1]) & 1u;
        int t = to_touched[0];
        if (la + lb == 0) emit(base);
        else if (la + lb == 1) emit(base | (1u << t));
        // m(x,x) = 0
    } else if (from_touched.size() == 1 && to_touched.size() == 2) {
        int ls = (labels >> from_touched[0]) & 1u;
        int t1 = to_touched[0], t2 = to_touched[1];
        if (ls == 0) {
            emit(base | (1u << t1));
            emit(base | (1u << t2));
        } else {
            emit(base | (1u << t1) | (1u << t2));
        }
    } else {
        throw IncompatibleBand("band does not induce a single merge or split");
    }
    chain_compress(out);
    return out;
}

} // namespace khst
