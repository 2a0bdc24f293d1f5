#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "khst/errors.hpp"

namespace khst {

/// One crossing of a planar diagram. Slots list the four incident arc labels
/// counterclockwise, slot 0 being the incoming under-strand.
struct Crossing {
    std::array<int, 4> arcs;
};

/// A-resolution pairs slots (0,1) and (2,3); B-resolution pairs (0,3) and (1,2).
enum class Res : uint8_t { A = 0, B = 1 };

/// End of an arc: (crossing index, slot).
struct ArcEnd {
    int crossing = -1;
    int slot = -1;
    bool valid() const { return crossing >= 0; }
};

namespace detail {

class DSU {
  public:
    explicit DSU(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }
    bool same(int a, int b) const { return find(a) == find(b); }

  private:
    mutable std::vector<int> parent_;
};

} // namespace detail

/// A connected link diagram given by a PD code, plus optional crossing-free
/// loop components (used only for crossingless playground diagrams).
class LinkDiagram {
  public:
    LinkDiagram() = default;

    LinkDiagram(std::vector<Crossing> crossings, int loops = 0,
                std::optional<int> dotted_arc = std::nullopt)
        : crossings_(std::move(crossings)), n_loops_(loops) {
        build();
        if (dotted_arc) set_dotted_arc(*dotted_arc);
    }

    int n_crossings() const { return static_cast<int>(crossings_.size()); }
    int n_loops() const { return n_loops_; }
    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<int>& arcs() const { return arc_ids_; }
    int n_arcs() const { return static_cast<int>(arc_ids_.size()); }

    int arc_index(int arc_label) const {
        auto it = std::lower_bound(arc_ids_.begin(), arc_ids_.end(), arc_label);
        if (it == arc_ids_.end() || *it != arc_label)
            throw MalformedCode("unknown arc label " + std::to_string(arc_label));
        return static_cast<int>(it - arc_ids_.begin());
    }
    int arc_label(int idx) const { return arc_ids_[idx]; }
    bool is_loop_arc(int idx) const { return !ends_[idx][0].valid(); }

    /// The two (crossing, slot) occurrences of an arc, in PD reading order.
    const std::array<ArcEnd, 2>& arc_ends(int idx) const { return ends_[idx]; }

    int arc_at(int crossing, int slot) const {
        return arc_index(crossings_[crossing].arcs[slot]);
    }

    int n_components() const { return static_cast<int>(components_.size()); }
    const std::vector<std::vector<int>>& components() const { return components_; }
    int component_of_arc(int arc_idx) const { return comp_of_arc_[arc_idx]; }

    std::optional<int> dotted_arc() const { return dotted_arc_; }
    void set_dotted_arc(int arc_label) { dotted_arc_ = arc_index(arc_label); }
    /// Defaults to the lowest arc label when unset.
    int dotted_arc_or_default() const { return dotted_arc_ ? *dotted_arc_ : 0; }

    bool orientable() const { return orientable_; }
    void set_orientation(const std::vector<int>& dirs) {
        if (!orientable_) throw MissingOrientation("diagram has no consistent strand orientation");
        if (static_cast<int>(dirs.size()) != n_components())
            throw MalformedCode("orientation must list one +1/-1 per component");
        for (int d : dirs)
            if (d != 1 && d != -1) throw MalformedCode("orientation entries must be +1 or -1");
        orientation_ = dirs;
    }
    const std::vector<int>& orientation() const { return orientation_; }
    void reverse_all_components() {
        for (int& d : orientation_) d = -d;
    }

    /// Direction of an arc under the current orientation: true means the arc
    /// runs from ends[0] to ends[1] in canonical direction times the component
    /// flag.
    bool arc_forward(int arc_idx) const {
        require_oriented();
        int d = orientation_[comp_of_arc_[arc_idx]];
        return (d == 1) == canonical_forward_[arc_idx];
    }

    /// Writhe sign of a crossing. Requires an orientation.
    int crossing_sign(int c) const {
        require_oriented();
        // Direction of under-strand: +1 if it flows slot0 -> slot2.
        int under = under_forward(c) ? 1 : -1;
        // Direction of over-strand: +1 if it flows slot3 -> slot1.
        int over = over_forward(c) ? 1 : -1;
        return under * over;
    }

    std::pair<int, int> crossing_sign_counts() const {
        int np = 0, nm = 0;
        for (int c = 0; c < n_crossings(); ++c) (crossing_sign(c) > 0 ? np : nm)++;
        return {np, nm};
    }

    int writhe() const {
        auto [np, nm] = crossing_sign_counts();
        return np - nm;
    }

    /// Resolution choice compatible with the orientation (the Seifert smoothing).
    Res oriented_resolution(int c) const { return crossing_sign(c) > 0 ? Res::A : Res::B; }

    /// True if over- and under-passages alternate along every component.
    bool is_alternating() const {
        if (n_crossings() == 0) return true;
        for (const auto& comp : components_) {
            // Walk passages: each arc's forward end is one passage.
            int first_arc = comp.front();
            int arc = first_arc;
            bool fwd = canonical_forward_[arc];
            std::vector<bool> under_flags;
            do {
                ArcEnd head = fwd ? ends_[arc][1] : ends_[arc][0];
                under_flags.push_back(head.slot == 0 || head.slot == 2);
                auto [next_arc, next_fwd] = continue_through(head);
                arc = next_arc;
                fwd = next_fwd;
            } while (arc != first_arc);
            size_t m = under_flags.size();
            if (m % 2 != 0) return false;
            for (size_t k = 0; k < m; ++k)
                if (under_flags[k] == under_flags[(k + 1) % m]) return false;
        }
        return true;
    }

    /// Mirror image: reflects the diagram, keeping under-strands under.
    LinkDiagram mirror() const {
        std::vector<Crossing> cs;
        cs.reserve(crossings_.size());
        for (const auto& c : crossings_)
            cs.push_back(Crossing{{c.arcs[0], c.arcs[3], c.arcs[2], c.arcs[1]}});
        LinkDiagram m(std::move(cs), n_loops_);
        if (dotted_arc_) m.dotted_arc_ = m.arc_index(arc_ids_[*dotted_arc_]);
        return m;
    }

    // ---- corner / region machinery -------------------------------------
    //
    // Corner k of crossing c is the region corner between slots k and k+1
    // (mod 4). Regions of the diagram are corner classes glued along arcs;
    // regions of a resolved state additionally glue the two corners that the
    // smoothing channel connects.

    int corner_id(int crossing, int k) const { return 4 * crossing + k; }
    int n_corners() const { return 4 * n_crossings(); }

    /// Region classes of the underlying 4-valent map (the checkerboard faces).
    /// Returns representative id per corner.
    std::vector<int> diagram_regions() const {
        detail::DSU dsu(n_corners());
        glue_along_arcs(dsu);
        return compress(dsu);
    }

    /// Region classes of a resolved state.
    std::vector<int> resolved_regions(const std::vector<Res>& resolution) const {
        detail::DSU dsu(n_corners());
        glue_along_arcs(dsu);
        for (int c = 0; c < n_crossings(); ++c) {
            if (resolution[c] == Res::A)
                dsu.unite(corner_id(c, 1), corner_id(c, 3));
            else
                dsu.unite(corner_id(c, 0), corner_id(c, 2));
        }
        return compress(dsu);
    }

    /// Circles of a resolved state as sorted arc-index sets, ordered by their
    /// minimal arc. Loop arcs each form their own circle.
    std::vector<std::vector<int>> circles(const std::vector<Res>& resolution) const {
        detail::DSU dsu(n_arcs());
        for (int c = 0; c < n_crossings(); ++c) {
            int a0 = arc_at(c, 0), a1 = arc_at(c, 1), a2 = arc_at(c, 2), a3 = arc_at(c, 3);
            if (resolution[c] == Res::A) {
                dsu.unite(a0, a1);
                dsu.unite(a2, a3);
            } else {
                dsu.unite(a0, a3);
                dsu.unite(a1, a2);
            }
        }
        std::map<int, std::vector<int>> by_rep;
        for (int a = 0; a < n_arcs(); ++a) by_rep[dsu.find(a)].push_back(a);
        std::vector<std::vector<int>> out;
        out.reserve(by_rep.size());
        for (auto& [rep, arcs] : by_rep) out.push_back(std::move(arcs));
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.front() < y.front(); });
        return out;
    }

    // ---- traversal helpers ----------------------------------------------

    /// Continue a strand through a crossing: arrive at `end`, leave at the
    /// opposite slot. Returns (next arc index, next direction is forward).
    std::pair<int, bool> continue_through(const ArcEnd& end) const {
        int out_slot = (end.slot + 2) % 4;
        int next = arc_at(end.crossing, out_slot);
        // Leaving via ends_[next][k]: forward if k == 0.
        const auto& e = ends_[next];
        if (e[0].crossing == end.crossing && e[0].slot == out_slot) return {next, true};
        return {next, false};
    }

    bool under_forward(int c) const {
        // True if the under-strand flows into slot 0 under the current orientation.
        int a0 = arc_at(c, 0);
        const auto& e = ends_[a0];
        bool head_at_0 = (e[1].crossing == c && e[1].slot == 0);
        return arc_forward(a0) == head_at_0;
    }

    bool over_forward(int c) const {
        // True if the over-strand flows into slot 3 (and out of slot 1).
        int a3 = arc_at(c, 3);
        const auto& e = ends_[a3];
        bool head_at_3 = (e[1].crossing == c && e[1].slot == 3);
        return arc_forward(a3) == head_at_3;
    }

  private:
    void require_oriented() const {
        if (!orientable_) throw MissingOrientation("diagram has no consistent strand orientation");
    }

    void glue_along_arcs(detail::DSU& dsu) const {
        for (int a = 0; a < n_arcs(); ++a) {
            if (is_loop_arc(a)) continue;
            const ArcEnd& p = ends_[a][0];
            const ArcEnd& q = ends_[a][1];
            dsu.unite(corner_id(p.crossing, p.slot), corner_id(q.crossing, (q.slot + 3) % 4));
            dsu.unite(corner_id(p.crossing, (p.slot + 3) % 4), corner_id(q.crossing, q.slot));
        }
    }

    std::vector<int> compress(const detail::DSU& dsu) const {
        std::vector<int> rep(n_corners());
        for (int i = 0; i < n_corners(); ++i) rep[i] = dsu.find(i);
        return rep;
    }

    void build() {
        build_pass();
        if (!orientable_ && !misoriented_.empty()) {
            // Rotate the offending crossings by two slots (a PD-equivalent
            // rewrite) so every under-strand enters via slot 0.
            for (int c : misoriented_) {
                auto& a = crossings_[c].arcs;
                std::swap(a[0], a[2]);
                std::swap(a[1], a[3]);
            }
            misoriented_.clear();
            build_pass();
        }
    }

    void build_pass() {
        // Collect arc labels and their ends.
        std::map<int, std::vector<ArcEnd>> occur;
        for (int c = 0; c < n_crossings(); ++c)
            for (int k = 0; k < 4; ++k) occur[crossings_[c].arcs[k]].push_back({c, k});
        for (auto& [label, ends] : occur)
            if (ends.size() != 2)
                throw DanglingArc("arc " + std::to_string(label) + " appears " +
                                  std::to_string(ends.size()) + " times");
        arc_ids_.clear();
        for (auto& [label, ends] : occur) arc_ids_.push_back(label);
        // Loop components get fresh labels past the maximum.
        int next_label = arc_ids_.empty() ? 1 : arc_ids_.back() + 1;
        for (int l = 0; l < n_loops_; ++l) arc_ids_.push_back(next_label + l);
        ends_.assign(arc_ids_.size(), {ArcEnd{}, ArcEnd{}});
        for (auto& [label, ends] : occur) {
            int idx = arc_index(label);
            ends_[idx][0] = ends[0];
            ends_[idx][1] = ends[1];
        }

        // Connectivity of the underlying 4-valent map: crossings joined by arcs.
        if (n_crossings() > 0) {
            detail::DSU dsu(n_crossings());
            for (int a = 0; a < n_arcs(); ++a)
                if (!is_loop_arc(a)) dsu.unite(ends_[a][0].crossing, ends_[a][1].crossing);
            for (int c = 1; c < n_crossings(); ++c)
                if (!dsu.same(0, c)) throw SplitDiagram("underlying 4-valent graph is disconnected");
            if (n_loops_ > 0) throw SplitDiagram("crossing-free loops split the diagram");
        }
        // Crossing-free diagrams may carry several loops; they serve as the
        // cobordism playground and are rejected by the Tait-graph path anyway.

        trace_components();
    }

    void trace_components() {
        components_.clear();
        comp_of_arc_.assign(n_arcs(), -1);
        canonical_forward_.assign(n_arcs(), true);
        orientable_ = true;
        misoriented_.clear();
        for (int start = 0; start < n_arcs(); ++start) {
            if (comp_of_arc_[start] >= 0) continue;
            int comp = static_cast<int>(components_.size());
            components_.emplace_back();
            if (is_loop_arc(start)) {
                comp_of_arc_[start] = comp;
                components_.back().push_back(start);
                continue;
            }
            // Try canonical direction "forward from ends[0] to ends[1]"; if
            // some under-passage enters slot 2, retry reversed. If neither
            // works, keep the forward walk and remember the offending
            // crossings: rotating them by two slots is a PD-equivalent rewrite
            // that restores the slot-0 convention.
            for (int attempt = 0; attempt < 2; ++attempt) {
                bool fwd0 = (attempt == 0);
                std::vector<int> arcs_in_comp;
                std::vector<bool> fwd_flags;
                bool ok = true;
                int arc = start;
                bool fwd = fwd0;
                do {
                    arcs_in_comp.push_back(arc);
                    fwd_flags.push_back(fwd);
                    ArcEnd head = fwd ? ends_[arc][1] : ends_[arc][0];
                    if (head.slot == 2) {
                        ok = false; // under-passage flowing 2 -> 0
                        if (attempt == 1) misoriented_.push_back(head.crossing);
                    }
                    auto [next, next_fwd] = continue_through(head);
                    arc = next;
                    fwd = next_fwd;
                } while (arc != start);
                if (ok || attempt == 1) {
                    if (!ok) orientable_ = false;
                    for (size_t k = 0; k < arcs_in_comp.size(); ++k) {
                        comp_of_arc_[arcs_in_comp[k]] = comp;
                        canonical_forward_[arcs_in_comp[k]] = fwd_flags[k];
                        components_.back().push_back(arcs_in_comp[k]);
                    }
                    break;
                } else {
                    misoriented_.clear();
                }
            }
        }
        orientation_.assign(components_.size(), 1);
    }

    std::vector<int> misoriented_;
    std::vector<Crossing> crossings_;
    int n_loops_ = 0;
    std::vector<int> arc_ids_;
    std::vector<std::array<ArcEnd, 2>> ends_;
    std::vector<std::vector<int>> components_;
    std::vector<int> comp_of_arc_;
    std::vector<bool> canonical_forward_;
    std::vector<int> orientation_;
    bool orientable_ = true;
    std::optional<int> dotted_arc_;
};

} // namespace khst
