#pragma once

#include <vector>

#include "khst/laurent.hpp"
#include "khst/pd.hpp"

namespace khst {

/// Graded Euler characteristic of Khovanov homology straight from the Kauffman
/// bracket state sum, independent of the Tait-graph machinery:
///   (-1)^{n-} q^{n+ - 2n-} sum_s (-q)^{|B(s)|} (q + q^{-1})^{|circles(s)|}.
inline Laurent kauffman_jones(const LinkDiagram& d) {
    const int n = d.n_crossings();
    if (n > 24) throw TooLarge("Kauffman state sum capped at 24 crossings");
    auto [np, nm] = (n > 0 || d.n_loops() > 0) ? d.crossing_sign_counts() : std::pair<int, int>{0, 0};

    Laurent total;
    Laurent qplus = Laurent::q(1) + Laurent::q(-1);
    for (uint64_t s = 0; s < (uint64_t(1) << n); ++s) {
        std::vector<Res> res(n);
        int b = 0;
        for (int c = 0; c < n; ++c) {
            bool is_b = (s >> c) & 1u;
            res[c] = is_b ? Res::B : Res::A;
            if (is_b) ++b;
        }
        int circles = static_cast<int>(d.circles(res).size());
        Laurent term = qplus.pow(circles);
        term *= Laurent((b % 2 == 0) ? 1 : -1, b);
        total += term;
    }
    Laurent norm(((nm % 2) == 0) ? 1 : -1, np - 2 * nm);
    return norm * total;
}

} // namespace khst
