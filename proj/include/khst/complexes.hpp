#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "khst/errors.hpp"

namespace khst {

/// A finitely generated free bigraded complex over the integers, with the
/// differential raising i by one. Entries are stored as sparse out-rows.
struct BigradedComplex {
    std::vector<int> grade_i;
    std::vector<int> grade_j;
    std::vector<std::vector<std::pair<int, int64_t>>> diff;
    bool j_filtered = false; // Lee-style: differential may raise j (by 4)

    int size() const { return static_cast<int>(grade_i.size()); }

    int add_generator(int i, int j) {
        grade_i.push_back(i);
        grade_j.push_back(j);
        diff.emplace_back();
        return size() - 1;
    }

    void add_entry(int from, int to, int64_t coeff) {
        if (coeff == 0) return;
        for (auto& [t, c] : diff[from])
            if (t == to) {
                c += coeff;
                return;
            }
        diff[from].push_back({to, coeff});
    }

    /// Drop zero entries accumulated by cancellation.
    void compress() {
        for (auto& row : diff) {
            std::vector<std::pair<int, int64_t>> keep;
            for (auto& [t, c] : row)
                if (c != 0) keep.push_back({t, c});
            row.swap(keep);
        }
    }

    /// Verify the differential respects gradings and squares to zero.
    /// Returns an offending pair on failure.
    bool is_complex(std::string* witness = nullptr) const {
        for (int g = 0; g < size(); ++g)
            for (auto [t, c] : diff[g]) {
                if (grade_i[t] != grade_i[g] + 1) {
                    if (witness) *witness = "entry " + std::to_string(g) + "->" + std::to_string(t) +
                                            " does not raise i by 1";
                    return false;
                }
                if (!j_filtered && grade_j[t] != grade_j[g]) {
                    if (witness) *witness = "entry " + std::to_string(g) + "->" + std::to_string(t) +
                                            " does not preserve j";
                    return false;
                }
                if (j_filtered && grade_j[t] < grade_j[g]) {
                    if (witness) *witness = "entry " + std::to_string(g) + "->" + std::to_string(t) +
                                            " lowers j";
                    return false;
                }
            }
        // d^2 = 0.
        for (int g = 0; g < size(); ++g) {
            std::vector<std::pair<int, int64_t>> acc;
            for (auto [t, c] : diff[g])
                for (auto [u, c2] : diff[t]) {
                    bool found = false;
                    for (auto& [v, cv] : acc)
                        if (v == u) {
                            cv += c * c2;
                            found = true;
                            break;
                        }
                    if (!found) acc.push_back({u, c * c2});
                }
            for (auto [u, cv] : acc)
                if (cv != 0) {
                    if (witness)
                        *witness = "d^2 != 0 at generator " + std::to_string(g) + " -> " +
                                   std::to_string(u) + " with coefficient " + std::to_string(cv);
                    return false;
                }
        }
        return true;
    }
};

/// Sparse chain: generator index -> coefficient.
using Chain = std::vector<std::pair<int, int64_t>>;

inline void chain_add(Chain& chain, int gen, int64_t coeff) {
    if (coeff == 0) return;
    for (auto& [g, c] : chain)
        if (g == gen) {
            c += coeff;
            return;
        }
    chain.push_back({gen, coeff});
}

inline void chain_compress(Chain& chain) {
    Chain keep;
    for (auto& [g, c] : chain)
        if (c != 0) keep.push_back({g, c});
    std::sort(keep.begin(), keep.end());
    chain.swap(keep);
}

inline Chain apply_differential(const BigradedComplex& cx, const Chain& chain) {
    Chain out;
    for (auto [g, c] : chain)
        for (auto [t, c2] : cx.diff[g]) chain_add(out, t, c * c2);
    chain_compress(out);
    return out;
}

} // namespace khst
