#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "monoeq/poset.hpp"

namespace monoeq {

namespace detail {

// Relation bits of `up` under the relabelling perm, row-major.
inline std::uint64_t relation_code(const std::vector<ElementSet>& up, const std::vector<int>& perm) {
    const std::size_t n = up.size();
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (contains(up[static_cast<std::size_t>(perm[i])], perm[j])) code |= std::uint64_t{1} << (i * n + j);
    return code;
}

inline std::uint64_t canonical_code(const std::vector<ElementSet>& up) {
    std::vector<int> perm(up.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        best = std::min(best, relation_code(up, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace detail

// One representative of every isomorphism class of posets on n elements,
// named v0 .. v{n-1}. Brute force; intended for n <= 7.
inline std::vector<Poset> enumerate_posets(int n) {
    if (n < 0 || n > 7) throw Error(Errc::TooLarge, "poset enumeration is limited to 7 elements");
    std::vector<std::vector<ElementSet>> level{{}};
    for (int m = 1; m <= n; ++m) {
        std::set<std::uint64_t> seen;
        std::vector<std::vector<ElementSet>> next;
        for (const auto& up : level) {
            // New element m-1 is maximal; its strict down-set is any down-set D.
            const int k = m - 1;
            for (ElementSet d = 0; d < (ElementSet{1} << k); ++d) {
                bool closed = true;
                for (int i : members(d))
                    for (int j = 0; j < k && closed; ++j)
                        if (contains(up[static_cast<std::size_t>(j)], i) && !contains(d, j)) closed = false;
                if (!closed) continue;
                std::vector<ElementSet> nu = up;
                for (int i : members(d)) nu[static_cast<std::size_t>(i)] |= bit(k);
                nu.push_back(bit(k));
                if (seen.insert(detail::canonical_code(nu)).second) next.push_back(nu);
            }
        }
        level = std::move(next);
    }
    std::vector<Poset> out;
    for (const auto& up : level) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
        out.push_back(Poset::from_up_masks(names, up));
    }
    return out;
}

inline std::vector<Poset> enumerate_connected_posets(int n) {
    std::vector<Poset> out;
    for (auto& p : enumerate_posets(n))
        if (is_connected(p)) out.push_back(std::move(p));
    return out;
}

}  // namespace monoeq
