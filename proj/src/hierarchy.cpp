#include "zenosim/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "zenosim/errors.hpp"

namespace zenosim::heom {

std::size_t simplex_size(int num_exponentials, int depth_cap,
                         std::size_t saturate_at) {
    // C(L+K, K) = prod_{i=1..K} (L+i)/i, computed in saturating integer steps.
    std::size_t count = 1;
    for (int i = 1; i <= num_exponentials; ++i) {
        const unsigned __int128 next =
            static_cast<unsigned __int128>(count) *
            static_cast<unsigned>(depth_cap + i) / static_cast<unsigned>(i);
        if (next > saturate_at) {
            return saturate_at;
        }
        count = static_cast<std::size_t>(next);
    }
    return count;
}

HierarchyLayout HierarchyLayout::build(int num_exponentials, int depth_cap,
                                       std::size_t max_ados) {
    if (num_exponentials < 1 || depth_cap < 0 || depth_cap > 200) {
        throw ContractError("HierarchyLayout: invalid K or L");
    }
    const std::size_t n = simplex_size(num_exponentials, depth_cap, SIZE_MAX);
    if (n > max_ados) {
        std::ostringstream msg;
        msg << "HierarchyLayout: K=" << num_exponentials << ", L=" << depth_cap
            << " enumerates " << n << " ADOs, above the budget of " << max_ados;
        throw CapacityError(msg.str());
    }

    HierarchyLayout layout;
    layout.k_ = num_exponentials;
    layout.l_ = depth_cap;
    layout.n_ = n;
    const int k = num_exponentials;

    layout.indices_.reserve(n * k);
    layout.depths_.reserve(n);
    std::map<std::vector<std::uint8_t>, std::int32_t> position_of;

    // Graded order: all indices of depth w before depth w+1, lexicographic
    // within a grade.
    std::vector<std::uint8_t> idx(k, 0);
    for (int w = 0; w <= depth_cap; ++w) {
        // Enumerate compositions of w into k parts, lexicographically:
        // (0,...,0,w) first, (w,0,...,0) last.
        std::fill(idx.begin(), idx.end(), 0);
        idx[k - 1] = static_cast<std::uint8_t>(w);
        while (true) {
            const auto pos = static_cast<std::int32_t>(layout.depths_.size());
            position_of.emplace(idx, pos);
            layout.indices_.insert(layout.indices_.end(), idx.begin(), idx.end());
            layout.depths_.push_back(static_cast<std::uint8_t>(w));
            // Successor: shift one unit from the rightmost nonzero component
            // to its left neighbor, dumping the remainder into the last slot.
            int i = k - 1;
            while (i >= 0 && idx[i] == 0) {
                --i;
            }
            if (i <= 0) {
                break;
            }
            const int tail = idx[i] - 1;
            idx[i] = 0;
            ++idx[i - 1];
            idx[k - 1] = static_cast<std::uint8_t>(tail);
        }
    }

    layout.up_.assign(n * k, NO_NEIGHBOR);
    layout.down_offsets_.assign(n + 1, 0);
    std::vector<std::uint8_t> probe(k);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::uint8_t* base = layout.indices_.data() + pos * k;
        probe.assign(base, base + k);
        for (int q = 0; q < k; ++q) {
            if (layout.depths_[pos] < depth_cap) {
                ++probe[q];
                layout.up_[pos * k + q] = position_of.at(probe);
                --probe[q];
            }
            if (base[q] > 0) {
                --probe[q];
                layout.down_links_.push_back(
                    {position_of.at(probe), q, base[q]});
                ++probe[q];
                ++layout.down_offsets_[pos + 1];
            }
        }
    }
    for (std::size_t pos = 0; pos < n; ++pos) {
        layout.down_offsets_[pos + 1] += layout.down_offsets_[pos];
    }
    return layout;
}

} // namespace zenosim::heom
