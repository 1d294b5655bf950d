#pragma once

#include <cstdint>
#include <vector>

namespace zenosim::heom {

// Dense enumeration of every multi-index with depth <= L over K exponentials
// (stars-and-bars count C(L+K, K)), graded-lexicographic order, with up/down
// neighbor tables. Position 0 is the zero index (the physical state).
class HierarchyLayout {
public:
    static constexpr std::int32_t NO_NEIGHBOR = -1;

    // Throws CapacityError when the enumeration would exceed max_ados.
    static HierarchyLayout build(int num_exponentials, int depth_cap,
                                 std::size_t max_ados);

    int num_exponentials() const { return k_; }
    int depth_cap() const { return l_; }
    std::size_t size() const { return n_; }

    int component(std::size_t pos, int q) const {
        return indices_[pos * k_ + q];
    }
    int depth(std::size_t pos) const { return depths_[pos]; }

    // Position of the index + e_q, or NO_NEIGHBOR past the depth cap.
    std::int32_t up(std::size_t pos, int q) const { return up_[pos * k_ + q]; }

    struct DownLink {
        std::int32_t pos;     // position of index - e_q
        std::int32_t exponential; // q
        std::int32_t count;   // the component l_q before lowering
    };
    // Down links exist only for nonzero components, so at most depth() many.
    const DownLink* down_begin(std::size_t pos) const {
        return down_links_.data() + down_offsets_[pos];
    }
    const DownLink* down_end(std::size_t pos) const {
        return down_links_.data() + down_offsets_[pos + 1];
    }

private:
    int k_ = 0;
    int l_ = 0;
    std::size_t n_ = 0;
    std::vector<std::uint8_t> indices_; // n * k components
    std::vector<std::uint8_t> depths_;
    std::vector<std::int32_t> up_;
    std::vector<DownLink> down_links_;
    std::vector<std::uint32_t> down_offsets_;
};

// C(L+K, K) without enumerating; saturates at the cap instead of overflowing.
std::size_t simplex_size(int num_exponentials, int depth_cap,
                         std::size_t saturate_at = SIZE_MAX);

} // namespace zenosim::heom
