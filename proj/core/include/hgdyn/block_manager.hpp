#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hgdyn/block_store.hpp"

namespace hgdyn {

// Key of a padding node. Compares greater than every real entity ID.
inline constexpr std::int64_t kPadKey = std::numeric_limits<std::int64_t>::max();

struct ManagerEntry {
  std::int64_t id = 0;
  ArenaIndex start = 0;
  bool operator==(const ManagerEntry&) const = default;
};

struct ManagerNode {
  std::int64_t edge_id = kPadKey;
  ArenaIndex start = 0;
  // Free nodes in the subtree rooted here, this node included.
  std::uint32_t avail = 0;
  bool is_free = false;

  bool is_pad() const noexcept { return edge_id == kPadKey; }
};

// 1-based heap index into ManagerTree::nodes().
struct NodeHandle {
  std::size_t index = 0;
  bool operator==(const NodeHandle&) const = default;
};

// Heap index -> in-order rank (both 1-based) in a perfect tree of the given height.
constexpr std::uint64_t heap_index_to_rank(std::uint64_t k, unsigned height) noexcept {
  const unsigned level = static_cast<unsigned>(std::numeric_limits<std::uint64_t>::digits - 1) -
                         static_cast<unsigned>(__builtin_clzll(k));
  const std::uint64_t offset = k - (std::uint64_t{1} << level);
  return (2 * offset + 1) << (height - 1 - level);
}

// Array-backed complete binary search tree mapping entity IDs to block
// starts. Deleted entries stay in place as free nodes until reassigned or
// dropped by rebuild(); avail counters let a batch of workers each locate a
// distinct free node without coordination.
class ManagerTree {
 public:
  ManagerTree() = default;

  // entries must be strictly increasing by id.
  static ManagerTree build(std::span<const ManagerEntry> entries);

  std::optional<NodeHandle> find(std::int64_t id) const noexcept;
  NodeHandle search(std::int64_t id) const;
  std::vector<NodeHandle> search_batch(std::span<const std::int64_t> ids) const;

  void mark_deleted(std::span<const std::int64_t> ids);

  NodeHandle find_kth_available(std::uint64_t k) const;
  ManagerEntry reassign(NodeHandle n);
  // Claims the free nodes of rank 1..count, in rank order.
  std::vector<ManagerEntry> claim_available(std::size_t count);

  ManagerTree rebuild(std::span<const ManagerEntry> extra) const;

  // Live (non-free, non-pad) entries in id order.
  std::vector<ManagerEntry> live_entries() const;

  const ManagerNode& node(NodeHandle h) const { return nodes_.at(h.index); }
  // nodes()[0] is unused.
  std::span<const ManagerNode> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return size_; }
  unsigned height() const noexcept { return height_; }
  std::size_t slot_count() const noexcept { return nodes_.empty() ? 0 : nodes_.size() - 1; }
  std::uint32_t root_avail() const noexcept { return nodes_.size() > 1 ? nodes_[1].avail : 0; }

 private:
  std::uint32_t child_avail(std::size_t k) const noexcept {
    return k < nodes_.size() ? nodes_[k].avail : 0;
  }
  // Recomputes avail bottom-up along the ancestor paths of the given nodes,
  // one tree level at a time.
  void propagate(std::vector<std::size_t> touched);

  std::vector<ManagerNode> nodes_;
  std::size_t size_ = 0;
  unsigned height_ = 0;
};

}  // namespace hgdyn
