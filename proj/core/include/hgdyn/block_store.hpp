#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hgdyn/error.hpp"

namespace hgdyn {

// A slot is either a non-negative element ID or a negative code:
//   -1        end of list (metadata slot of the final block)
//   -2        unused payload slot
//   <= -3     pointer to the next block, next_start = -code - 3
using Slot = std::int64_t;
using ArenaIndex = std::size_t;

inline constexpr Slot kEndSentinel = -1;
inline constexpr Slot kEmptySentinel = -2;
inline constexpr std::size_t kGranularity = 32;

constexpr Slot encode_next(ArenaIndex start) noexcept { return -static_cast<Slot>(start) - 3; }
constexpr ArenaIndex decode_next(Slot code) noexcept { return static_cast<ArenaIndex>(-code - 3); }
constexpr bool is_element(Slot s) noexcept { return s >= 0; }
constexpr bool is_next_pointer(Slot s) noexcept { return s <= -3; }

struct Block {
  ArenaIndex start = 0;
  std::size_t capacity = 0;

  ArenaIndex metadata_index() const noexcept { return start + capacity - 1; }
  std::size_t payload_capacity() const noexcept { return capacity - 1; }
  bool operator==(const Block&) const = default;
};

enum class InsertOutcome { in_place, needs_block };

struct ChainInfo {
  std::size_t size = 0;              // live elements across the chain
  std::size_t payload_capacity = 0;  // sum of payload slots across the chain
  std::size_t blocks = 0;
  Block tail;
};

// Flattened slot array holding many incidence lists. Each list lives in one
// or more blocks whose last slot carries END or a next-block pointer.
class FlatArena {
 public:
  FlatArena() = default;
  explicit FlatArena(std::size_t total_capacity);

  static constexpr std::size_t capacity_for(std::size_t d) noexcept {
    return (d + 1 + kGranularity - 1) / kGranularity * kGranularity;
  }

  Block alloc_block(std::size_t d);
  // All-or-nothing: blocks start at watermark + exclusive prefix sum of capacities.
  std::vector<Block> alloc_batch(std::span<const std::size_t> sizes);

  void write_list(Block b, std::span<const Slot> elems);
  void chain_block(Block b, Block next);

  std::vector<Slot> read_list(ArenaIndex start) const;
  bool remove_element(ArenaIndex start, Slot e);
  InsertOutcome insert_element(ArenaIndex start, Slot e);

  // Recovers a block's extent by scanning to its metadata slot.
  Block block_at(ArenaIndex start) const;
  std::vector<Block> chain(ArenaIndex start) const;
  ChainInfo chain_info(ArenaIndex start) const;
  // Payload to EMPTY and metadata to END; drops any chain continuation.
  void reset_block(Block b);

  // Extends the arena; existing indices stay valid.
  void grow(std::size_t new_total);

  template <class F>
  void for_each(ArenaIndex start, F&& f) const {
    ArenaIndex i = start;
    std::size_t hops = 0;
    while (true) {
      check_index(i);
      const Slot s = slots_[i];
      if (is_element(s)) {
        f(s);
        ++i;
        continue;
      }
      while (s == kEmptySentinel && slots_[i] == kEmptySentinel) {
        ++i;
        check_index(i);
      }
      const Slot meta = slots_[i];
      if (meta == kEndSentinel) return;
      if (!is_next_pointer(meta) || ++hops > watermark_) {
        throw Error(Errc::corrupt_chain, "bad metadata at slot " + std::to_string(i));
      }
      i = decode_next(meta);
    }
  }

  std::size_t watermark() const noexcept { return watermark_; }
  std::size_t total_capacity() const noexcept { return slots_.size(); }
  std::span<const Slot> slots() const noexcept { return slots_; }
  Slot at(ArenaIndex i) const { return slots_.at(i); }

 private:
  void check_index(ArenaIndex i) const {
    if (i >= watermark_) {
      throw Error(Errc::corrupt_chain, "chain escapes arena at slot " + std::to_string(i));
    }
  }
  void init_block(Block b);
  std::size_t count_in_block(const Block& b) const;
  void redistribute(const std::vector<Block>& blocks, std::span<const Slot> elems);

  std::vector<Slot> slots_;
  std::size_t watermark_ = 0;
};

}  // namespace hgdyn
