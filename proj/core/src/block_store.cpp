#include "hgdyn/block_store.hpp"

#include <algorithm>
#include <numeric>

namespace hgdyn {

FlatArena::FlatArena(std::size_t total_capacity) : slots_(total_capacity, kEmptySentinel) {}

void FlatArena::init_block(Block b) {
  std::fill_n(slots_.begin() + static_cast<std::ptrdiff_t>(b.start), b.capacity - 1, kEmptySentinel);
  slots_[b.metadata_index()] = kEndSentinel;
}

Block FlatArena::alloc_block(std::size_t d) {
  const std::size_t cap = capacity_for(d);
  if (watermark_ + cap > slots_.size()) {
    throw Error(Errc::arena_exhausted, "need " + std::to_string(cap) + " slots, " +
                                           std::to_string(slots_.size() - watermark_) + " left");
  }
  Block b{watermark_, cap};
  watermark_ += cap;
  init_block(b);
  return b;
}

std::vector<Block> FlatArena::alloc_batch(std::span<const std::size_t> sizes) {
  const auto n = static_cast<std::ptrdiff_t>(sizes.size());
  std::vector<std::size_t> caps(sizes.size());
  std::transform(sizes.begin(), sizes.end(), caps.begin(), [](std::size_t d) { return capacity_for(d); });
  std::vector<std::size_t> offsets(sizes.size());
  std::exclusive_scan(caps.begin(), caps.end(), offsets.begin(), std::size_t{0});
  const std::size_t total = caps.empty() ? 0 : offsets.back() + caps.back();
  if (watermark_ + total > slots_.size()) {
    throw Error(Errc::arena_exhausted, "batch needs " + std::to_string(total) + " slots, " +
                                           std::to_string(slots_.size() - watermark_) + " left");
  }
  const std::size_t base = watermark_;
  watermark_ += total;

  std::vector<Block> blocks(sizes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    blocks[i] = Block{base + offsets[i], caps[i]};
    init_block(blocks[i]);
  }
  return blocks;
}

void FlatArena::write_list(Block b, std::span<const Slot> elems) {
  if (elems.size() > b.payload_capacity()) {
    throw Error(Errc::overflow, std::to_string(elems.size()) + " elements into a " +
                                    std::to_string(b.capacity) + "-slot block");
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i] < 0 || (i > 0 && elems[i] <= elems[i - 1])) {
      throw Error(Errc::invalid_argument, "list must be non-negative and strictly increasing");
    }
  }
  auto out = std::copy(elems.begin(), elems.end(), slots_.begin() + static_cast<std::ptrdiff_t>(b.start));
  std::fill(out, slots_.begin() + static_cast<std::ptrdiff_t>(b.metadata_index()), kEmptySentinel);
}

void FlatArena::chain_block(Block b, Block next) {
  Slot& meta = slots_.at(b.metadata_index());
  if (is_next_pointer(meta)) {
    throw Error(Errc::already_chained, "block at " + std::to_string(b.start) + " already has a successor");
  }
  meta = encode_next(next.start);
}

std::vector<Slot> FlatArena::read_list(ArenaIndex start) const {
  std::vector<Slot> out;
  for_each(start, [&](Slot s) { out.push_back(s); });
  return out;
}

Block FlatArena::block_at(ArenaIndex start) const {
  ArenaIndex i = start;
  while (true) {
    check_index(i);
    const Slot s = slots_[i];
    if (s == kEndSentinel || is_next_pointer(s)) break;
    ++i;
  }
  return Block{start, i - start + 1};
}

std::vector<Block> FlatArena::chain(ArenaIndex start) const {
  std::vector<Block> out;
  ArenaIndex at = start;
  while (true) {
    Block b = block_at(at);
    out.push_back(b);
    const Slot meta = slots_[b.metadata_index()];
    if (meta == kEndSentinel) break;
    at = decode_next(meta);
    if (out.size() > watermark_) throw Error(Errc::corrupt_chain, "cycle in chain");
  }
  return out;
}

std::size_t FlatArena::count_in_block(const Block& b) const {
  std::size_t n = 0;
  while (n < b.payload_capacity() && is_element(slots_[b.start + n])) ++n;
  return n;
}

ChainInfo FlatArena::chain_info(ArenaIndex start) const {
  ChainInfo info;
  for (const Block& b : chain(start)) {
    info.size += count_in_block(b);
    info.payload_capacity += b.payload_capacity();
    info.blocks += 1;
    info.tail = b;
  }
  return info;
}

void FlatArena::reset_block(Block b) { init_block(b); }

void FlatArena::grow(std::size_t new_total) {
  if (new_total > slots_.size()) slots_.resize(new_total, kEmptySentinel);
}

bool FlatArena::remove_element(ArenaIndex start, Slot e) {
  for (const Block& b : chain(start)) {
    const std::size_t n = count_in_block(b);
    auto first = slots_.begin() + static_cast<std::ptrdiff_t>(b.start);
    auto last = first + static_cast<std::ptrdiff_t>(n);
    auto it = std::lower_bound(first, last, e);
    if (it != last && *it == e) {
      std::copy(it + 1, last, it);
      *(last - 1) = kEmptySentinel;
      return true;
    }
    if (it != last) return false;  // sorted: e would have been here
  }
  return false;
}

void FlatArena::redistribute(const std::vector<Block>& blocks, std::span<const Slot> elems) {
  std::size_t taken = 0;
  for (const Block& b : blocks) {
    const std::size_t k = std::min(b.payload_capacity(), elems.size() - taken);
    write_list(b, elems.subspan(taken, k));
    taken += k;
  }
}

InsertOutcome FlatArena::insert_element(ArenaIndex start, Slot e) {
  if (e < 0) throw Error(Errc::invalid_argument, "element IDs are non-negative");
  const std::vector<Block> blocks = chain(start);
  std::vector<std::size_t> counts(blocks.size());
  std::size_t size = 0;
  std::size_t payload = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    counts[i] = count_in_block(blocks[i]);
    size += counts[i];
    payload += blocks[i].payload_capacity();
  }

  // Target: the block holding the first element greater than e, else the
  // last block that holds anything.
  std::size_t target = blocks.size();
  std::size_t last_nonempty = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (counts[i] == 0) continue;
    last_nonempty = i;
    const Block& b = blocks[i];
    auto first = slots_.begin() + static_cast<std::ptrdiff_t>(b.start);
    auto last = first + static_cast<std::ptrdiff_t>(counts[i]);
    auto it = std::lower_bound(first, last, e);
    if (it != last && *it == e) throw Error(Errc::duplicate, "element already present");
    if (it != last) {
      target = i;
      break;
    }
  }
  if (target == blocks.size()) target = last_nonempty;

  if (counts[target] < blocks[target].payload_capacity()) {
    const Block& b = blocks[target];
    auto first = slots_.begin() + static_cast<std::ptrdiff_t>(b.start);
    auto last = first + static_cast<std::ptrdiff_t>(counts[target]);
    auto it = std::lower_bound(first, last, e);
    std::copy_backward(it, last, last + 1);
    *it = e;
    return InsertOutcome::in_place;
  }
  if (size + 1 > payload) return InsertOutcome::needs_block;

  std::vector<Slot> all = read_list(start);
  all.insert(std::lower_bound(all.begin(), all.end(), e), e);
  redistribute(blocks, all);
  return InsertOutcome::in_place;
}

}  // namespace hgdyn
