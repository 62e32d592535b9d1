#include "hgdyn/block_manager.hpp"

#include <algorithm>
#include <bit>

namespace hgdyn {

namespace {

unsigned level_of(std::size_t k) noexcept { return static_cast<unsigned>(std::bit_width(k)) - 1; }

}  // namespace

ManagerTree ManagerTree::build(std::span<const ManagerEntry> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].id < 0 || entries[i].id == kPadKey || (i > 0 && entries[i].id <= entries[i - 1].id)) {
      throw Error(Errc::invalid_argument, "manager entries must be strictly increasing non-negative ids");
    }
  }
  ManagerTree t;
  t.size_ = entries.size();
  t.height_ = static_cast<unsigned>(std::bit_width(entries.size()));
  const std::size_t slots = (std::size_t{1} << t.height_);
  t.nodes_.assign(slots, ManagerNode{});
  const auto n = static_cast<std::ptrdiff_t>(slots);
  const unsigned h = t.height_;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 1; k < n; ++k) {
    const auto rank = heap_index_to_rank(static_cast<std::uint64_t>(k), h);
    if (rank <= entries.size()) {
      const ManagerEntry& e = entries[rank - 1];
      t.nodes_[k] = ManagerNode{e.id, e.start, 0, false};
    }
  }
  return t;
}

std::optional<NodeHandle> ManagerTree::find(std::int64_t id) const noexcept {
  if (id == kPadKey) return std::nullopt;
  std::size_t k = 1;
  while (k < nodes_.size()) {
    const std::int64_t key = nodes_[k].edge_id;
    if (id == key) return NodeHandle{k};
    k = 2 * k + (id < key ? 0 : 1);
  }
  return std::nullopt;
}

NodeHandle ManagerTree::search(std::int64_t id) const {
  if (auto h = find(id)) return *h;
  throw Error(Errc::not_found, "id " + std::to_string(id) + " not in block manager");
}

std::vector<NodeHandle> ManagerTree::search_batch(std::span<const std::int64_t> ids) const {
  std::vector<std::optional<NodeHandle>> found(ids.size());
  const auto n = static_cast<std::ptrdiff_t>(ids.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) found[i] = find(ids[i]);
  std::vector<NodeHandle> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!found[i]) throw Error(Errc::not_found, "id " + std::to_string(ids[i]) + " not in block manager");
    out.push_back(*found[i]);
  }
  return out;
}

void ManagerTree::propagate(std::vector<std::size_t> touched) {
  if (height_ == 0) return;
  std::vector<std::vector<std::size_t>> by_level(height_);
  for (std::size_t k : touched) by_level[level_of(k)].push_back(k);
  for (unsigned level = height_; level-- > 0;) {
    auto& frontier = by_level[level];
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    const auto n = static_cast<std::ptrdiff_t>(frontier.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::size_t k = frontier[i];
      nodes_[k].avail = (nodes_[k].is_free ? 1u : 0u) + child_avail(2 * k) + child_avail(2 * k + 1);
    }
    if (level > 0) {
      auto& up = by_level[level - 1];
      for (std::size_t k : frontier) up.push_back(k / 2);
    }
  }
}

void ManagerTree::mark_deleted(std::span<const std::int64_t> ids) {
  std::vector<NodeHandle> handles = search_batch(ids);
  std::vector<std::size_t> touched;
  touched.reserve(handles.size());
  for (std::size_t i = 0; i < handles.size(); ++i) {
    if (nodes_[handles[i].index].is_free) {
      throw Error(Errc::already_free, "id " + std::to_string(ids[i]) + " is already free");
    }
    touched.push_back(handles[i].index);
  }
  std::sort(touched.begin(), touched.end());
  if (std::adjacent_find(touched.begin(), touched.end()) != touched.end()) {
    throw Error(Errc::already_free, "id deleted twice in one batch");
  }
  for (std::size_t k : touched) nodes_[k].is_free = true;
  propagate(std::move(touched));
}

NodeHandle ManagerTree::find_kth_available(std::uint64_t k) const {
  if (k == 0 || k > root_avail()) {
    throw Error(Errc::rank_out_of_range, "rank " + std::to_string(k) + " of " + std::to_string(root_avail()));
  }
  std::size_t n = 1;
  std::uint64_t r = k;
  while (true) {
    const std::uint64_t left = child_avail(2 * n);
    if (left >= r) {
      n = 2 * n;
      continue;
    }
    r -= left;
    if (nodes_[n].is_free) {
      if (r == 1) return NodeHandle{n};
      r -= 1;
    }
    n = 2 * n + 1;
  }
}

ManagerEntry ManagerTree::reassign(NodeHandle h) {
  ManagerNode& n = nodes_.at(h.index);
  if (!n.is_free) throw Error(Errc::not_free, "node for id " + std::to_string(n.edge_id) + " is in use");
  n.is_free = false;
  propagate({h.index});
  return ManagerEntry{n.edge_id, n.start};
}

std::vector<ManagerEntry> ManagerTree::claim_available(std::size_t count) {
  if (count == 0) return {};
  if (count > root_avail()) {
    throw Error(Errc::rank_out_of_range, "claim " + std::to_string(count) + " of " + std::to_string(root_avail()));
  }
  std::vector<std::size_t> picked(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) picked[i] = find_kth_available(static_cast<std::uint64_t>(i) + 1).index;

  std::vector<ManagerEntry> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    ManagerNode& node = nodes_[picked[i]];
    node.is_free = false;
    out[i] = ManagerEntry{node.edge_id, node.start};
  }
  propagate(std::move(picked));
  return out;
}

std::vector<ManagerEntry> ManagerTree::live_entries() const {
  if (nodes_.size() <= 1) return {};
  std::vector<const ManagerNode*> by_rank(nodes_.size() - 1, nullptr);
  for (std::size_t k = 1; k < nodes_.size(); ++k) {
    by_rank[heap_index_to_rank(k, height_) - 1] = &nodes_[k];
  }
  std::vector<ManagerEntry> out;
  out.reserve(size_);
  for (const ManagerNode* n : by_rank) {
    if (!n->is_pad() && !n->is_free) out.push_back(ManagerEntry{n->edge_id, n->start});
  }
  return out;
}

ManagerTree ManagerTree::rebuild(std::span<const ManagerEntry> extra) const {
  std::vector<ManagerEntry> live = live_entries();
  std::vector<ManagerEntry> merged;
  merged.reserve(live.size() + extra.size());
  std::merge(live.begin(), live.end(), extra.begin(), extra.end(), std::back_inserter(merged),
             [](const ManagerEntry& a, const ManagerEntry& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < merged.size(); ++i) {
    if (merged[i].id == merged[i - 1].id) {
      throw Error(Errc::duplicate, "rebuild entry " + std::to_string(merged[i].id) + " is already live");
    }
  }
  return build(merged);
}

}  // namespace hgdyn
