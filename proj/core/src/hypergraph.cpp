#include "hgdyn/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "hgdyn/parallel.hpp"

namespace hgdyn {

namespace {

std::vector<VertexId> normalized(const EdgeSpec& e) {
  std::vector<VertexId> out = e.vertices;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw Error(Errc::invalid_argument, "hyperedge " + std::to_string(e.id) + " has no vertices");
  if (out.front() < 0) throw Error(Errc::invalid_argument, "negative vertex ID in hyperedge " + std::to_string(e.id));
  return out;
}

std::size_t slots_for(std::span<const std::size_t> sizes) {
  std::size_t total = 0;
  for (std::size_t d : sizes) total += FlatArena::capacity_for(d);
  return total;
}

ArenaIndex head_of(const ManagerTree& tree, std::int64_t id) { return tree.node(tree.search(id)).start; }

// [begin, end) ranges of equal keys in a sorted pair list.
template <class Pairs>
std::vector<std::pair<std::size_t, std::size_t>> group_ranges(const Pairs& pairs) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    while (j < pairs.size() && pairs[j].first == pairs[i].first) ++j;
    out.emplace_back(i, j);
    i = j;
  }
  return out;
}

}  // namespace

DynHypergraph::DynHypergraph(HypergraphConfig config) : config_(config) {
  h2v_.arena = FlatArena(config_.min_slots);
  v2h_.arena = FlatArena(config_.min_slots);
}

std::size_t DynHypergraph::initial_slots(std::size_t demand) const {
  const auto scaled = static_cast<std::size_t>(std::ceil(config_.overprovision * static_cast<double>(demand)));
  return std::max({config_.min_slots, scaled, demand});
}

void DynHypergraph::ensure_room(Store& s, std::size_t slots) {
  const std::size_t need = s.arena.watermark() + slots;
  if (need > s.arena.total_capacity()) s.arena.grow(std::max(2 * s.arena.total_capacity(), need));
}

DynHypergraph DynHypergraph::init(std::span<const EdgeSpec> edges, HypergraphConfig config) {
  std::vector<EdgeSpec> sorted(edges.begin(), edges.end());
  for (EdgeSpec& e : sorted) e.vertices = normalized(e);
  std::sort(sorted.begin(), sorted.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].id == sorted[i - 1].id) {
      throw Error(Errc::duplicate, "hyperedge ID " + std::to_string(sorted[i].id) + " given twice");
    }
  }

  DynHypergraph g(config);
  const std::size_t n = sorted.size();
  std::vector<std::size_t> sizes(n);
  for (std::size_t i = 0; i < n; ++i) sizes[i] = sorted[i].vertices.size();
  g.h2v_.arena = FlatArena(g.initial_slots(slots_for(sizes)));
  const std::vector<Block> blocks = g.h2v_.arena.alloc_batch(sizes);
  parallel_for(n, [&](std::size_t i) { g.h2v_.arena.write_list(blocks[i], sorted[i].vertices); });

  std::vector<ManagerEntry> entries(n);
  for (std::size_t i = 0; i < n; ++i) entries[i] = ManagerEntry{static_cast<std::int64_t>(i), blocks[i].start};
  g.h2v_.tree = ManagerTree::build(entries);

  g.external_.resize(n);
  g.time_.resize(n, 0);
  g.has_time_.resize(n, 0);
  g.ext_to_int_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.set_edge(static_cast<InternalId>(i), sorted[i]);

  std::vector<std::pair<VertexId, InternalId>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (VertexId v : sorted[i].vertices) pairs.emplace_back(v, static_cast<InternalId>(i));
  }
  std::sort(pairs.begin(), pairs.end());
  const auto groups = group_ranges(pairs);
  std::vector<std::size_t> vsizes(groups.size());
  for (std::size_t k = 0; k < groups.size(); ++k) vsizes[k] = groups[k].second - groups[k].first;
  g.v2h_.arena = FlatArena(g.initial_slots(slots_for(vsizes)));
  const std::vector<Block> vblocks = g.v2h_.arena.alloc_batch(vsizes);
  parallel_for(groups.size(), [&](std::size_t k) {
    std::vector<Slot> elems;
    for (std::size_t j = groups[k].first; j < groups[k].second; ++j) elems.push_back(pairs[j].second);
    g.v2h_.arena.write_list(vblocks[k], elems);
  });
  std::vector<ManagerEntry> ventries(groups.size());
  for (std::size_t k = 0; k < groups.size(); ++k) ventries[k] = ManagerEntry{pairs[groups[k].first].first, vblocks[k].start};
  g.v2h_.tree = ManagerTree::build(ventries);
  return g;
}

void DynHypergraph::set_edge(InternalId i, const EdgeSpec& e) {
  external_[i] = e.id;
  time_[i] = e.time.value_or(0);
  has_time_[i] = e.time.has_value() ? 1 : 0;
  if (!e.time) ++untimed_live_;
  ext_to_int_[e.id] = i;
}

void DynHypergraph::append_to_chains(Store& s, std::vector<Append>& work) {
  std::vector<ChainInfo> info(work.size());
  parallel_for(work.size(), [&](std::size_t i) { info[i] = s.arena.chain_info(work[i].start); });

  std::vector<std::size_t> sizes;
  std::vector<std::ptrdiff_t> block_of(work.size(), -1);
  for (std::size_t i = 0; i < work.size(); ++i) {
    const std::size_t free_slots = info[i].payload_capacity - info[i].size;
    if (work[i].elems.size() > free_slots) {
      block_of[i] = static_cast<std::ptrdiff_t>(sizes.size());
      sizes.push_back(work[i].elems.size() - free_slots);
    }
  }
  ensure_room(s, slots_for(sizes));
  const std::vector<Block> blocks = s.arena.alloc_batch(sizes);

  parallel_for(work.size(), [&](std::size_t i) {
    if (block_of[i] >= 0) s.arena.chain_block(info[i].tail, blocks[static_cast<std::size_t>(block_of[i])]);
    for (Slot e : work[i].elems) {
      if (s.arena.insert_element(work[i].start, e) != InsertOutcome::in_place) {
        throw Error(Errc::inconsistent_state, "chain out of room after growth");
      }
    }
  });
}

void DynHypergraph::add_incidences_v2h(std::vector<std::pair<VertexId, InternalId>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<Append> existing;
  std::vector<std::pair<VertexId, std::vector<Slot>>> fresh;
  for (auto [b, e] : group_ranges(pairs)) {
    std::vector<Slot> elems;
    for (std::size_t j = b; j < e; ++j) elems.push_back(pairs[j].second);
    if (auto h = v2h_.tree.find(pairs[b].first)) {
      existing.push_back(Append{v2h_.tree.node(*h).start, std::move(elems)});
    } else {
      fresh.emplace_back(pairs[b].first, std::move(elems));
    }
  }
  append_to_chains(v2h_, existing);
  if (fresh.empty()) return;

  std::vector<std::size_t> sizes(fresh.size());
  for (std::size_t k = 0; k < fresh.size(); ++k) sizes[k] = fresh[k].second.size();
  ensure_room(v2h_, slots_for(sizes));
  const std::vector<Block> blocks = v2h_.arena.alloc_batch(sizes);
  parallel_for(fresh.size(), [&](std::size_t k) { v2h_.arena.write_list(blocks[k], fresh[k].second); });
  std::vector<ManagerEntry> extra(fresh.size());
  for (std::size_t k = 0; k < fresh.size(); ++k) extra[k] = ManagerEntry{fresh[k].first, blocks[k].start};
  v2h_.tree = v2h_.tree.rebuild(extra);
}

void DynHypergraph::remove_incidences_v2h(std::vector<std::pair<VertexId, InternalId>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  const auto groups = group_ranges(pairs);
  parallel_for(groups.size(), [&](std::size_t k) {
    const ArenaIndex start = head_of(v2h_.tree, pairs[groups[k].first].first);
    for (std::size_t j = groups[k].first; j < groups[k].second; ++j) {
      if (!v2h_.arena.remove_element(start, pairs[j].second)) {
        throw Error(Errc::inconsistent_state, "v2h list lost an incidence");
      }
    }
  });
}

void DynHypergraph::delete_hyperedges(std::span<const EdgeId> dels) {
  std::vector<InternalId> ids;
  ids.reserve(dels.size());
  for (EdgeId h : dels) ids.push_back(internal_of(h));
  {
    std::vector<InternalId> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(Errc::duplicate, "hyperedge deleted twice in one batch");
    }
  }

  std::vector<std::vector<VertexId>> lists(ids.size());
  parallel_for(ids.size(), [&](std::size_t i) { lists[i] = vertices_of(ids[i]); });
  h2v_.tree.mark_deleted(ids);

  std::vector<std::pair<VertexId, InternalId>> pairs;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (VertexId v : lists[i]) pairs.emplace_back(v, ids[i]);
  }
  remove_incidences_v2h(std::move(pairs));

  for (InternalId i : ids) {
    ext_to_int_.erase(external_[i]);
    if (!has_time_[i]) --untimed_live_;
    external_[i] = kNoEdge;
    has_time_[i] = 0;
  }
}

void DynHypergraph::insert_hyperedges(std::span<const EdgeSpec> ins) {
  std::vector<EdgeSpec> edges(ins.begin(), ins.end());
  std::unordered_set<EdgeId> batch_ids;
  for (EdgeSpec& e : edges) {
    if (contains(e.id) || !batch_ids.insert(e.id).second) {
      throw Error(Errc::duplicate, "hyperedge ID " + std::to_string(e.id) + " is already in use");
    }
    if (e.id < 0) throw Error(Errc::invalid_argument, "hyperedge IDs are non-negative");
    e.vertices = normalized(e);
  }

  const std::size_t n = edges.size();
  const std::size_t reused = std::min<std::size_t>(n, h2v_.tree.root_avail());
  // Case 1: claim free blocks in rank order.
  const std::vector<ManagerEntry> claimed = h2v_.tree.claim_available(reused);
  std::vector<Block> heads(reused);
  parallel_for(reused, [&](std::size_t j) { heads[j] = h2v_.arena.block_at(claimed[j].start); });

  // Case 2 spill blocks and Case 3 fresh blocks come from one allocation.
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> block_of(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t card = edges[j].vertices.size();
    if (j < reused) {
      if (card <= heads[j].payload_capacity()) continue;
      block_of[j] = sizes.size();
      sizes.push_back(card - heads[j].payload_capacity());
    } else {
      block_of[j] = sizes.size();
      sizes.push_back(card);
    }
  }
  ensure_room(h2v_, slots_for(sizes));
  const std::vector<Block> blocks = h2v_.arena.alloc_batch(sizes);

  const auto first_fresh = static_cast<InternalId>(external_.size());
  std::vector<InternalId> internal(n);
  for (std::size_t j = 0; j < n; ++j) {
    internal[j] = j < reused ? claimed[j].id : first_fresh + static_cast<InternalId>(j - reused);
  }

  parallel_for(n, [&](std::size_t j) {
    const std::span<const Slot> verts = edges[j].vertices;
    if (j < reused) {
      const Block head = heads[j];
      h2v_.arena.reset_block(head);
      const std::size_t k = std::min(verts.size(), head.payload_capacity());
      h2v_.arena.write_list(head, verts.first(k));
      if (k < verts.size()) {
        const Block& spill = blocks[block_of[j]];
        h2v_.arena.write_list(spill, verts.subspan(k));
        h2v_.arena.chain_block(head, spill);
      }
    } else {
      h2v_.arena.write_list(blocks[block_of[j]], verts);
    }
  });

  if (n > reused) {
    // Case 3: rebuild the manager over live + fresh entries.
    std::vector<ManagerEntry> extra;
    extra.reserve(n - reused);
    for (std::size_t j = reused; j < n; ++j) extra.push_back(ManagerEntry{internal[j], blocks[block_of[j]].start});
    h2v_.tree = h2v_.tree.rebuild(extra);
    external_.resize(external_.size() + (n - reused), kNoEdge);
    time_.resize(external_.size(), 0);
    has_time_.resize(external_.size(), 0);
  }
  for (std::size_t j = 0; j < n; ++j) set_edge(internal[j], edges[j]);

  std::vector<std::pair<VertexId, InternalId>> pairs;
  for (std::size_t j = 0; j < n; ++j) {
    for (VertexId v : edges[j].vertices) pairs.emplace_back(v, internal[j]);
  }
  add_incidences_v2h(std::move(pairs));
}

void DynHypergraph::modify_incident_vertices(std::span<const Incidence> vertex_inserts,
                                             std::span<const Incidence> vertex_deletes) {
  std::set<std::pair<InternalId, VertexId>> seen;
  std::map<InternalId, std::vector<VertexId>> current;
  auto check = [&](const Incidence& p, bool inserting) {
    const InternalId i = internal_of(p.first);
    if (p.second < 0) throw Error(Errc::invalid_argument, "negative vertex ID");
    if (!seen.emplace(i, p.second).second) {
      throw Error(Errc::duplicate, "incidence (" + std::to_string(p.first) + ", " + std::to_string(p.second) +
                                       ") appears twice in one batch");
    }
    auto it = current.find(i);
    if (it == current.end()) it = current.emplace(i, vertices_of(i)).first;
    const bool present = std::binary_search(it->second.begin(), it->second.end(), p.second);
    if (inserting && present) {
      throw Error(Errc::duplicate, "vertex " + std::to_string(p.second) + " already in hyperedge " +
                                       std::to_string(p.first));
    }
    if (!inserting && !present) {
      throw Error(Errc::not_found, "vertex " + std::to_string(p.second) + " not in hyperedge " +
                                       std::to_string(p.first));
    }
    return i;
  };

  std::vector<std::pair<InternalId, VertexId>> dels;
  std::vector<std::pair<InternalId, VertexId>> adds;
  for (const Incidence& p : vertex_deletes) dels.emplace_back(check(p, false), p.second);
  for (const Incidence& p : vertex_inserts) adds.emplace_back(check(p, true), p.second);
  std::sort(dels.begin(), dels.end());
  std::sort(adds.begin(), adds.end());

  // h2v: one worker per hyperedge.
  const auto del_groups = group_ranges(dels);
  parallel_for(del_groups.size(), [&](std::size_t k) {
    const ArenaIndex start = head_of(h2v_.tree, dels[del_groups[k].first].first);
    for (std::size_t j = del_groups[k].first; j < del_groups[k].second; ++j) {
      h2v_.arena.remove_element(start, dels[j].second);
    }
  });
  std::vector<Append> work;
  for (auto [b, e] : group_ranges(adds)) {
    Append a{head_of(h2v_.tree, adds[b].first), {}};
    for (std::size_t j = b; j < e; ++j) a.elems.push_back(adds[j].second);
    work.push_back(std::move(a));
  }
  append_to_chains(h2v_, work);

  // v2h: regrouped by vertex.
  std::vector<std::pair<VertexId, InternalId>> vdels;
  std::vector<std::pair<VertexId, InternalId>> vadds;
  for (auto [i, v] : dels) vdels.emplace_back(v, i);
  for (auto [i, v] : adds) vadds.emplace_back(v, i);
  remove_incidences_v2h(std::move(vdels));
  add_incidences_v2h(std::move(vadds));
}

void DynHypergraph::validate(const ChangeBatch& batch) const {
  std::unordered_set<EdgeId> deleted;
  for (EdgeId h : batch.deletes) {
    if (!contains(h)) throw Error(Errc::not_found, "hyperedge " + std::to_string(h) + " is not live");
    if (!deleted.insert(h).second) throw Error(Errc::duplicate, "hyperedge deleted twice in one batch");
  }
  auto live_after_deletes = [&](EdgeId h) { return contains(h) && !deleted.contains(h); };

  std::unordered_map<EdgeId, std::vector<VertexId>> inserted;
  for (const EdgeSpec& e : batch.inserts) {
    if (e.id < 0) throw Error(Errc::invalid_argument, "hyperedge IDs are non-negative");
    if (live_after_deletes(e.id) || inserted.contains(e.id)) {
      throw Error(Errc::duplicate, "hyperedge ID " + std::to_string(e.id) + " is already in use");
    }
    inserted.emplace(e.id, normalized(e));
  }

  std::set<Incidence> seen;
  std::unordered_map<EdgeId, std::vector<VertexId>> lists;
  auto members = [&](EdgeId h) -> const std::vector<VertexId>& {
    if (auto it = inserted.find(h); it != inserted.end()) return it->second;
    if (!live_after_deletes(h)) throw Error(Errc::not_found, "hyperedge " + std::to_string(h) + " is not live");
    auto it = lists.find(h);
    if (it == lists.end()) it = lists.emplace(h, incident_vertices(h)).first;
    return it->second;
  };
  for (const Incidence& p : batch.vertex_deletes) {
    const auto& vs = members(p.first);
    if (!seen.insert(p).second) throw Error(Errc::duplicate, "incidence appears twice in one batch");
    if (!std::binary_search(vs.begin(), vs.end(), p.second)) {
      throw Error(Errc::not_found, "vertex " + std::to_string(p.second) + " not in hyperedge " +
                                       std::to_string(p.first));
    }
  }
  for (const Incidence& p : batch.vertex_inserts) {
    const auto& vs = members(p.first);
    if (p.second < 0) throw Error(Errc::invalid_argument, "negative vertex ID");
    if (!seen.insert(p).second) throw Error(Errc::duplicate, "incidence appears twice in one batch");
    if (std::binary_search(vs.begin(), vs.end(), p.second)) {
      throw Error(Errc::duplicate, "vertex " + std::to_string(p.second) + " already in hyperedge " +
                                       std::to_string(p.first));
    }
  }
}

void DynHypergraph::apply(const ChangeBatch& batch) {
  validate(batch);
  if (!batch.deletes.empty()) delete_hyperedges(batch.deletes);
  if (!batch.inserts.empty()) insert_hyperedges(batch.inserts);
  if (!batch.vertex_inserts.empty() || !batch.vertex_deletes.empty()) {
    modify_incident_vertices(batch.vertex_inserts, batch.vertex_deletes);
  }
}

std::optional<InternalId> DynHypergraph::find_internal(EdgeId h) const {
  auto it = ext_to_int_.find(h);
  if (it == ext_to_int_.end()) return std::nullopt;
  return it->second;
}

InternalId DynHypergraph::internal_of(EdgeId h) const {
  if (auto i = find_internal(h)) return *i;
  throw Error(Errc::not_found, "hyperedge " + std::to_string(h) + " is not live");
}

std::vector<InternalId> DynHypergraph::live_internal_ids() const {
  std::vector<InternalId> out;
  out.reserve(ext_to_int_.size());
  for (std::size_t i = 0; i < external_.size(); ++i) {
    if (external_[i] != kNoEdge) out.push_back(static_cast<InternalId>(i));
  }
  return out;
}

std::vector<VertexId> DynHypergraph::vertices_of(InternalId i) const {
  if (!is_live(i)) throw Error(Errc::not_found, "internal hyperedge " + std::to_string(i) + " is not live");
  return h2v_.arena.read_list(head_of(h2v_.tree, i));
}

std::vector<InternalId> DynHypergraph::edges_of(VertexId v) const {
  auto h = v2h_.tree.find(v);
  if (!h) return {};
  return v2h_.arena.read_list(v2h_.tree.node(*h).start);
}

std::vector<InternalId> DynHypergraph::neighbors_of(InternalId i) const {
  std::vector<InternalId> out;
  for (VertexId v : vertices_of(i)) {
    const auto hs = edges_of(v);
    out.insert(out.end(), hs.begin(), hs.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), i), out.end());
  return out;
}

std::vector<VertexId> DynHypergraph::incident_vertices(EdgeId h) const { return vertices_of(internal_of(h)); }

std::vector<EdgeId> DynHypergraph::incident_hyperedges(VertexId v) const {
  std::vector<EdgeId> out;
  for (InternalId i : edges_of(v)) out.push_back(external_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> DynHypergraph::neighbor_hyperedges(EdgeId h) const {
  std::vector<EdgeId> out;
  for (InternalId i : neighbors_of(internal_of(h))) out.push_back(external_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t DynHypergraph::degree(VertexId v) const { return edges_of(v).size(); }

std::size_t DynHypergraph::cardinality(EdgeId h) const { return incident_vertices(h).size(); }

std::size_t DynHypergraph::max_cardinality() const {
  std::size_t best = 0;
  for (InternalId i : live_internal_ids()) best = std::max(best, vertices_of(i).size());
  return best;
}

std::vector<EdgeId> DynHypergraph::edge_ids() const {
  std::vector<EdgeId> out;
  out.reserve(ext_to_int_.size());
  for (const auto& [ext, _] : ext_to_int_) out.push_back(ext);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> DynHypergraph::vertex_ids() const {
  std::vector<VertexId> out;
  for (const ManagerEntry& e : v2h_.tree.live_entries()) out.push_back(e.id);
  return out;
}

std::optional<Timestamp> DynHypergraph::time_of(EdgeId h) const {
  const InternalId i = internal_of(h);
  if (!has_time_[i]) return std::nullopt;
  return time_[i];
}

std::optional<Timestamp> DynHypergraph::max_time() const {
  std::optional<Timestamp> best;
  for (std::size_t i = 0; i < external_.size(); ++i) {
    if (external_[i] != kNoEdge && has_time_[i] && (!best || time_[i] > *best)) best = time_[i];
  }
  return best;
}

}  // namespace hgdyn
