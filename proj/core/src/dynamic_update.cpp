#include "hgdyn/dynamic_update.hpp"

#include <algorithm>
#include <chrono>
#include <iterator>
#include <map>
#include <unordered_set>

#include "hgdyn/parallel.hpp"

namespace hgdyn {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Marks the unseen neighbors of frontier and returns them.
std::vector<InternalId> expand(const DynHypergraph& g, std::span<const InternalId> frontier,
                               std::vector<char>& seen) {
  std::vector<std::vector<InternalId>> found(frontier.size());
  parallel_for(frontier.size(), [&](std::size_t k) { found[k] = g.neighbors_of(frontier[k]); });
  std::vector<InternalId> next;
  for (const auto& list : found) {
    for (InternalId i : list) {
      if (!seen[i]) {
        seen[i] = 1;
        next.push_back(i);
      }
    }
  }
  return next;
}

std::vector<EdgeId> externals(const DynHypergraph& g, const std::vector<char>& seen) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(g.external_of(static_cast<InternalId>(i)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> sorted_union(std::vector<EdgeId> a, const std::vector<EdgeId>& b) {
  std::vector<EdgeId> out;
  std::sort(a.begin(), a.end());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void accumulate(std::uint64_t& total, std::uint64_t removed, std::uint64_t added) {
  if (total + added < removed) {
    throw Error(Errc::inconsistent_state, "triad count would become negative");
  }
  total = total + added - removed;
}

template <std::size_t N>
void accumulate(std::array<std::uint64_t, N>& total, const std::array<std::uint64_t, N>& removed,
                const std::array<std::uint64_t, N>& added) {
  for (std::size_t k = 0; k < N; ++k) accumulate(total[k], removed[k], added[k]);
}

}  // namespace

AffectedRegion affected_region(const DynHypergraph& g, std::span<const EdgeId> seeds) {
  std::vector<char> seen(g.internal_id_bound(), 0);
  std::vector<InternalId> frontier;
  AffectedRegion region;
  for (EdgeId h : seeds) {
    const InternalId i = g.internal_of(h);
    if (!seen[i]) {
      seen[i] = 1;
      frontier.push_back(i);
      region.seeds.push_back(h);
    }
  }
  std::sort(region.seeds.begin(), region.seeds.end());
  const std::vector<InternalId> hop1 = expand(g, frontier, seen);
  expand(g, hop1, seen);
  region.members = externals(g, seen);
  return region;
}

std::vector<EdgeId> region_around_vertex_sets(const DynHypergraph& g,
                                              std::span<const std::vector<VertexId>> sets) {
  std::vector<char> seen(g.internal_id_bound(), 0);
  std::vector<InternalId> hop1;
  for (const auto& vs : sets) {
    for (VertexId v : vs) {
      for (InternalId i : g.edges_of(v)) {
        if (!seen[i]) {
          seen[i] = 1;
          hop1.push_back(i);
        }
      }
    }
  }
  expand(g, hop1, seen);
  return externals(g, seen);
}

CountState recount(const CountState& state, const DynHypergraph& g) {
  return CountState{count_all(g, state.options), state.options};
}

UpdateStats apply_and_update(CountState& state, DynHypergraph& g, const ChangeBatch& batch) {
  UpdateStats stats;
  const auto t_start = Clock::now();
  g.validate(batch);

  std::unordered_set<EdgeId> inserted_ids;
  for (const EdgeSpec& e : batch.inserts) inserted_ids.insert(e.id);
  // Pre-existing edges whose incident vertices change.
  std::vector<EdgeId> modified;
  std::map<EdgeId, std::vector<VertexId>> added_vertices;
  for (const auto* list : {&batch.vertex_inserts, &batch.vertex_deletes}) {
    for (const Incidence& p : *list) {
      if (!inserted_ids.contains(p.first)) modified.push_back(p.first);
    }
  }
  for (const Incidence& p : batch.vertex_inserts) added_vertices[p.first].push_back(p.second);

  // Step 1: deletion-affected region, plus the pre-update image of the
  // insertion-affected region so both counts see the same unchanged triads.
  auto t0 = Clock::now();
  std::vector<EdgeId> pre_seeds = batch.deletes;
  pre_seeds.insert(pre_seeds.end(), modified.begin(), modified.end());
  const AffectedRegion aff_del = affected_region(g, pre_seeds);
  std::vector<std::vector<VertexId>> incoming;
  for (const EdgeSpec& e : batch.inserts) incoming.push_back(e.vertices);
  for (auto& [edge, vs] : added_vertices) incoming.push_back(vs);
  const std::vector<EdgeId> region_pre =
      sorted_union(region_around_vertex_sets(g, incoming), aff_del.members);
  stats.region_ms += ms_since(t0);

  // Step 2
  t0 = Clock::now();
  const EdgeScope scope_pre = EdgeScope::of(g, region_pre);
  const TriadCounts count_del = count_all(g, state.options, &scope_pre);
  stats.count_ms += ms_since(t0);
  stats.region_pre = region_pre.size();

  // Step 3
  t0 = Clock::now();
  if (!batch.deletes.empty()) g.delete_hyperedges(batch.deletes);
  stats.delete_ms = ms_since(t0);
  t0 = Clock::now();
  if (!batch.inserts.empty()) g.insert_hyperedges(batch.inserts);
  stats.insert_ms = ms_since(t0);
  t0 = Clock::now();
  if (!batch.vertex_inserts.empty() || !batch.vertex_deletes.empty()) {
    g.modify_incident_vertices(batch.vertex_inserts, batch.vertex_deletes);
  }
  stats.modify_ms = ms_since(t0);

  // Step 4
  t0 = Clock::now();
  std::vector<EdgeId> post_seeds(inserted_ids.begin(), inserted_ids.end());
  post_seeds.insert(post_seeds.end(), modified.begin(), modified.end());
  const AffectedRegion aff_ins = affected_region(g, post_seeds);
  std::vector<EdgeId> still_live;
  std::copy_if(region_pre.begin(), region_pre.end(), std::back_inserter(still_live),
               [&](EdgeId h) { return g.contains(h); });
  const std::vector<EdgeId> region_post = sorted_union(std::move(still_live), aff_ins.members);
  stats.region_ms += ms_since(t0);

  // Step 5
  t0 = Clock::now();
  const EdgeScope scope_post = EdgeScope::of(g, region_post);
  const TriadCounts count_ins = count_all(g, state.options, &scope_post);
  stats.count_ms += ms_since(t0);
  stats.region_post = region_post.size();

  // Step 6
  TriadCounts next = state.counts;
  accumulate(next.hyperedge_by_class, count_del.hyperedge_by_class, count_ins.hyperedge_by_class);
  accumulate(next.vertex_by_type, count_del.vertex_by_type, count_ins.vertex_by_type);
  accumulate(next.temporal_total, count_del.temporal_total, count_ins.temporal_total);
  accumulate(next.temporal_by_class, count_del.temporal_by_class, count_ins.temporal_by_class);
  state.counts = next;
  stats.total_ms = ms_since(t_start);
  return stats;
}

}  // namespace hgdyn
