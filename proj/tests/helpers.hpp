#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "hgdyn/hypergraph.hpp"
#include "hgdyn/oracle.hpp"
#include "hgdyn/types.hpp"

namespace testutil {

using namespace hgdyn;

inline std::vector<EdgeSpec> random_edges(std::mt19937_64& rng, std::size_t n_edges, std::size_t n_vertices,
                                          std::size_t max_card, EdgeId first_id = 1, Timestamp first_time = 0) {
  std::vector<EdgeSpec> out;
  std::uniform_int_distribution<std::size_t> card(1, max_card);
  std::uniform_int_distribution<VertexId> vert(1, static_cast<VertexId>(n_vertices));
  for (std::size_t i = 0; i < n_edges; ++i) {
    std::set<VertexId> vs;
    const std::size_t c = std::min(card(rng), n_vertices);
    while (vs.size() < c) vs.insert(vert(rng));
    out.push_back(EdgeSpec{first_id + static_cast<EdgeId>(i), {vs.begin(), vs.end()},
                           first_time + static_cast<Timestamp>(i)});
  }
  return out;
}

// A mixed batch valid against the reference model r.
inline ChangeBatch random_batch(std::mt19937_64& rng, const oracle::RefHypergraph& r, std::size_t n_changes,
                                double delete_pct, std::size_t n_vertex_mods, std::size_t n_vertices,
                                std::size_t max_card, EdgeId& next_id, Timestamp& next_time) {
  ChangeBatch b;
  std::vector<EdgeId> live;
  for (const auto& [id, vs] : r.edges) live.push_back(id);
  std::shuffle(live.begin(), live.end(), rng);
  const auto n_del = std::min(live.size(), static_cast<std::size_t>(static_cast<double>(n_changes) * delete_pct));
  b.deletes.assign(live.begin(), live.begin() + static_cast<std::ptrdiff_t>(n_del));
  auto ins = random_edges(rng, n_changes - n_del, n_vertices, max_card, next_id, next_time);
  next_id += static_cast<EdgeId>(ins.size());
  next_time += static_cast<Timestamp>(ins.size());
  b.inserts = std::move(ins);

  std::vector<EdgeId> survivors(live.begin() + static_cast<std::ptrdiff_t>(n_del), live.end());
  std::set<Incidence> used;
  std::uniform_int_distribution<VertexId> vert(1, static_cast<VertexId>(n_vertices));
  for (std::size_t k = 0; k < n_vertex_mods && !survivors.empty(); ++k) {
    const EdgeId h = survivors[std::uniform_int_distribution<std::size_t>(0, survivors.size() - 1)(rng)];
    const auto& vs = r.edges.at(h);
    if ((rng() & 1) && !vs.empty()) {
      auto it = vs.begin();
      std::advance(it, std::uniform_int_distribution<std::size_t>(0, vs.size() - 1)(rng));
      if (used.insert({h, *it}).second) b.vertex_deletes.emplace_back(h, *it);
    } else {
      const VertexId v = vert(rng);
      if (!vs.contains(v) && used.insert({h, v}).second) b.vertex_inserts.emplace_back(h, v);
    }
  }
  return b;
}

// Full cross-scan of the two incidence views. Returns false on any mismatch.
inline bool duality_holds(const DynHypergraph& g) {
  std::map<VertexId, std::vector<EdgeId>> transpose;
  for (EdgeId h : g.edge_ids()) {
    const auto vs = g.incident_vertices(h);
    if (!std::is_sorted(vs.begin(), vs.end()) || std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;
    for (VertexId v : vs) transpose[v].push_back(h);
  }
  for (VertexId v : g.vertex_ids()) {
    auto hs = g.incident_hyperedges(v);
    if (!std::is_sorted(hs.begin(), hs.end())) return false;
    auto it = transpose.find(v);
    const std::vector<EdgeId> want = it == transpose.end() ? std::vector<EdgeId>{} : it->second;
    if (hs != want) return false;
    if (g.degree(v) != hs.size()) return false;
  }
  for (const auto& [v, hs] : transpose) {
    if (!g.has_vertex(v)) return false;
  }
  return true;
}

inline bool matches_model(const DynHypergraph& g, const oracle::RefHypergraph& r) {
  if (g.num_edges() != r.edges.size()) return false;
  for (const auto& [id, vs] : r.edges) {
    if (!g.contains(id)) return false;
    if (g.incident_vertices(id) != std::vector<VertexId>(vs.begin(), vs.end())) return false;
    if (g.neighbor_hyperedges(id) != oracle::ref_neighbors(r, id)) return false;
  }
  return true;
}

inline oracle::RefHypergraph to_ref(const DynHypergraph& g) {
  oracle::RefHypergraph r;
  for (EdgeId h : g.edge_ids()) {
    const auto vs = g.incident_vertices(h);
    r.edges[h] = std::set<VertexId>(vs.begin(), vs.end());
    if (auto t = g.time_of(h)) r.times[h] = *t;
  }
  return r;
}

}  // namespace testutil
