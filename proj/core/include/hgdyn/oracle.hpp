#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hgdyn/triads.hpp"
#include "hgdyn/types.hpp"

// Brute-force reference implementations. Deliberately shares no storage or
// classification code with the engine.
namespace hgdyn::oracle {

inline constexpr std::size_t kDefaultCap = 300;

struct RefHypergraph {
  std::map<EdgeId, std::set<VertexId>> edges;
  std::map<EdgeId, Timestamp> times;
};

RefHypergraph from_edges(std::span<const EdgeSpec> edges);

// Canonical 7-character patterns of the 26 classes, in class-index order.
const std::vector<std::string>& class_patterns();

TriadCounts ref_count_all(const RefHypergraph& r, const TemporalParams& params, std::size_t cap = kDefaultCap);
RefHypergraph ref_apply(RefHypergraph r, const ChangeBatch& batch);

std::vector<EdgeId> ref_neighbors(const RefHypergraph& r, EdgeId h);
std::vector<EdgeId> ref_incident_hyperedges(const RefHypergraph& r, VertexId v);

}  // namespace hgdyn::oracle
