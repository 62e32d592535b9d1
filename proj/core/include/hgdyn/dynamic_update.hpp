#pragma once

#include <span>
#include <vector>

#include "hgdyn/hypergraph.hpp"
#include "hgdyn/triads.hpp"
#include "hgdyn/types.hpp"

namespace hgdyn {

// Seeds plus every hyperedge within two hops of them. Sorted external IDs.
struct AffectedRegion {
  std::vector<EdgeId> seeds;
  std::vector<EdgeId> members;
};

AffectedRegion affected_region(const DynHypergraph& g, std::span<const EdgeId> seeds);

// Live hyperedges within two hops of vertex sets that are not (yet) edges of
// g: first every edge touching one of the vertices, then their neighbors.
std::vector<EdgeId> region_around_vertex_sets(const DynHypergraph& g,
                                              std::span<const std::vector<VertexId>> sets);

struct CountState {
  TriadCounts counts;
  CountOptions options;
};

struct UpdateStats {
  std::size_t region_pre = 0;   // edges counted before the mutation
  std::size_t region_post = 0;  // edges counted after it
  double region_ms = 0;
  double count_ms = 0;
  double delete_ms = 0;
  double insert_ms = 0;
  double modify_ms = 0;
  double total_ms = 0;
};

CountState recount(const CountState& state, const DynHypergraph& g);

// Applies the batch to g and updates state.counts in place:
//   counts <- counts - (scoped count before) + (scoped count after)
// where both scoped counts cover every triad the batch can create or destroy.
UpdateStats apply_and_update(CountState& state, DynHypergraph& g, const ChangeBatch& batch);

}  // namespace hgdyn
