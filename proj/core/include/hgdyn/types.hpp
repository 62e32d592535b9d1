#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hgdyn {

using VertexId = std::int64_t;
// Hyperedge ID as seen by callers. Stable for the life of the edge.
using EdgeId = std::int64_t;
// Hyperedge ID used inside the h2v store; reused when a freed block is reassigned.
using InternalId = std::int64_t;
using Timestamp = std::int64_t;

struct EdgeSpec {
  EdgeId id = 0;
  std::vector<VertexId> vertices;
  std::optional<Timestamp> time;
};

using Incidence = std::pair<EdgeId, VertexId>;

// One unit of change. Applied as: deletes, inserts, vertex deletes, vertex inserts.
struct ChangeBatch {
  std::vector<EdgeId> deletes;
  std::vector<EdgeSpec> inserts;
  std::vector<Incidence> vertex_inserts;
  std::vector<Incidence> vertex_deletes;

  bool empty() const noexcept {
    return deletes.empty() && inserts.empty() && vertex_inserts.empty() && vertex_deletes.empty();
  }
};

}  // namespace hgdyn
