#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hgdyn/block_manager.hpp"
#include "hgdyn/block_store.hpp"
#include "hgdyn/types.hpp"

namespace hgdyn {

struct HypergraphConfig {
  // Arena slots preallocated per slot of initial demand.
  double overprovision = 2.0;
  std::size_t min_slots = 1024;
};

// Dynamic hypergraph with two incidence views kept in lockstep:
//   h2v  internal hyperedge ID -> sorted vertex IDs
//   v2h  vertex ID             -> sorted internal hyperedge IDs
// Each view is a FlatArena addressed through a ManagerTree. Callers speak
// external hyperedge IDs; internal IDs are recycled when a deleted edge's
// block is handed to a new edge.
class DynHypergraph {
 public:
  explicit DynHypergraph(HypergraphConfig config = {});

  static DynHypergraph init(std::span<const EdgeSpec> edges, HypergraphConfig config = {});

  void delete_hyperedges(std::span<const EdgeId> dels);
  void insert_hyperedges(std::span<const EdgeSpec> ins);
  void modify_incident_vertices(std::span<const Incidence> vertex_inserts,
                                std::span<const Incidence> vertex_deletes);
  // Deletes, then inserts, then vertex deletions and insertions. The whole
  // batch is validated before anything is mutated.
  void apply(const ChangeBatch& batch);
  // Throws what apply() would throw, without mutating.
  void validate(const ChangeBatch& batch) const;

  std::vector<VertexId> incident_vertices(EdgeId h) const;
  std::vector<EdgeId> incident_hyperedges(VertexId v) const;
  std::vector<EdgeId> neighbor_hyperedges(EdgeId h) const;

  bool contains(EdgeId h) const { return ext_to_int_.contains(h); }
  bool has_vertex(VertexId v) const { return v2h_.tree.find(v).has_value(); }
  std::size_t num_edges() const noexcept { return ext_to_int_.size(); }
  // Vertices that have ever been incident to some hyperedge.
  std::size_t num_vertices() const noexcept { return v2h_.tree.size(); }
  std::size_t degree(VertexId v) const;
  std::size_t cardinality(EdgeId h) const;
  std::size_t max_cardinality() const;
  std::vector<EdgeId> edge_ids() const;
  std::vector<VertexId> vertex_ids() const;
  std::optional<Timestamp> time_of(EdgeId h) const;
  std::optional<Timestamp> max_time() const;
  bool all_timestamped() const noexcept { return untimed_live_ == 0; }

  // Internal-ID views for counting kernels. All internal IDs are below
  // internal_id_bound().
  std::size_t internal_id_bound() const noexcept { return external_.size(); }
  bool is_live(InternalId i) const noexcept {
    return i >= 0 && static_cast<std::size_t>(i) < external_.size() && external_[i] != kNoEdge;
  }
  std::vector<InternalId> live_internal_ids() const;
  std::optional<InternalId> find_internal(EdgeId h) const;
  InternalId internal_of(EdgeId h) const;
  EdgeId external_of(InternalId i) const { return external_.at(i); }
  Timestamp time_internal(InternalId i) const { return time_.at(i); }
  bool has_time_internal(InternalId i) const { return has_time_.at(i) != 0; }
  std::vector<VertexId> vertices_of(InternalId i) const;
  std::vector<InternalId> edges_of(VertexId v) const;
  std::vector<InternalId> neighbors_of(InternalId i) const;

  const FlatArena& h2v_arena() const noexcept { return h2v_.arena; }
  const ManagerTree& h2v_tree() const noexcept { return h2v_.tree; }
  const FlatArena& v2h_arena() const noexcept { return v2h_.arena; }
  const ManagerTree& v2h_tree() const noexcept { return v2h_.tree; }

 private:
  static constexpr EdgeId kNoEdge = -1;

  struct Store {
    FlatArena arena;
    ManagerTree tree;
  };

  struct Append {
    ArenaIndex start;
    std::vector<Slot> elems;
  };

  void ensure_room(Store& s, std::size_t slots);
  std::size_t initial_slots(std::size_t demand) const;
  // Inserts elements into existing chains, chaining one extra block per chain when needed.
  void append_to_chains(Store& s, std::vector<Append>& work);
  void add_incidences_v2h(std::vector<std::pair<VertexId, InternalId>> pairs);
  void remove_incidences_v2h(std::vector<std::pair<VertexId, InternalId>> pairs);
  void set_edge(InternalId i, const EdgeSpec& e);

  HypergraphConfig config_;
  Store h2v_;
  Store v2h_;
  std::unordered_map<EdgeId, InternalId> ext_to_int_;
  std::vector<EdgeId> external_;
  std::vector<Timestamp> time_;
  std::vector<char> has_time_;
  std::size_t untimed_live_ = 0;
};

}  // namespace hgdyn
