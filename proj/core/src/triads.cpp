#include "hgdyn/triads.hpp"

#include <algorithm>
#include <numeric>

#include "hgdyn/parallel.hpp"

namespace hgdyn {

namespace {

// Role membership mask of each region: a = 1, b = 2, c = 4.
constexpr std::array<int, 7> kRegionMask = {1, 2, 4, 3, 5, 6, 7};
constexpr std::array<int, 8> kRegionOfMask = {-1, VennPattern::kA, VennPattern::kB, VennPattern::kAB,
                                              VennPattern::kC, VennPattern::kAC, VennPattern::kBC,
                                              VennPattern::kABC};
constexpr std::array<std::array<int, 3>, 6> kPermutations = {
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

std::size_t intersect_size(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

void intersect_into(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                    std::vector<std::int64_t>& out) {
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

bool role_nonempty(VennPattern p, int role) {
  for (int r = 0; r < 7; ++r) {
    if ((kRegionMask[r] >> role & 1) && p.has(r)) return true;
  }
  return false;
}

bool sets_equal(VennPattern p, int x, int y) {
  for (int r = 0; r < 7; ++r) {
    const bool in_x = kRegionMask[r] >> x & 1;
    const bool in_y = kRegionMask[r] >> y & 1;
    if (in_x != in_y && p.has(r)) return false;
  }
  return true;
}

bool sets_meet(VennPattern p, int x, int y) {
  for (int r = 0; r < 7; ++r) {
    if ((kRegionMask[r] >> x & 1) && (kRegionMask[r] >> y & 1) && p.has(r)) return true;
  }
  return false;
}

// Scope members with their vertex lists and in-scope neighbor lists.
struct ScopedView {
  std::vector<InternalId> ids;
  std::vector<std::int32_t> position;  // internal id -> index in ids, or -1
  std::vector<std::vector<VertexId>> verts;
  std::vector<std::vector<std::int32_t>> neighbors;  // sorted positions

  ScopedView(const DynHypergraph& g, const EdgeScope& scope, bool with_neighbors) {
    ids.assign(scope.members().begin(), scope.members().end());
    position.assign(g.internal_id_bound(), -1);
    for (std::size_t k = 0; k < ids.size(); ++k) position[ids[k]] = static_cast<std::int32_t>(k);
    verts.resize(ids.size());
    parallel_for(ids.size(), [&](std::size_t k) { verts[k] = g.vertices_of(ids[k]); });
    if (!with_neighbors) return;
    neighbors.resize(ids.size());
    parallel_for(ids.size(), [&](std::size_t k) {
      auto& out = neighbors[k];
      for (VertexId v : verts[k]) {
        for (InternalId h : g.edges_of(v)) {
          const std::int32_t p = position[h];
          if (p >= 0 && p != static_cast<std::int32_t>(k)) out.push_back(p);
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    });
  }
};

struct EdgeTriadTally {
  ClassCounts by_class{};
  ClassCounts temporal_by_class{};
  std::uint64_t temporal_total = 0;
};

// Each connected triple {c, p, q} is visited from a center c adjacent to both
// others. An open triple has exactly one center; a closed triple is taken
// only at its smallest member.
EdgeTriadTally count_edge_triads(const DynHypergraph& g, const EdgeScope& scope, bool structural,
                                 const TemporalParams* temporal) {
  if (temporal != nullptr) {
    for (InternalId i : scope.members()) {
      if (!g.has_time_internal(i)) {
        throw Error(Errc::missing_timestamps, "hyperedge " + std::to_string(g.external_of(i)) + " has no timestamp");
      }
    }
  }
  const ScopedView view(g, scope, true);
  const TriadClassTable& table = TriadClassTable::instance();
  std::vector<EdgeTriadTally> partial(static_cast<std::size_t>(max_threads()));

  parallel_for(view.ids.size(), [&](std::size_t c) {
    EdgeTriadTally& out = partial[static_cast<std::size_t>(thread_id())];
    const auto& nbr = view.neighbors[c];
    for (std::size_t a = 0; a < nbr.size(); ++a) {
      const auto p = static_cast<std::size_t>(nbr[a]);
      const auto& p_nbr = view.neighbors[p];
      for (std::size_t b = a + 1; b < nbr.size(); ++b) {
        const auto q = static_cast<std::size_t>(nbr[b]);
        const bool closed = std::binary_search(p_nbr.begin(), p_nbr.end(), static_cast<std::int32_t>(q));
        if (closed && c > p) continue;
        const VennPattern pat = venn_pattern(view.verts[c], view.verts[p], view.verts[q]);
        const auto cls = table.class_of(pat);
        if (!cls) continue;  // identical sets
        if (structural) ++out.by_class[*cls];
        if (temporal != nullptr) {
          const Timestamp tc = g.time_internal(view.ids[c]);
          const Timestamp tp = g.time_internal(view.ids[p]);
          const Timestamp tq = g.time_internal(view.ids[q]);
          if (temporal->admits(std::min({tc, tp, tq}), std::max({tc, tp, tq}))) {
            ++out.temporal_by_class[*cls];
            ++out.temporal_total;
          }
        }
      }
    }
  });

  EdgeTriadTally total;
  for (const auto& t : partial) {
    for (std::size_t k = 0; k < kNumTriadClasses; ++k) {
      total.by_class[k] += t.by_class[k];
      total.temporal_by_class[k] += t.temporal_by_class[k];
    }
    total.temporal_total += t.temporal_total;
  }
  return total;
}

const EdgeScope& resolve(const DynHypergraph& g, const EdgeScope* scope, EdgeScope& storage) {
  if (scope != nullptr) return *scope;
  storage = EdgeScope::all(g);
  return storage;
}

}  // namespace

std::string VennPattern::to_string() const {
  std::string s(7, '0');
  for (int r = 0; r < 7; ++r) {
    if (has(r)) s[static_cast<std::size_t>(r)] = '1';
  }
  return s;
}

VennPattern VennPattern::permuted(std::array<int, 3> roles) const noexcept {
  VennPattern out;
  for (int r = 0; r < 7; ++r) {
    int mask = 0;
    for (int x = 0; x < 3; ++x) {
      if (kRegionMask[r] >> x & 1) mask |= 1 << roles[x];
    }
    if (has(kRegionOfMask[mask])) out.set(r);
  }
  return out;
}

VennPattern VennPattern::canonical() const noexcept {
  VennPattern best = *this;
  for (const auto& perm : kPermutations) best = std::min(best, permuted(perm));
  return best;
}

bool VennPattern::has_identical_pair() const noexcept {
  return sets_equal(*this, 0, 1) || sets_equal(*this, 0, 2) || sets_equal(*this, 1, 2);
}

int VennPattern::nonempty_intersections() const noexcept {
  return int{sets_meet(*this, 0, 1)} + int{sets_meet(*this, 0, 2)} + int{sets_meet(*this, 1, 2)};
}

VennPattern venn_pattern(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                         std::span<const std::int64_t> c) {
  std::vector<std::int64_t> ab;
  intersect_into(a, b, ab);
  const std::size_t n_ab = ab.size();
  const std::size_t n_ac = intersect_size(a, c);
  const std::size_t n_bc = intersect_size(b, c);
  const std::size_t n_abc = intersect_size(ab, c);

  VennPattern p;
  if (a.size() + n_abc > n_ab + n_ac) p.set(VennPattern::kA);
  if (b.size() + n_abc > n_ab + n_bc) p.set(VennPattern::kB);
  if (c.size() + n_abc > n_ac + n_bc) p.set(VennPattern::kC);
  if (n_ab > n_abc) p.set(VennPattern::kAB);
  if (n_ac > n_abc) p.set(VennPattern::kAC);
  if (n_bc > n_abc) p.set(VennPattern::kBC);
  if (n_abc > 0) p.set(VennPattern::kABC);
  return p;
}

TriadClassTable TriadClassTable::build() {
  std::vector<VennPattern> canon;
  for (unsigned bits = 0; bits < 128; ++bits) {
    const VennPattern p{static_cast<std::uint8_t>(bits)};
    if (!role_nonempty(p, 0) || !role_nonempty(p, 1) || !role_nonempty(p, 2)) continue;
    if (p.has_identical_pair() || p.nonempty_intersections() < 2) continue;
    canon.push_back(p.canonical());
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  if (canon.size() != kNumTriadClasses) {
    throw Error(Errc::class_count_mismatch, "derived " + std::to_string(canon.size()) + " triad classes");
  }

  TriadClassTable t;
  t.canonical_ = std::move(canon);
  t.class_of_.fill(-1);
  for (unsigned bits = 0; bits < 128; ++bits) {
    const VennPattern p{static_cast<std::uint8_t>(bits)};
    auto it = std::lower_bound(t.canonical_.begin(), t.canonical_.end(), p.canonical());
    if (it != t.canonical_.end() && *it == p.canonical() && !p.has_identical_pair() &&
        p.nonempty_intersections() >= 2 && role_nonempty(p, 0) && role_nonempty(p, 1) && role_nonempty(p, 2)) {
      t.class_of_[bits] = static_cast<std::int8_t>(it - t.canonical_.begin());
    }
  }
  return t;
}

const TriadClassTable& TriadClassTable::instance() {
  static const TriadClassTable table = build();
  return table;
}

std::uint64_t TriadCounts::hyperedge_total() const noexcept {
  return std::accumulate(hyperedge_by_class.begin(), hyperedge_by_class.end(), std::uint64_t{0});
}

std::uint64_t TriadCounts::vertex_total() const noexcept {
  return std::accumulate(vertex_by_type.begin(), vertex_by_type.end(), std::uint64_t{0});
}

EdgeScope EdgeScope::all(const DynHypergraph& g) {
  EdgeScope s;
  s.members_ = g.live_internal_ids();
  s.member_.assign(g.internal_id_bound(), 0);
  for (InternalId i : s.members_) s.member_[i] = 1;
  return s;
}

EdgeScope EdgeScope::of(const DynHypergraph& g, std::span<const EdgeId> edges) {
  EdgeScope s;
  s.member_.assign(g.internal_id_bound(), 0);
  for (EdgeId h : edges) {
    const InternalId i = g.internal_of(h);
    if (!s.member_[i]) {
      s.member_[i] = 1;
      s.members_.push_back(i);
    }
  }
  std::sort(s.members_.begin(), s.members_.end());
  return s;
}

std::vector<std::int64_t> intersect_sorted(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  constexpr std::size_t kSerialCutoff = std::size_t{1} << 15;
  std::vector<std::int64_t> out;
  if (a.size() < kSerialCutoff || b.size() < kSerialCutoff || max_threads() == 1) {
    intersect_into(a, b, out);
    return out;
  }
  // Partition a into chunks; each chunk meets the matching range of b.
  const std::size_t parts = static_cast<std::size_t>(max_threads()) * 4;
  const std::size_t chunk = (a.size() + parts - 1) / parts;
  std::vector<std::vector<std::int64_t>> pieces(parts);
  parallel_for(parts, [&](std::size_t k) {
    const std::size_t lo = std::min(a.size(), k * chunk);
    const std::size_t hi = std::min(a.size(), lo + chunk);
    if (lo == hi) return;
    const auto a_part = a.subspan(lo, hi - lo);
    const auto b_lo = std::lower_bound(b.begin(), b.end(), a_part.front());
    const auto b_hi = std::upper_bound(b_lo, b.end(), a_part.back());
    intersect_into(a_part, std::span<const std::int64_t>(b_lo, b_hi), pieces[k]);
  });
  for (const auto& piece : pieces) out.insert(out.end(), piece.begin(), piece.end());
  return out;
}

std::optional<int> classify_triple(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                   std::span<const std::int64_t> c) {
  const VennPattern p = venn_pattern(a, b, c);
  if (p.has_identical_pair()) throw Error(Errc::identical_sets, "two of the three hyperedges are equal");
  return TriadClassTable::instance().class_of(p);
}

ClassCounts count_hyperedge_triads(const DynHypergraph& g, const EdgeScope* scope) {
  EdgeScope storage;
  return count_edge_triads(g, resolve(g, scope, storage), true, nullptr).by_class;
}

TemporalCounts count_temporal_triads(const DynHypergraph& g, const TemporalParams& params, const EdgeScope* scope) {
  if (!params.enabled()) return {};
  EdgeScope storage;
  const EdgeTriadTally t = count_edge_triads(g, resolve(g, scope, storage), false, &params);
  return TemporalCounts{t.temporal_total, t.temporal_by_class};
}

VertexTypeCounts count_vertex_triads(const DynHypergraph& g, const EdgeScope* scope) {
  EdgeScope storage;
  const ScopedView view(g, resolve(g, scope, storage), false);

  // Local vertex universe: vertices of scoped hyperedges.
  std::vector<VertexId> universe;
  for (const auto& vs : view.verts) universe.insert(universe.end(), vs.begin(), vs.end());
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  auto local = [&](VertexId v) {
    return static_cast<std::int64_t>(std::lower_bound(universe.begin(), universe.end(), v) - universe.begin());
  };

  // incident[u]: scoped hyperedges (positions) containing u.
  std::vector<std::vector<std::int64_t>> incident(universe.size());
  for (std::size_t e = 0; e < view.verts.size(); ++e) {
    for (VertexId v : view.verts[e]) incident[static_cast<std::size_t>(local(v))].push_back(static_cast<std::int64_t>(e));
  }
  // adjacency[u]: vertices co-occurring with u in some scoped hyperedge.
  std::vector<std::vector<std::int64_t>> adjacency(universe.size());
  parallel_for(universe.size(), [&](std::size_t u) {
    auto& out = adjacency[u];
    for (std::int64_t e : incident[u]) {
      for (VertexId v : view.verts[static_cast<std::size_t>(e)]) out.push_back(local(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove(out.begin(), out.end(), static_cast<std::int64_t>(u)), out.end());
  });

  struct Tally {
    std::uint64_t wedges = 0;
    std::uint64_t triangles = 0;
    std::uint64_t covered = 0;
  };
  std::vector<Tally> partial(static_cast<std::size_t>(max_threads()));
  parallel_for(universe.size(), [&](std::size_t u) {
    Tally& t = partial[static_cast<std::size_t>(thread_id())];
    const auto& nu = adjacency[u];
    const std::uint64_t d = nu.size();
    if (d >= 2) t.wedges += d * (d - 1) / 2;
    std::vector<std::int64_t> common;
    std::vector<std::int64_t> shared_uv;
    for (std::int64_t v : nu) {
      if (v <= static_cast<std::int64_t>(u)) continue;
      const auto& nv = adjacency[static_cast<std::size_t>(v)];
      common.clear();
      intersect_into(nu, nv, common);
      shared_uv.clear();
      intersect_into(incident[u], incident[static_cast<std::size_t>(v)], shared_uv);
      for (std::int64_t w : common) {
        if (w <= v) continue;
        ++t.triangles;
        if (intersect_size(shared_uv, incident[static_cast<std::size_t>(w)]) > 0) ++t.covered;
      }
    }
  });

  Tally sum;
  for (const Tally& t : partial) {
    sum.wedges += t.wedges;
    sum.triangles += t.triangles;
    sum.covered += t.covered;
  }
  // Every triangle contributes three closed wedges; the rest are open.
  return VertexTypeCounts{sum.covered, sum.wedges - 3 * sum.triangles, sum.triangles - sum.covered};
}

TriadCounts count_all(const DynHypergraph& g, const CountOptions& options, const EdgeScope* scope) {
  EdgeScope storage;
  const EdgeScope& s = resolve(g, scope, storage);
  TriadCounts out;
  const bool temporal = options.temporal && options.temporal_params.enabled();
  if (options.hyperedge || temporal) {
    const EdgeTriadTally t =
        count_edge_triads(g, s, options.hyperedge, temporal ? &options.temporal_params : nullptr);
    if (options.hyperedge) out.hyperedge_by_class = t.by_class;
    out.temporal_total = t.temporal_total;
    out.temporal_by_class = t.temporal_by_class;
  }
  if (options.vertex) out.vertex_by_type = count_vertex_triads(g, &s);
  return out;
}

}  // namespace hgdyn
