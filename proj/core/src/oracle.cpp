#include "hgdyn/oracle.hpp"

#include <algorithm>
#include <array>

namespace hgdyn::oracle {

namespace {

using VSet = std::set<VertexId>;

bool meets(const VSet& x, const VSet& y) {
  for (VertexId v : x) {
    if (y.contains(v)) return true;
  }
  return false;
}

constexpr std::array<int, 7> kOrder = {1, 2, 4, 3, 5, 6, 7};

// present[m]: some vertex lies in exactly the sets of bitmask m (a = 1, b = 2, c = 4).
std::array<bool, 8> region_masks(const VSet& a, const VSet& b, const VSet& c) {
  std::array<bool, 8> present{};
  VSet all = a;
  all.insert(b.begin(), b.end());
  all.insert(c.begin(), c.end());
  for (VertexId v : all) present[int{a.contains(v)} | int{b.contains(v)} << 1 | int{c.contains(v)} << 2] = true;
  return present;
}

// '1' per non-empty region in the order a, b, c, ab, ac, bc, abc, after
// relabelling set x as set perm[x].
std::string region_string(const std::array<bool, 8>& present, const std::array<int, 3>& perm) {
  std::array<bool, 8> moved{};
  for (int m = 1; m < 8; ++m) {
    int to = 0;
    for (int x = 0; x < 3; ++x) {
      if (m >> x & 1) to |= 1 << perm[x];
    }
    moved[to] = present[m];
  }
  std::string s;
  for (int m : kOrder) s += moved[m] ? '1' : '0';
  return s;
}

bool qualifies(const VSet& a, const VSet& b, const VSet& c) {
  if (a.empty() || b.empty() || c.empty()) return false;
  if (a == b || a == c || b == c) return false;
  return int{meets(a, b)} + int{meets(a, c)} + int{meets(b, c)} >= 2;
}

std::string canonical_string(const VSet& a, const VSet& b, const VSet& c) {
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  const auto present = region_masks(a, b, c);
  std::string best = region_string(present, kPerms[0]);
  for (const auto& p : kPerms) best = std::min(best, region_string(present, p));
  return best;
}

int class_index(const std::string& canonical) {
  const auto& pats = class_patterns();
  auto it = std::lower_bound(pats.begin(), pats.end(), canonical);
  if (it == pats.end() || *it != canonical) {
    throw Error(Errc::class_count_mismatch, "pattern " + canonical + " is not a known class");
  }
  return static_cast<int>(it - pats.begin());
}

}  // namespace

RefHypergraph from_edges(std::span<const EdgeSpec> edges) {
  RefHypergraph r;
  for (const EdgeSpec& e : edges) {
    if (!r.edges.emplace(e.id, VSet(e.vertices.begin(), e.vertices.end())).second) {
      throw Error(Errc::duplicate, "hyperedge " + std::to_string(e.id) + " given twice");
    }
    if (e.time) r.times[e.id] = *e.time;
  }
  return r;
}

const std::vector<std::string>& class_patterns() {
  // Realize every region subset with concrete sets (one fresh vertex per
  // non-empty region), then keep the canonical forms of the valid ones.
  static const std::vector<std::string> patterns = [] {
    std::set<std::string> found;
    for (int subset = 0; subset < 128; ++subset) {
      VSet a, b, c;
      for (int r = 0; r < 7; ++r) {
        if (!(subset >> r & 1)) continue;
        if (kOrder[r] & 1) a.insert(r);
        if (kOrder[r] & 2) b.insert(r);
        if (kOrder[r] & 4) c.insert(r);
      }
      if (qualifies(a, b, c)) found.insert(canonical_string(a, b, c));
    }
    return std::vector<std::string>(found.begin(), found.end());
  }();
  return patterns;
}

TriadCounts ref_count_all(const RefHypergraph& r, const TemporalParams& params, std::size_t cap) {
  if (r.edges.size() > cap) {
    throw Error(Errc::oracle_cap_exceeded, std::to_string(r.edges.size()) + " edges exceeds cap " + std::to_string(cap));
  }
  const bool temporal = params.t_delta != 0;
  if (temporal) {
    for (const auto& [id, vs] : r.edges) {
      if (!r.times.contains(id)) throw Error(Errc::missing_timestamps, "edge " + std::to_string(id));
    }
  }

  TriadCounts out;
  std::vector<std::pair<EdgeId, const VSet*>> edges;
  for (const auto& [id, vs] : r.edges) edges.emplace_back(id, &vs);
  const std::size_t n = edges.size();
  // Pairwise relations, so the triple loop only does set work for real triads.
  std::vector<std::vector<char>> meet(n, std::vector<char>(n, 0));
  std::vector<std::vector<char>> same(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      meet[i][j] = meet[j][i] = meets(*edges[i].second, *edges[j].second);
      same[i][j] = same[j][i] = *edges[i].second == *edges[j].second;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (int{meet[i][j]} + int{meet[i][k]} + int{meet[j][k]} < 2) continue;
        if (same[i][j] || same[i][k] || same[j][k]) continue;
        const VSet& a = *edges[i].second;
        const VSet& b = *edges[j].second;
        const VSet& c = *edges[k].second;
        if (!qualifies(a, b, c)) continue;
        const int cls = class_index(canonical_string(a, b, c));
        ++out.hyperedge_by_class[static_cast<std::size_t>(cls)];
        if (!temporal) continue;
        const Timestamp ta = r.times.at(edges[i].first);
        const Timestamp tb = r.times.at(edges[j].first);
        const Timestamp tc = r.times.at(edges[k].first);
        const Timestamp lo = std::min({ta, tb, tc});
        const Timestamp hi = std::max({ta, tb, tc});
        if (params.t_delta == kUnboundedWindow || hi - lo <= params.t_delta) {
          ++out.temporal_total;
          ++out.temporal_by_class[static_cast<std::size_t>(cls)];
        }
      }
    }
  }

  VSet vertices;
  for (const auto& [id, vs] : r.edges) vertices.insert(vs.begin(), vs.end());
  const std::vector<VertexId> vlist(vertices.begin(), vertices.end());
  const std::size_t nv = vlist.size();
  auto index = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(vlist.begin(), vlist.end(), v) - vlist.begin());
  };
  std::vector<std::vector<char>> paired(nv, std::vector<char>(nv, 0));
  std::set<std::array<std::size_t, 3>> covered;
  for (const auto& [id, vs] : r.edges) {
    std::vector<std::size_t> m;
    for (VertexId v : vs) m.push_back(index(v));
    for (std::size_t x = 0; x < m.size(); ++x) {
      for (std::size_t y = x + 1; y < m.size(); ++y) {
        paired[m[x]][m[y]] = paired[m[y]][m[x]] = 1;
        for (std::size_t z = y + 1; z < m.size(); ++z) covered.insert({m[x], m[y], m[z]});
      }
    }
  }
  for (std::size_t x = 0; x < nv; ++x) {
    for (std::size_t y = x + 1; y < nv; ++y) {
      for (std::size_t z = y + 1; z < nv; ++z) {
        const int pairs = int{paired[x][y]} + int{paired[x][z]} + int{paired[y][z]};
        if (pairs < 2) continue;
        if (pairs == 3 && covered.contains({x, y, z})) {
          ++out.vertex_by_type[0];
        } else if (pairs == 2) {
          ++out.vertex_by_type[1];
        } else {
          ++out.vertex_by_type[2];
        }
      }
    }
  }
  return out;
}

RefHypergraph ref_apply(RefHypergraph r, const ChangeBatch& batch) {
  for (EdgeId h : batch.deletes) {
    if (r.edges.erase(h) == 0) throw Error(Errc::not_found, "edge " + std::to_string(h));
    r.times.erase(h);
  }
  for (const EdgeSpec& e : batch.inserts) {
    if (!r.edges.emplace(e.id, VSet(e.vertices.begin(), e.vertices.end())).second) {
      throw Error(Errc::duplicate, "edge " + std::to_string(e.id));
    }
    if (e.time) r.times[e.id] = *e.time;
  }
  for (const auto& [h, v] : batch.vertex_deletes) {
    auto it = r.edges.find(h);
    if (it == r.edges.end() || it->second.erase(v) == 0) {
      throw Error(Errc::not_found, "incidence " + std::to_string(h) + "/" + std::to_string(v));
    }
  }
  for (const auto& [h, v] : batch.vertex_inserts) {
    auto it = r.edges.find(h);
    if (it == r.edges.end()) throw Error(Errc::not_found, "edge " + std::to_string(h));
    if (!it->second.insert(v).second) throw Error(Errc::duplicate, "incidence " + std::to_string(h) + "/" + std::to_string(v));
  }
  return r;
}

std::vector<EdgeId> ref_neighbors(const RefHypergraph& r, EdgeId h) {
  const VSet& mine = r.edges.at(h);
  std::vector<EdgeId> out;
  for (const auto& [id, vs] : r.edges) {
    if (id != h && meets(mine, vs)) out.push_back(id);
  }
  return out;
}

std::vector<EdgeId> ref_incident_hyperedges(const RefHypergraph& r, VertexId v) {
  std::vector<EdgeId> out;
  for (const auto& [id, vs] : r.edges) {
    if (vs.contains(v)) out.push_back(id);
  }
  return out;
}

}  // namespace hgdyn::oracle
