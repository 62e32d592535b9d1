#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgdyn/hypergraph.hpp"
#include "hgdyn/types.hpp"

namespace hgdyn {

inline constexpr std::size_t kNumTriadClasses = 26;
inline constexpr std::size_t kNumVertexTypes = 3;
inline constexpr Timestamp kUnboundedWindow = std::numeric_limits<Timestamp>::max();

// Non-emptiness of the seven Venn regions of three sets (a, b, c), in the
// order a-only, b-only, c-only, ab, ac, bc, abc (ab means (a∩b)\c). Region r
// is stored at bit 6 - r, so comparing bits compares the 7-character strings
// lexicographically.
struct VennPattern {
  enum Region { kA, kB, kC, kAB, kAC, kBC, kABC };

  std::uint8_t bits = 0;

  bool has(int region) const noexcept { return (bits >> (6 - region)) & 1u; }
  void set(int region) noexcept { bits |= static_cast<std::uint8_t>(1u << (6 - region)); }
  std::string to_string() const;

  // Pattern seen when roles (a, b, c) are taken from (x[0], x[1], x[2]) of the original.
  VennPattern permuted(std::array<int, 3> roles) const noexcept;
  VennPattern canonical() const noexcept;
  // Some two of the three sets are equal.
  bool has_identical_pair() const noexcept;
  int nonempty_intersections() const noexcept;

  bool operator==(const VennPattern&) const = default;
  auto operator<=>(const VennPattern&) const = default;
};

VennPattern venn_pattern(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                         std::span<const std::int64_t> c);

// The 26 hyperedge-triad classes, indexed by lexicographic order of their
// canonical patterns.
class TriadClassTable {
 public:
  static TriadClassTable build();
  static const TriadClassTable& instance();

  std::optional<int> class_of(VennPattern p) const noexcept {
    const int c = class_of_[p.bits];
    return c < 0 ? std::nullopt : std::optional<int>(c);
  }
  std::span<const VennPattern> canonical_patterns() const noexcept { return canonical_; }
  std::size_t size() const noexcept { return canonical_.size(); }

 private:
  std::array<std::int8_t, 128> class_of_{};
  std::vector<VennPattern> canonical_;
};

struct TemporalParams {
  // 0 disables temporal counting; kUnboundedWindow never excludes a triple.
  Timestamp t_delta = kUnboundedWindow;

  bool enabled() const noexcept { return t_delta != 0; }
  bool admits(Timestamp lo, Timestamp hi) const noexcept {
    return t_delta == kUnboundedWindow ||
           static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) <= static_cast<std::uint64_t>(t_delta);
  }
};

using ClassCounts = std::array<std::uint64_t, kNumTriadClasses>;
using VertexTypeCounts = std::array<std::uint64_t, kNumVertexTypes>;

struct TemporalCounts {
  std::uint64_t total = 0;
  ClassCounts by_class{};
  bool operator==(const TemporalCounts&) const = default;
};

struct TriadCounts {
  ClassCounts hyperedge_by_class{};
  VertexTypeCounts vertex_by_type{};
  std::uint64_t temporal_total = 0;
  ClassCounts temporal_by_class{};

  std::uint64_t hyperedge_total() const noexcept;
  std::uint64_t vertex_total() const noexcept;
  bool operator==(const TriadCounts&) const = default;
};

// Which categories a counting pass computes.
struct CountOptions {
  bool hyperedge = true;
  bool vertex = true;
  bool temporal = true;
  TemporalParams temporal_params{};
};

// A set of live hyperedges resolved against one hypergraph snapshot.
class EdgeScope {
 public:
  static EdgeScope all(const DynHypergraph& g);
  // Throws NotFound for IDs that are not live.
  static EdgeScope of(const DynHypergraph& g, std::span<const EdgeId> edges);

  bool contains(InternalId i) const noexcept {
    return i >= 0 && static_cast<std::size_t>(i) < member_.size() && member_[i] != 0;
  }
  std::span<const InternalId> members() const noexcept { return members_; }

 private:
  std::vector<InternalId> members_;
  std::vector<char> member_;
};

std::vector<std::int64_t> intersect_sorted(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

// Class index, or nullopt when fewer than two pairs intersect. Throws
// IdenticalSets when two inputs are equal as sets.
std::optional<int> classify_triple(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                   std::span<const std::int64_t> c);

ClassCounts count_hyperedge_triads(const DynHypergraph& g, const EdgeScope* scope = nullptr);
VertexTypeCounts count_vertex_triads(const DynHypergraph& g, const EdgeScope* scope = nullptr);
TemporalCounts count_temporal_triads(const DynHypergraph& g, const TemporalParams& params,
                                     const EdgeScope* scope = nullptr);
TriadCounts count_all(const DynHypergraph& g, const CountOptions& options, const EdgeScope* scope = nullptr);

}  // namespace hgdyn
