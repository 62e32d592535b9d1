#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hgdyn/hypergraph.hpp"
#include "hgdyn/types.hpp"

namespace hgdyn {

enum class InputFormat { edge_lines, simplicial_3file };

InputFormat parse_format(const std::string& name);

// One hyperedge per line: whitespace-separated vertex IDs, optionally led by
// `t=<int>`. Blank lines and lines starting with '#' are skipped. Edges get
// IDs 1..n in file order.
std::vector<EdgeSpec> read_edge_lines(std::istream& in);
// Companion streams of the simplicial format: per-simplex cardinalities, the
// flattened vertex stream, and one timestamp per simplex.
std::vector<EdgeSpec> read_simplicial(std::istream& nverts, std::istream& simplices, std::istream& times);
// For simplicial_3file, path is the common prefix `<name>`; the files are
// `<name>-nverts.txt`, `<name>-simplices.txt` and `<name>-times.txt`.
std::vector<EdgeSpec> ingest(const std::filesystem::path& path, InputFormat format);

// Live edges ordered by external ID.
std::vector<EdgeSpec> snapshot(const DynHypergraph& g);
// Edge-lines output; reading it back yields the same edges renumbered 1..n.
void write_edge_lines(std::ostream& out, std::span<const EdgeSpec> edges);

struct CardDist {
  enum class Kind { fixed, uniform, normal };
  Kind kind = Kind::uniform;
  std::size_t k = 8;
  double mean = 4.0;
  double stddev = 1.0;

  // "fixed:k", "uniform:k" or "normal:mu,std".
  static CardDist parse(const std::string& text);
  std::string to_string() const;
  // Always in [1, cap].
  std::size_t sample(std::mt19937_64& rng, std::size_t cap) const;
};

// Cardinalities uniform in [1, max_card], vertices drawn without replacement
// from [1, n_vertices], IDs 1..n, timestamp = position in the sequence.
std::vector<EdgeSpec> gen_random_edges(std::size_t n_edges, std::size_t n_vertices, std::size_t max_card,
                                       std::uint64_t seed);
DynHypergraph gen_random(std::size_t n_edges, std::size_t n_vertices, std::size_t max_card, std::uint64_t seed,
                         HypergraphConfig config = {});

struct BatchSpec {
  std::size_t n_changes = 0;
  double delete_pct = 0.5;
  CardDist card{};
  // Incident-vertex insertions/removals on surviving edges, on top of n_changes.
  std::size_t vertex_mods = 0;
  std::size_t n_vertices = 1;
  EdgeId next_id = 1;
  Timestamp next_time = 0;
  std::uint64_t seed = 0;
};

// floor(n_changes * delete_pct) uniformly chosen live deletions; the rest are
// fresh insertions numbered from next_id and stamped from next_time upward.
ChangeBatch gen_batch(const DynHypergraph& g, const BatchSpec& spec);

}  // namespace hgdyn
