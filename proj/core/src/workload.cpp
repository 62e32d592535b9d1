#include "hgdyn/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace hgdyn {

namespace {

std::int64_t parse_int(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ": bad integer '" + token + "'");
  }
  return v;
}

std::vector<std::int64_t> read_ints(std::istream& in, const char* what) {
  std::vector<std::int64_t> out;
  std::string token;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream ls(text);
    while (ls >> token) out.push_back(parse_int(token, line));
  }
  (void)what;
  return out;
}

std::ifstream open(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::parse_error, "cannot open " + p.string());
  return in;
}

std::vector<VertexId> draw_vertices(std::mt19937_64& rng, std::size_t card, std::size_t n_vertices) {
  std::uniform_int_distribution<VertexId> pick(1, static_cast<VertexId>(n_vertices));
  std::set<VertexId> chosen;
  while (chosen.size() < card) chosen.insert(pick(rng));
  return std::vector<VertexId>(chosen.begin(), chosen.end());
}

}  // namespace

InputFormat parse_format(const std::string& name) {
  if (name == "edge-lines") return InputFormat::edge_lines;
  if (name == "simplicial-3file") return InputFormat::simplicial_3file;
  throw Error(Errc::config_error, "unknown input format '" + name + "'");
}

std::vector<EdgeSpec> read_edge_lines(std::istream& in) {
  std::vector<EdgeSpec> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream ls(text);
    std::string token;
    if (!(ls >> token) || token.front() == '#') continue;
    EdgeSpec e;
    e.id = static_cast<EdgeId>(out.size()) + 1;
    if (token.rfind("t=", 0) == 0) {
      e.time = parse_int(token.substr(2), line);
      if (!(ls >> token)) throw Error(Errc::parse_error, "line " + std::to_string(line) + ": no vertices");
    }
    do {
      const std::int64_t v = parse_int(token, line);
      if (v < 0) throw Error(Errc::parse_error, "line " + std::to_string(line) + ": negative vertex ID");
      e.vertices.push_back(v);
    } while (ls >> token);
    std::sort(e.vertices.begin(), e.vertices.end());
    e.vertices.erase(std::unique(e.vertices.begin(), e.vertices.end()), e.vertices.end());
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EdgeSpec> read_simplicial(std::istream& nverts, std::istream& simplices, std::istream& times) {
  const auto counts = read_ints(nverts, "nverts");
  const auto stream = read_ints(simplices, "simplices");
  const auto stamps = read_ints(times, "times");
  if (stamps.size() != counts.size()) {
    throw Error(Errc::cardinality_mismatch, std::to_string(counts.size()) + " simplices but " +
                                                std::to_string(stamps.size()) + " timestamps");
  }
  std::size_t total = 0;
  for (auto c : counts) {
    if (c < 1) throw Error(Errc::cardinality_mismatch, "simplex with cardinality " + std::to_string(c));
    total += static_cast<std::size_t>(c);
  }
  if (total != stream.size()) {
    throw Error(Errc::cardinality_mismatch, "cardinalities sum to " + std::to_string(total) + " but " +
                                                std::to_string(stream.size()) + " vertices given");
  }
  std::vector<EdgeSpec> out;
  std::size_t at = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    EdgeSpec e;
    e.id = static_cast<EdgeId>(i) + 1;
    e.time = stamps[i];
    e.vertices.assign(stream.begin() + static_cast<std::ptrdiff_t>(at),
                      stream.begin() + static_cast<std::ptrdiff_t>(at + static_cast<std::size_t>(counts[i])));
    at += static_cast<std::size_t>(counts[i]);
    if (std::any_of(e.vertices.begin(), e.vertices.end(), [](VertexId v) { return v < 0; })) {
      throw Error(Errc::parse_error, "simplex " + std::to_string(i + 1) + ": negative vertex ID");
    }
    std::sort(e.vertices.begin(), e.vertices.end());
    e.vertices.erase(std::unique(e.vertices.begin(), e.vertices.end()), e.vertices.end());
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EdgeSpec> ingest(const std::filesystem::path& path, InputFormat format) {
  if (format == InputFormat::edge_lines) {
    auto in = open(path);
    return read_edge_lines(in);
  }
  const std::string prefix = path.string();
  auto nverts = open(prefix + "-nverts.txt");
  auto simplices = open(prefix + "-simplices.txt");
  auto times = open(prefix + "-times.txt");
  return read_simplicial(nverts, simplices, times);
}

std::vector<EdgeSpec> snapshot(const DynHypergraph& g) {
  std::vector<EdgeSpec> out;
  for (EdgeId h : g.edge_ids()) out.push_back(EdgeSpec{h, g.incident_vertices(h), g.time_of(h)});
  return out;
}

void write_edge_lines(std::ostream& out, std::span<const EdgeSpec> edges) {
  for (const EdgeSpec& e : edges) {
    if (e.time) out << "t=" << *e.time;
    for (std::size_t i = 0; i < e.vertices.size(); ++i) {
      if (i > 0 || e.time) out << ' ';
      out << e.vertices[i];
    }
    out << '\n';
  }
}

CardDist CardDist::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(Errc::config_error, "cardinality spec '" + text + "' lacks ':'");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  CardDist d;
  try {
    if (kind == "fixed" || kind == "uniform") {
      d.kind = kind == "fixed" ? Kind::fixed : Kind::uniform;
      const long long k = std::stoll(args);
      if (k < 1) throw Error(Errc::config_error, "cardinality must be >= 1");
      d.k = static_cast<std::size_t>(k);
      return d;
    }
    if (kind == "normal") {
      const auto comma = args.find(',');
      if (comma == std::string::npos) throw Error(Errc::config_error, "normal needs mu,std");
      d.kind = Kind::normal;
      d.mean = std::stod(args.substr(0, comma));
      d.stddev = std::stod(args.substr(comma + 1));
      if (d.stddev < 0) throw Error(Errc::config_error, "std must be >= 0");
      return d;
    }
  } catch (const std::logic_error&) {
    throw Error(Errc::config_error, "bad cardinality spec '" + text + "'");
  }
  throw Error(Errc::config_error, "unknown cardinality distribution '" + kind + "'");
}

std::string CardDist::to_string() const {
  switch (kind) {
    case Kind::fixed: return "fixed:" + std::to_string(k);
    case Kind::uniform: return "uniform:" + std::to_string(k);
    case Kind::normal: {
      std::ostringstream s;
      s << "normal:" << mean << ',' << stddev;
      return s.str();
    }
  }
  return {};
}

std::size_t CardDist::sample(std::mt19937_64& rng, std::size_t cap) const {
  std::size_t c = 1;
  switch (kind) {
    case Kind::fixed: c = k; break;
    case Kind::uniform: c = std::uniform_int_distribution<std::size_t>(1, k)(rng); break;
    case Kind::normal: {
      const double x = std::round(std::normal_distribution<double>(mean, stddev)(rng));
      c = x < 1 ? 1 : static_cast<std::size_t>(x);
      break;
    }
  }
  return std::clamp<std::size_t>(c, 1, std::max<std::size_t>(cap, 1));
}

std::vector<EdgeSpec> gen_random_edges(std::size_t n_edges, std::size_t n_vertices, std::size_t max_card,
                                       std::uint64_t seed) {
  if (max_card < 1 || n_vertices < max_card) {
    throw Error(Errc::config_error, "need 1 <= max_card <= n_vertices");
  }
  std::mt19937_64 rng(seed);
  const CardDist card{CardDist::Kind::uniform, max_card};
  std::vector<EdgeSpec> out(n_edges);
  for (std::size_t i = 0; i < n_edges; ++i) {
    out[i].id = static_cast<EdgeId>(i) + 1;
    out[i].time = static_cast<Timestamp>(i);
    out[i].vertices = draw_vertices(rng, card.sample(rng, max_card), n_vertices);
  }
  return out;
}

DynHypergraph gen_random(std::size_t n_edges, std::size_t n_vertices, std::size_t max_card, std::uint64_t seed,
                         HypergraphConfig config) {
  const auto edges = gen_random_edges(n_edges, n_vertices, max_card, seed);
  return DynHypergraph::init(edges, config);
}

ChangeBatch gen_batch(const DynHypergraph& g, const BatchSpec& spec) {
  if (spec.delete_pct < 0 || spec.delete_pct > 1) throw Error(Errc::config_error, "delete_pct must be in [0, 1]");
  std::mt19937_64 rng(spec.seed);
  ChangeBatch batch;
  const auto n_del = static_cast<std::size_t>(std::floor(static_cast<double>(spec.n_changes) * spec.delete_pct));
  std::vector<EdgeId> live = g.edge_ids();
  if (n_del > live.size()) {
    throw Error(Errc::insufficient_edges, "asked for " + std::to_string(n_del) + " deletions, " +
                                              std::to_string(live.size()) + " edges live");
  }
  // Partial Fisher-Yates: the first n_del entries become the deletions.
  for (std::size_t i = 0; i < n_del; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, live.size() - 1);
    std::swap(live[i], live[pick(rng)]);
  }
  batch.deletes.assign(live.begin(), live.begin() + static_cast<std::ptrdiff_t>(n_del));

  EdgeId next_id = spec.next_id;
  Timestamp next_time = spec.next_time;
  for (std::size_t i = n_del; i < spec.n_changes; ++i) {
    EdgeSpec e;
    e.id = next_id++;
    e.time = next_time++;
    e.vertices = draw_vertices(rng, spec.card.sample(rng, spec.n_vertices), spec.n_vertices);
    batch.inserts.push_back(std::move(e));
  }

  const std::vector<EdgeId> survivors(live.begin() + static_cast<std::ptrdiff_t>(n_del), live.end());
  if (survivors.empty() || spec.vertex_mods == 0) return batch;
  std::set<Incidence> used;
  std::uniform_int_distribution<std::size_t> pick_edge(0, survivors.size() - 1);
  std::uniform_int_distribution<VertexId> pick_vertex(1, static_cast<VertexId>(spec.n_vertices));
  std::size_t attempts = 0;
  while (batch.vertex_inserts.size() + batch.vertex_deletes.size() < spec.vertex_mods &&
         attempts++ < 20 * spec.vertex_mods) {
    const EdgeId h = survivors[pick_edge(rng)];
    const std::vector<VertexId> members = g.incident_vertices(h);
    const bool remove = (rng() & 1) != 0 && members.size() > 1;
    if (remove) {
      const VertexId v = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
      if (used.insert({h, v}).second) batch.vertex_deletes.emplace_back(h, v);
    } else {
      const VertexId v = pick_vertex(rng);
      if (std::binary_search(members.begin(), members.end(), v)) continue;
      if (used.insert({h, v}).second) batch.vertex_inserts.emplace_back(h, v);
    }
  }
  return batch;
}

}  // namespace hgdyn
