#include "report.hpp"

#include <limits>

namespace hgdyn::cli {

Motif parse_motif(const std::string& name) {
  if (name == "hyperedge") return Motif::hyperedge;
  if (name == "vertex") return Motif::vertex;
  if (name == "temporal") return Motif::temporal;
  if (name == "all") return Motif::all;
  throw Error(Errc::config_error, "unknown motif '" + name + "'");
}

std::string to_string(Motif m) {
  switch (m) {
    case Motif::hyperedge: return "hyperedge";
    case Motif::vertex: return "vertex";
    case Motif::temporal: return "temporal";
    case Motif::all: return "all";
  }
  return {};
}

CountOptions options_for(Motif m, Timestamp t_delta) {
  CountOptions opt;
  opt.hyperedge = m == Motif::hyperedge || m == Motif::all;
  opt.vertex = m == Motif::vertex || m == Motif::all;
  opt.temporal = (m == Motif::temporal || m == Motif::all) && t_delta != 0;
  opt.temporal_params.t_delta = t_delta;
  return opt;
}

std::string t_delta_string(Timestamp t) { return t == kUnboundedWindow ? "inf" : std::to_string(t); }

Timestamp parse_t_delta(const std::string& text) {
  if (text == "inf") return kUnboundedWindow;
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 0) throw Error(Errc::config_error, "--t-delta takes a non-negative integer or 'inf'");
  return v;
}

Json class_table_json() {
  Json out = Json::array();
  const auto pats = TriadClassTable::instance().canonical_patterns();
  for (std::size_t i = 0; i < pats.size(); ++i) out.push_back({{"class", i}, {"pattern", pats[i].to_string()}});
  return out;
}

namespace {

Json by_class(const ClassCounts& c) {
  Json out = Json::array();
  const auto pats = TriadClassTable::instance().canonical_patterns();
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.push_back({{"class", i}, {"pattern", pats[i].to_string()}, {"count", c[i]}});
  }
  return out;
}

}  // namespace

Json counts_json(const TriadCounts& c, const CountOptions& opt) {
  Json out = Json::object();
  if (opt.hyperedge) out["hyperedge"] = {{"total", c.hyperedge_total()}, {"by_class", by_class(c.hyperedge_by_class)}};
  if (opt.vertex) {
    out["vertex"] = {{"total", c.vertex_total()},
                     {"type1", c.vertex_by_type[0]},
                     {"type2", c.vertex_by_type[1]},
                     {"type3", c.vertex_by_type[2]}};
  }
  if (opt.temporal && opt.temporal_params.enabled()) {
    out["temporal"] = {{"t_delta", t_delta_string(opt.temporal_params.t_delta)},
                       {"total", c.temporal_total},
                       {"by_class", by_class(c.temporal_by_class)}};
  }
  return out;
}

Json stats_json(const UpdateStats& s) {
  return {{"delete_ms", s.delete_ms}, {"insert_ms", s.insert_ms}, {"modify_ms", s.modify_ms},
          {"region_ms", s.region_ms}, {"count_ms", s.count_ms},   {"total_ms", s.total_ms}};
}

std::string first_difference(const TriadCounts& got, const TriadCounts& want, const CountOptions& opt) {
  const auto pats = TriadClassTable::instance().canonical_patterns();
  auto describe = [](const std::string& what, std::uint64_t g, std::uint64_t w) {
    return what + ": incremental " + std::to_string(g) + ", reference " + std::to_string(w);
  };
  if (opt.hyperedge) {
    for (std::size_t i = 0; i < kNumTriadClasses; ++i) {
      if (got.hyperedge_by_class[i] != want.hyperedge_by_class[i]) {
        return describe("hyperedge class " + std::to_string(i) + " (" + pats[i].to_string() + ")",
                        got.hyperedge_by_class[i], want.hyperedge_by_class[i]);
      }
    }
  }
  if (opt.vertex) {
    for (std::size_t t = 0; t < kNumVertexTypes; ++t) {
      if (got.vertex_by_type[t] != want.vertex_by_type[t]) {
        return describe("vertex type " + std::to_string(t + 1), got.vertex_by_type[t], want.vertex_by_type[t]);
      }
    }
  }
  if (opt.temporal && opt.temporal_params.enabled()) {
    if (got.temporal_total != want.temporal_total) {
      return describe("temporal total", got.temporal_total, want.temporal_total);
    }
    for (std::size_t i = 0; i < kNumTriadClasses; ++i) {
      if (got.temporal_by_class[i] != want.temporal_by_class[i]) {
        return describe("temporal class " + std::to_string(i) + " (" + pats[i].to_string() + ")",
                        got.temporal_by_class[i], want.temporal_by_class[i]);
      }
    }
  }
  return {};
}

}  // namespace hgdyn::cli
