#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hgdyn/dynamic_update.hpp"
#include "hgdyn/error.hpp"
#include "hgdyn/hypergraph.hpp"
#include "hgdyn/oracle.hpp"
#include "hgdyn/parallel.hpp"
#include "hgdyn/triads.hpp"
#include "hgdyn/workload.hpp"
#include "report.hpp"

using namespace hgdyn;
using namespace hgdyn::cli;

namespace {

struct Options {
  std::string input;
  std::string format = "edge-lines";
  std::size_t edges = 1000;
  std::size_t vertices = 1000;
  std::size_t max_card = 8;
  std::uint64_t seed = 1;
  std::string motif = "all";
  std::string t_delta = "inf";
  std::size_t batches = 1;
  std::size_t batch_size = 100;
  double delete_pct = 0.5;
  std::string card = "uniform:8";
  std::size_t vertex_mods = 0;
  int threads = 0;
  double overprovision = 2.0;
  std::string out;
  std::string csv;
  std::size_t oracle_cap = oracle::kDefaultCap;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Instance {
  std::vector<EdgeSpec> edges;
  std::size_t n_vertices = 1;
  EdgeId next_id = 1;
  Timestamp next_time = 0;
};

Instance load(const Options& o) {
  Instance inst;
  if (!o.input.empty()) {
    inst.edges = ingest(o.input, parse_format(o.format));
    VertexId max_v = 0;
    for (const auto& e : inst.edges) {
      if (!e.vertices.empty()) max_v = std::max(max_v, e.vertices.back());
    }
    inst.n_vertices = std::max<std::size_t>(1, static_cast<std::size_t>(max_v));
  } else {
    inst.edges = gen_random_edges(o.edges, o.vertices, o.max_card, o.seed);
    inst.n_vertices = o.vertices;
  }
  for (const auto& e : inst.edges) {
    inst.next_id = std::max(inst.next_id, e.id + 1);
    if (e.time) inst.next_time = std::max(inst.next_time, *e.time + 1);
  }
  return inst;
}

Json config_json(const Options& o, const std::string& mode, const CountOptions& opt) {
  Json c = Json::object();
  if (o.input.empty()) {
    c["source"] = {{"kind", "random"}, {"edges", o.edges}, {"vertices", o.vertices}, {"max_card", o.max_card}};
  } else {
    c["source"] = {{"kind", "file"}, {"input", o.input}, {"format", o.format}};
  }
  c["seed"] = o.seed;
  c["motif"] = o.motif;
  c["t_delta"] = o.t_delta;
  c["temporal_enabled"] = opt.temporal && opt.temporal_params.enabled();
  c["batches"] = o.batches;
  c["batch_size"] = o.batch_size;
  c["delete_pct"] = o.delete_pct;
  c["card"] = o.card;
  c["vertex_mods"] = o.vertex_mods;
  c["threads"] = o.threads;
  c["overprovision"] = o.overprovision;
  if (mode == "verify") c["oracle_cap"] = o.oracle_cap;
  return c;
}

struct CsvRow {
  std::size_t batch;
  UpdateStats stats;
  std::optional<double> recount_ms;
};

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::config_error, "cannot write " + path);
  const bool bench = !rows.empty() && rows.front().recount_ms.has_value();
  out << "batch,delete_ms,insert_ms,modify_ms,region_ms,count_ms,total_ms";
  if (bench) out << ",recount_ms";
  out << '\n';
  for (const auto& r : rows) {
    out << r.batch << ',' << r.stats.delete_ms << ',' << r.stats.insert_ms << ',' << r.stats.modify_ms << ','
        << r.stats.region_ms << ',' << r.stats.count_ms << ',' << r.stats.total_ms;
    if (bench) out << ',' << r.recount_ms.value_or(0);
    out << '\n';
  }
}

void emit(const Options& o, const Json& report) {
  if (o.out.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream out(o.out);
  if (!out) throw Error(Errc::config_error, "cannot write " + o.out);
  out << report.dump(2) << '\n';
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

int run(const std::string& mode, const Options& o) {
  set_threads(o.threads);
  if (o.delete_pct < 0 || o.delete_pct > 1) throw Error(Errc::config_error, "--delete-pct must be in [0, 1]");
  if (o.overprovision < 1) throw Error(Errc::config_error, "--overprovision must be >= 1");
  const Motif motif = parse_motif(o.motif);
  const Timestamp t_delta = parse_t_delta(o.t_delta);
  const CardDist card = CardDist::parse(o.card);

  Instance inst = load(o);
  CountOptions opt = options_for(motif, t_delta);
  const bool timed = std::all_of(inst.edges.begin(), inst.edges.end(), [](const EdgeSpec& e) { return e.time; });
  if (opt.temporal && !timed) {
    if (motif == Motif::temporal) throw Error(Errc::missing_timestamps, "input has edges without timestamps");
    opt.temporal = false;
  }

  Json report = {{"mode", mode}, {"config", config_json(o, mode, opt)}};
  HypergraphConfig hc;
  hc.overprovision = o.overprovision;

  auto t0 = std::chrono::steady_clock::now();
  DynHypergraph g = DynHypergraph::init(inst.edges, hc);
  const double build_ms = ms_since(t0);
  report["build_ms"] = build_ms;
  report["initial"] = {{"edges", g.num_edges()}, {"vertices", g.num_vertices()}};

  const std::size_t n_batches = mode == "count" ? 0 : o.batches;
  auto next_batch = [&, b = std::size_t{0}]() mutable {
    BatchSpec spec;
    spec.n_changes = o.batch_size;
    spec.delete_pct = o.delete_pct;
    spec.card = card;
    spec.vertex_mods = o.vertex_mods;
    spec.n_vertices = inst.n_vertices;
    spec.next_id = inst.next_id;
    spec.next_time = inst.next_time;
    spec.seed = o.seed * 0x9E3779B97F4A7C15ull + ++b;
    ChangeBatch batch = gen_batch(g, spec);
    inst.next_id += static_cast<EdgeId>(batch.inserts.size());
    inst.next_time += static_cast<Timestamp>(batch.inserts.size());
    return batch;
  };

  if (mode == "export") {
    for (std::size_t b = 0; b < o.batches; ++b) g.apply(next_batch());
    const auto edges = snapshot(g);
    if (o.out.empty()) {
      write_edge_lines(std::cout, edges);
    } else {
      std::ofstream out(o.out);
      if (!out) throw Error(Errc::config_error, "cannot write " + o.out);
      write_edge_lines(out, edges);
    }
    return 0;
  }

  report["classes"] = class_table_json();
  t0 = std::chrono::steady_clock::now();
  CountState state = recount(CountState{{}, opt}, g);
  report["initial"]["count_ms"] = ms_since(t0);
  report["initial"]["counts"] = counts_json(state.counts, opt);

  std::optional<oracle::RefHypergraph> ref;
  const TemporalParams ref_params{opt.temporal ? opt.temporal_params.t_delta : 0};
  auto check = [&](std::size_t batch_no) {
    const TriadCounts want = oracle::ref_count_all(*ref, ref_params, o.oracle_cap);
    const std::string diff = first_difference(state.counts, want, opt);
    if (!diff.empty()) {
      throw Error(Errc::verification_failed,
                  (batch_no == 0 ? std::string("initial count") : "batch " + std::to_string(batch_no)) + ": " + diff);
    }
  };
  if (mode == "verify") {
    ref = oracle::from_edges(inst.edges);
    check(0);
  }

  std::optional<DynHypergraph> baseline;
  if (mode == "bench") baseline = g;

  Json batches = Json::array();
  std::vector<CsvRow> rows;
  std::vector<double> speedups;
  double inc_total = 0;
  double rec_total = 0;
  for (std::size_t b = 1; b <= n_batches; ++b) {
    const ChangeBatch batch = next_batch();
    const UpdateStats stats = apply_and_update(state, g, batch);
    Json entry = {{"batch", b},
                  {"deletes", batch.deletes.size()},
                  {"inserts", batch.inserts.size()},
                  {"vertex_inserts", batch.vertex_inserts.size()},
                  {"vertex_deletes", batch.vertex_deletes.size()},
                  {"edges", g.num_edges()},
                  {"region_pre", stats.region_pre},
                  {"region_post", stats.region_post},
                  {"timings", stats_json(stats)},
                  {"counts", counts_json(state.counts, opt)}};
    CsvRow row{b, stats, std::nullopt};
    if (ref) {
      ref = oracle::ref_apply(std::move(*ref), batch);
      check(b);
    }
    if (baseline) {
      t0 = std::chrono::steady_clock::now();
      baseline->apply(batch);
      const CountState fresh = recount(CountState{{}, opt}, *baseline);
      const double rec_ms = ms_since(t0);
      if (fresh.counts != state.counts) {
        throw Error(Errc::verification_failed,
                    "batch " + std::to_string(b) + ": " + first_difference(state.counts, fresh.counts, opt));
      }
      const double speedup = stats.total_ms > 0 ? rec_ms / stats.total_ms : 0;
      entry["recount_ms"] = rec_ms;
      entry["speedup"] = speedup;
      row.recount_ms = rec_ms;
      speedups.push_back(speedup);
      inc_total += stats.total_ms;
      rec_total += rec_ms;
    }
    batches.push_back(std::move(entry));
    rows.push_back(row);
  }

  if (mode != "count") report["batches"] = std::move(batches);
  report["final"] = {{"edges", g.num_edges()}, {"vertices", g.num_vertices()},
                     {"counts", counts_json(state.counts, opt)}};
  if (mode == "verify") report["verified"] = true;
  if (mode == "bench") {
    report["summary"] = {{"incremental_ms", inc_total},
                         {"recount_ms", rec_total},
                         {"speedup", inc_total > 0 ? rec_total / inc_total : 0},
                         {"median_speedup", median(speedups)}};
  }
  if (!o.csv.empty()) write_csv(o.csv, rows);
  emit(o, report);
  return 0;
}

void add_common(CLI::App* sub, Options& o, bool batches) {
  sub->add_option("--input", o.input, "Dataset path (prefix for simplicial-3file)");
  sub->add_option("--format", o.format, "edge-lines | simplicial-3file")->capture_default_str();
  sub->add_option("--edges", o.edges, "Random instance: number of hyperedges")->capture_default_str();
  sub->add_option("--vertices", o.vertices, "Random instance: vertex ID range")->capture_default_str();
  sub->add_option("--max-card", o.max_card, "Random instance: maximum cardinality")->capture_default_str();
  sub->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
  sub->add_option("--threads", o.threads, "Worker threads, 0 = all cores")->capture_default_str();
  sub->add_option("--overprovision", o.overprovision, "Arena slots per slot of initial demand")
      ->capture_default_str();
  sub->add_option("--out", o.out, "Write output here instead of stdout");
  if (!batches) return;
  sub->add_option("--batches", o.batches, "Number of change batches")->capture_default_str();
  sub->add_option("--batch-size", o.batch_size, "Hyperedge changes per batch")->capture_default_str();
  sub->add_option("--delete-pct", o.delete_pct, "Fraction of each batch that deletes")->capture_default_str();
  sub->add_option("--card", o.card, "Inserted cardinality: fixed:k | uniform:k | normal:mu,std")
      ->capture_default_str();
  sub->add_option("--vertex-mods", o.vertex_mods, "Incident-vertex changes per batch")->capture_default_str();
}

void add_counting(CLI::App* sub, Options& o) {
  sub->add_option("--motif", o.motif, "hyperedge | vertex | temporal | all")->capture_default_str();
  sub->add_option("--t-delta", o.t_delta, "Temporal window, integer or inf (0 disables)")->capture_default_str();
  sub->add_option("--csv", o.csv, "Per-batch timing table");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triad counting on dynamic hypergraphs"};
  app.require_subcommand(1);
  Options o;

  auto* count = app.add_subcommand("count", "Count triads once");
  add_common(count, o, false);
  add_counting(count, o);
  auto* update = app.add_subcommand("update", "Replay change batches with incremental counting");
  add_common(update, o, true);
  add_counting(update, o);
  auto* verify = app.add_subcommand("verify", "Replay batches and check every count against the oracle");
  add_common(verify, o, true);
  add_counting(verify, o);
  verify->add_option("--oracle-cap", o.oracle_cap, "Largest instance the oracle accepts")->capture_default_str();
  auto* bench = app.add_subcommand("bench", "Time incremental updates against full recounts");
  add_common(bench, o, true);
  add_counting(bench, o);
  auto* exp = app.add_subcommand("export", "Write the (optionally updated) instance as edge lines");
  add_common(exp, o, true);
  o.batches = 1;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const std::string mode = app.get_subcommands().front()->get_name();
    if (mode == "export" && exp->count("--batches") == 0) o.batches = 0;
    return run(mode, o);
  } catch (const Error& e) {
    std::cerr << "hgdyn: " << e.what() << '\n';
    return e.code() == Errc::verification_failed ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "hgdyn: " << e.what() << '\n';
    return 1;
  }
}
