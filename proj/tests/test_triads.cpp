#include <random>
#include <unordered_set>

#include "doctest.h"
#include "helpers.hpp"
#include "hgdyn/oracle.hpp"
#include "hgdyn/triads.hpp"

using namespace hgdyn;

namespace {

using List = std::vector<std::int64_t>;

TriadCounts counts_of(const std::vector<EdgeSpec>& edges, Timestamp t_delta = kUnboundedWindow) {
  const auto g = DynHypergraph::init(edges);
  CountOptions opt;
  opt.temporal_params.t_delta = t_delta;
  return count_all(g, opt);
}

std::uint64_t temporal_sum(const TriadCounts& c) {
  std::uint64_t s = 0;
  for (auto x : c.temporal_by_class) s += x;
  return s;
}

}  // namespace

TEST_CASE("class table has 26 classes in lexicographic order") {
  const auto& t = TriadClassTable::instance();
  REQUIRE(t.size() == kNumTriadClasses);
  const auto pats = t.canonical_patterns();
  for (std::size_t i = 1; i < pats.size(); ++i) CHECK(pats[i - 1].to_string() < pats[i].to_string());
  for (std::size_t i = 0; i < pats.size(); ++i) {
    CHECK(pats[i].canonical() == pats[i]);
    CHECK(t.class_of(pats[i]) == static_cast<int>(i));
  }
  // Independent derivation by the oracle.
  const auto& ref = oracle::class_patterns();
  REQUIRE(ref.size() == pats.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(ref[i] == pats[i].to_string());
}

TEST_CASE("the all-regions pattern is its own canonical form") {
  const VennPattern full{0x7f};
  CHECK(full.to_string() == "1111111");
  CHECK(full.canonical() == full);
  CHECK(TriadClassTable::instance().class_of(full).has_value());
}

TEST_CASE("class_of is invariant under role permutation") {
  const auto& t = TriadClassTable::instance();
  const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::size_t valid = 0;
  for (unsigned bits = 0; bits < 128; ++bits) {
    const VennPattern p{static_cast<std::uint8_t>(bits)};
    if (t.class_of(p)) ++valid;
    for (const auto& perm : perms) CHECK(t.class_of(p) == t.class_of(p.permuted(perm)));
  }
  CHECK(valid == 86);
}

TEST_CASE("venn_pattern regions") {
  const List a = {1, 2, 3, 7}, b = {2, 3, 4}, c = {3, 5, 7};
  // a-only {1}, b-only {4}, c-only {5}, ab {2}, ac {7}, bc {}, abc {3}
  CHECK(venn_pattern(a, b, c).to_string() == "1111101");
}

TEST_CASE("classify_triple") {
  const List a = {1, 2}, b = {2, 3}, c = {1, 3};
  const auto cls = classify_triple(a, b, c);
  REQUIRE(cls);
  const VennPattern p = TriadClassTable::instance().canonical_patterns()[static_cast<std::size_t>(*cls)];
  CHECK(p.to_string() == "0001110");

  CHECK_FALSE(classify_triple(List{1, 2}, List{3, 4}, List{5, 6}));
  CHECK_FALSE(classify_triple(List{1, 2}, List{2, 3}, List{5, 6}));
  CHECK(classify_triple(List{1, 2}, List{2, 3}, List{3, 4}));

  try {
    classify_triple(List{1, 2, 3}, List{1, 2, 3, 4}, List{1, 2, 3});
    FAIL("expected IdenticalSets");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::identical_sets);
  }
}

TEST_CASE("classify_triple agrees under permutation on random sets") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    std::array<List, 3> s;
    for (auto& x : s) {
      std::set<std::int64_t> v;
      const int n = 1 + static_cast<int>(rng() % 5);
      while (static_cast<int>(v.size()) < n) v.insert(static_cast<std::int64_t>(rng() % 8));
      x.assign(v.begin(), v.end());
    }
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) continue;
    const auto c = classify_triple(s[0], s[1], s[2]);
    CHECK(classify_triple(s[0], s[2], s[1]) == c);
    CHECK(classify_triple(s[1], s[0], s[2]) == c);
    CHECK(classify_triple(s[1], s[2], s[0]) == c);
    CHECK(classify_triple(s[2], s[0], s[1]) == c);
    CHECK(classify_triple(s[2], s[1], s[0]) == c);
  }
}

TEST_CASE("intersect_sorted") {
  CHECK(intersect_sorted(List{1, 2, 3}, List{2, 3, 4}) == List{2, 3});
  CHECK(intersect_sorted(List{1, 3}, List{2, 4}).empty());
  std::mt19937_64 rng(4);
  for (std::size_t n : {10000u, 70000u}) {
    std::set<std::int64_t> x, y;
    while (x.size() < n) x.insert(static_cast<std::int64_t>(rng() % (3 * n)));
    while (y.size() < n) y.insert(static_cast<std::int64_t>(rng() % (3 * n)));
    const List a(x.begin(), x.end()), b(y.begin(), y.end());
    List want;
    for (auto v : a) {
      if (y.contains(v)) want.push_back(v);
    }
    CHECK(intersect_sorted(a, b) == want);
  }
}

TEST_CASE("hyperedge triad examples") {
  const std::vector<EdgeSpec> three = {{1, {1, 2}, 0}, {2, {2, 3}, 1}, {3, {3, 1}, 2}};
  CHECK(counts_of(three).hyperedge_total() == 1);

  std::vector<EdgeSpec> two = three;
  for (const auto& e : three) {
    EdgeSpec f = e;
    f.id += 10;
    for (auto& v : f.vertices) v += 10;
    two.push_back(f);
  }
  const auto c = counts_of(two);
  CHECK(c.hyperedge_total() == 2);
  CHECK(std::count(c.hyperedge_by_class.begin(), c.hyperedge_by_class.end(), 2) == 1);

  CHECK(counts_of({}).hyperedge_total() == 0);
}

TEST_CASE("open triples are found regardless of ID order") {
  // 1 and 2 are disjoint; 3 meets both.
  const std::vector<EdgeSpec> edges = {{1, {1, 2}, 0}, {2, {5, 6}, 1}, {3, {2, 5}, 2}};
  CHECK(counts_of(edges).hyperedge_total() == 1);
}

TEST_CASE("identical edge sets are not classified") {
  const std::vector<EdgeSpec> edges = {{1, {1, 2}, 0}, {2, {1, 2}, 1}, {3, {2, 3}, 2}};
  const auto c = counts_of(edges);
  CHECK(c.hyperedge_total() == 0);
  CHECK(c.temporal_total == 0);
  CHECK(c.vertex_by_type[1] == 1);
}

TEST_CASE("vertex triad examples") {
  const std::vector<EdgeSpec> single = {{1, {1, 2, 3, 4, 5}, 0}};
  CHECK(counts_of(single).vertex_by_type == VertexTypeCounts{10, 0, 0});

  const std::vector<EdgeSpec> wedge = {{1, {1, 2}, 0}, {2, {2, 3}, 1}};
  CHECK(counts_of(wedge).vertex_by_type == VertexTypeCounts{0, 1, 0});

  const std::vector<EdgeSpec> cycle = {{1, {1, 2}, 0}, {2, {2, 3}, 1}, {3, {3, 1}, 2}};
  CHECK(counts_of(cycle).vertex_by_type == VertexTypeCounts{0, 0, 1});
}

TEST_CASE("temporal window") {
  const std::vector<EdgeSpec> edges = {{1, {1, 2}, 0}, {2, {2, 3}, 5}, {3, {3, 1}, 20}};
  CHECK(counts_of(edges, 10).temporal_total == 0);
  CHECK(counts_of(edges, 20).temporal_total == 1);
  CHECK(counts_of(edges, kUnboundedWindow).temporal_total == 1);
  CHECK(counts_of(edges, 0).temporal_total == 0);

  const std::vector<EdgeSpec> untimed = {{1, {1, 2}, 0}, {2, {2, 3}, std::nullopt}};
  const auto g = DynHypergraph::init(untimed);
  try {
    count_temporal_triads(g, TemporalParams{5});
    FAIL("expected MissingTimestamps");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_timestamps);
  }
  CHECK(count_temporal_triads(g, TemporalParams{0}).total == 0);
}

TEST_CASE("TemporalParams::admits handles wide ranges") {
  const TemporalParams p{10};
  CHECK(p.admits(-5, 5));
  CHECK_FALSE(p.admits(-5, 6));
  CHECK(TemporalParams{}.admits(std::numeric_limits<Timestamp>::min(), std::numeric_limits<Timestamp>::max()));
}

TEST_CASE("static counts match the oracle on random instances") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n_edges = 1 + rng() % 50;
    const std::size_t n_vertices = 8 + rng() % 30;
    auto edges = testutil::random_edges(rng, n_edges, n_vertices, 1 + rng() % 8);
    std::shuffle(edges.begin(), edges.end(), rng);
    for (auto& e : edges) e.time = static_cast<Timestamp>(rng() % 20);
    const auto g = DynHypergraph::init(edges);
    const auto r = oracle::from_edges(edges);
    for (Timestamp td : {Timestamp{2}, Timestamp{5}, kUnboundedWindow}) {
      CountOptions opt;
      opt.temporal_params.t_delta = td;
      const TriadCounts got = count_all(g, opt);
      const TriadCounts want = oracle::ref_count_all(r, TemporalParams{td});
      REQUIRE(got == want);
      CHECK(got.temporal_total == temporal_sum(got));
      CHECK(got.temporal_total <= got.hyperedge_total());
    }
  }
}

TEST_CASE("scope monotonicity") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto edges = testutil::random_edges(rng, 40, 25, 6);
    const auto g = DynHypergraph::init(edges);
    std::vector<EdgeId> ids = g.edge_ids();
    std::shuffle(ids.begin(), ids.end(), rng);
    const std::size_t k1 = rng() % ids.size();
    const std::size_t k2 = k1 + rng() % (ids.size() - k1 + 1);
    const auto small = EdgeScope::of(g, std::span(ids).first(k1));
    const auto large = EdgeScope::of(g, std::span(ids).first(k2));
    const CountOptions opt;
    const auto a = count_all(g, opt, &small);
    const auto b = count_all(g, opt, &large);
    const auto all = count_all(g, opt);
    for (std::size_t c = 0; c < kNumTriadClasses; ++c) {
      CHECK(a.hyperedge_by_class[c] <= b.hyperedge_by_class[c]);
      CHECK(b.hyperedge_by_class[c] <= all.hyperedge_by_class[c]);
    }
    // Type 1 and connected-triple totals only grow with the scope.
    CHECK(a.vertex_by_type[0] <= b.vertex_by_type[0]);
    CHECK(a.vertex_total() <= b.vertex_total());
    CHECK(a.temporal_total <= b.temporal_total);

    // A scoped count equals the oracle on the induced sub-hypergraph.
    std::vector<EdgeSpec> sub;
    for (EdgeId h : std::span(ids).first(k2)) sub.push_back({h, g.incident_vertices(h), g.time_of(h)});
    CHECK(b == oracle::ref_count_all(oracle::from_edges(sub), TemporalParams{}));
  }
}

TEST_CASE("EdgeScope rejects dead edges") {
  const std::vector<EdgeSpec> edges = {{1, {1, 2}, 0}};
  const auto g = DynHypergraph::init(edges);
  CHECK_THROWS_AS(EdgeScope::of(g, std::vector<EdgeId>{2}), Error);
}
