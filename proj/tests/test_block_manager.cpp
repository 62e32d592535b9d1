#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "hgdyn/block_manager.hpp"

using namespace hgdyn;

namespace {

std::vector<ManagerEntry> entries(std::int64_t lo, std::int64_t hi) {
  std::vector<ManagerEntry> out;
  for (std::int64_t id = lo; id <= hi; ++id) out.push_back({id, static_cast<ArenaIndex>(id) * 32});
  return out;
}

// In-order walk over the implicit layout, independent of heap_index_to_rank.
void in_order(const ManagerTree& t, std::size_t k, std::vector<const ManagerNode*>& out) {
  if (k >= t.nodes().size()) return;
  in_order(t, 2 * k, out);
  out.push_back(&t.nodes()[k]);
  in_order(t, 2 * k + 1, out);
}

std::vector<const ManagerNode*> in_order(const ManagerTree& t) {
  std::vector<const ManagerNode*> out;
  in_order(t, 1, out);
  return out;
}

std::uint32_t free_in_subtree(const ManagerTree& t, std::size_t k) {
  if (k >= t.nodes().size()) return 0;
  return (t.nodes()[k].is_free ? 1u : 0u) + free_in_subtree(t, 2 * k) + free_in_subtree(t, 2 * k + 1);
}

void check_invariants(const ManagerTree& t) {
  const auto order = in_order(t);
  std::int64_t prev = -1;
  bool seen_pad = false;
  std::vector<std::int64_t> free_ids;
  for (const ManagerNode* n : order) {
    if (n->is_pad()) {
      seen_pad = true;
      CHECK_FALSE(n->is_free);
      continue;
    }
    CHECK_FALSE(seen_pad);  // pads are the in-order suffix
    CHECK(n->edge_id > prev);
    prev = n->edge_id;
    if (n->is_free) free_ids.push_back(n->edge_id);
  }
  for (std::size_t k = 1; k < t.nodes().size(); ++k) {
    REQUIRE(t.nodes()[k].avail == free_in_subtree(t, k));
  }
  CHECK(t.root_avail() == free_ids.size());
  for (std::size_t r = 1; r <= free_ids.size(); ++r) {
    CHECK(t.node(t.find_kth_available(r)).edge_id == free_ids[r - 1]);
  }
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("heap_index_to_rank examples") {
  CHECK(heap_index_to_rank(1, 3) == 4);
  CHECK(heap_index_to_rank(2, 3) == 2);
  CHECK(heap_index_to_rank(3, 3) == 6);
  CHECK(heap_index_to_rank(7, 3) == 7);
  CHECK(heap_index_to_rank(1, 1) == 1);
}

TEST_CASE("heap_index_to_rank is a bijection for small heights") {
  for (unsigned h = 1; h <= 12; ++h) {
    const std::uint64_t n = (std::uint64_t{1} << h) - 1;
    std::vector<char> hit(n + 1, 0);
    for (std::uint64_t k = 1; k <= n; ++k) {
      const auto r = heap_index_to_rank(k, h);
      REQUIRE(r >= 1);
      REQUIRE(r <= n);
      REQUIRE_FALSE(hit[r]);
      hit[r] = 1;
    }
  }
}

TEST_CASE("build places the median at the root") {
  const auto t = ManagerTree::build(entries(1, 7));
  CHECK(t.nodes()[1].edge_id == 4);
  CHECK(t.height() == 3);
  CHECK(t.slot_count() == 7);
  check_invariants(t);

  const auto one = ManagerTree::build(entries(5, 5));
  CHECK(one.nodes()[1].edge_id == 5);
  CHECK(one.slot_count() == 1);

  const auto five = ManagerTree::build(entries(1, 5));
  CHECK(five.slot_count() == 7);
  CHECK(five.live_entries() == entries(1, 5));
  check_invariants(five);

  const auto empty = ManagerTree::build({});
  CHECK(empty.live_entries().empty());
  CHECK_FALSE(empty.find(1));
  CHECK(empty.root_avail() == 0);
}

TEST_CASE("build rejects unsorted input") {
  std::vector<ManagerEntry> bad = {{2, 0}, {1, 32}};
  CHECK(code_of([&] { ManagerTree::build(bad); }) == Errc::invalid_argument);
}

TEST_CASE("search") {
  const auto t = ManagerTree::build(entries(1, 7));
  CHECK(t.search(4).index == 1);
  CHECK(code_of([&] { t.search(9); }) == Errc::not_found);
  CHECK_FALSE(t.find(kPadKey));

  std::vector<std::int64_t> ids = {1, 2, 3, 4, 5, 6, 7};
  const auto handles = t.search_batch(ids);
  std::set<std::size_t> distinct;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    CHECK(t.node(handles[i]).edge_id == ids[i]);
    CHECK(t.node(handles[i]).start == static_cast<ArenaIndex>(ids[i]) * 32);
    distinct.insert(handles[i].index);
  }
  CHECK(distinct.size() == 7);
}

TEST_CASE("mark_deleted updates avail on the ancestor path") {
  auto t = ManagerTree::build(entries(1, 7));
  t.mark_deleted(std::vector<std::int64_t>{1, 3});
  CHECK(t.node(t.search(2)).avail == 2);
  CHECK(t.root_avail() == 2);
  check_invariants(t);

  auto r = ManagerTree::build(entries(1, 7));
  r.mark_deleted(std::vector<std::int64_t>{4});
  CHECK(r.root_avail() == 1);
  CHECK(r.nodes()[2].avail == 0);
  CHECK(r.nodes()[3].avail == 0);

  auto f = ManagerTree::build(entries(1, 15));
  f.mark_deleted(std::vector<std::int64_t>{1, 5, 6, 10});
  CHECK(f.root_avail() == 4);
  check_invariants(f);
}

TEST_CASE("mark_deleted errors") {
  auto t = ManagerTree::build(entries(1, 7));
  CHECK(code_of([&] { t.mark_deleted(std::vector<std::int64_t>{8}); }) == Errc::not_found);
  t.mark_deleted(std::vector<std::int64_t>{2});
  CHECK(code_of([&] { t.mark_deleted(std::vector<std::int64_t>{2}); }) == Errc::already_free);
  CHECK(code_of([&] { t.mark_deleted(std::vector<std::int64_t>{3, 3}); }) == Errc::already_free);
  CHECK(t.root_avail() == 1);
}

TEST_CASE("find_kth_available") {
  auto t = ManagerTree::build(entries(1, 15));
  t.mark_deleted(std::vector<std::int64_t>{9});
  CHECK(t.node(t.find_kth_available(1)).edge_id == 9);

  t.mark_deleted(std::vector<std::int64_t>{1, 5, 6, 10});
  CHECK(t.node(t.find_kth_available(2)).edge_id == 5);
  CHECK(t.node(t.find_kth_available(t.root_avail())).edge_id == 10);
  CHECK(code_of([&] { t.find_kth_available(0); }) == Errc::rank_out_of_range);
  CHECK(code_of([&] { t.find_kth_available(6); }) == Errc::rank_out_of_range);
}

TEST_CASE("reassign") {
  auto t = ManagerTree::build(entries(1, 7));
  t.mark_deleted(std::vector<std::int64_t>{6});
  const ManagerEntry e = t.reassign(t.find_kth_available(1));
  CHECK(e == ManagerEntry{6, 6 * 32});
  CHECK(t.root_avail() == 0);
  CHECK(code_of([&] { t.reassign(t.search(6)); }) == Errc::not_free);

  t.mark_deleted(std::vector<std::int64_t>{2, 5});
  const ManagerEntry a = t.reassign(t.find_kth_available(1));
  const ManagerEntry b = t.reassign(t.find_kth_available(1));
  CHECK(a.id == 2);
  CHECK(b.id == 5);
  CHECK(code_of([&] { t.find_kth_available(1); }) == Errc::rank_out_of_range);
  check_invariants(t);
}

TEST_CASE("claim_available takes free nodes in rank order") {
  auto t = ManagerTree::build(entries(1, 15));
  t.mark_deleted(std::vector<std::int64_t>{1, 5, 6, 10});
  const auto claimed = t.claim_available(3);
  REQUIRE(claimed.size() == 3);
  CHECK(claimed[0].id == 1);
  CHECK(claimed[1].id == 5);
  CHECK(claimed[2].id == 6);
  CHECK(t.root_avail() == 1);
  CHECK(code_of([&] { t.claim_available(2); }) == Errc::rank_out_of_range);
  check_invariants(t);
}

TEST_CASE("mark_deleted then reassign of the same count restores root avail") {
  auto t = ManagerTree::build(entries(1, 31));
  t.mark_deleted(std::vector<std::int64_t>{3, 17});
  const auto before = t.root_avail();
  t.mark_deleted(std::vector<std::int64_t>{4, 8, 30});
  t.claim_available(3);
  CHECK(t.root_avail() == before);
}

TEST_CASE("rebuild") {
  const auto t = ManagerTree::build(entries(1, 7));
  const auto same = t.rebuild({});
  CHECK(same.live_entries() == t.live_entries());

  const auto extra = entries(8, 10);
  const auto ten = t.rebuild(extra);
  CHECK(ten.slot_count() == 15);
  CHECK(ten.live_entries() == entries(1, 10));
  check_invariants(ten);

  auto freed = ManagerTree::build(entries(1, 9));
  freed.mark_deleted(std::vector<std::int64_t>{3, 4});
  const auto seven = freed.rebuild(entries(10, 11));
  CHECK(seven.live_entries().size() == 9);
  CHECK(seven.root_avail() == 0);
  CHECK_FALSE(seven.find(3));

  auto five_free = ManagerTree::build(entries(1, 7));
  five_free.mark_deleted(std::vector<std::int64_t>{1, 2});
  CHECK(five_free.rebuild(entries(8, 9)).live_entries().size() == 7);

  CHECK(code_of([&] { t.rebuild(entries(7, 8)); }) == Errc::duplicate);
}

TEST_CASE("randomized mark/reassign/rebuild sequence keeps every invariant") {
  std::mt19937_64 rng(2024);
  std::int64_t next_id = 1;
  std::vector<ManagerEntry> init;
  for (int i = 0; i < 40; ++i, next_id += 1 + static_cast<std::int64_t>(rng() % 3)) {
    init.push_back({next_id, static_cast<ArenaIndex>(i) * 32});
  }
  auto t = ManagerTree::build(init);
  std::set<std::int64_t> live, freed;
  for (const auto& e : init) live.insert(e.id);

  for (int step = 0; step < 1200; ++step) {
    const auto op = rng() % 10;
    if (op < 5 && !live.empty()) {
      std::vector<std::int64_t> pick(live.begin(), live.end());
      std::shuffle(pick.begin(), pick.end(), rng);
      pick.resize(1 + rng() % std::min<std::size_t>(pick.size(), 5));
      t.mark_deleted(pick);
      for (auto id : pick) {
        live.erase(id);
        freed.insert(id);
      }
    } else if (op < 9 && !freed.empty()) {
      const std::size_t k = 1 + rng() % freed.size();
      const ManagerEntry e = t.reassign(t.find_kth_available(k));
      auto it = freed.begin();
      std::advance(it, k - 1);
      REQUIRE(e.id == *it);
      freed.erase(it);
      live.insert(e.id);
    } else {
      std::vector<ManagerEntry> extra;
      for (int i = 0; i < static_cast<int>(rng() % 4); ++i) {
        extra.push_back({next_id, static_cast<ArenaIndex>(next_id) * 32});
        live.insert(next_id);
        next_id += 1 + static_cast<std::int64_t>(rng() % 3);
      }
      t = t.rebuild(extra);
      freed.clear();
    }
    check_invariants(t);
    std::vector<std::int64_t> got;
    for (const auto& e : t.live_entries()) got.push_back(e.id);
    REQUIRE(got == std::vector<std::int64_t>(live.begin(), live.end()));
  }
}
