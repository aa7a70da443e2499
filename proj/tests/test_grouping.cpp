#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tilecast/distribution.hpp"
#include "tilecast/grouping.hpp"

using namespace tilecast;

namespace {

const GridConfig kWide{36, 2, 30, 15, 100.0, 100.0, 15.0};

ViewingDirection random_direction(const GridConfig& cfg, Rng& rng) {
  return direction_from_rank(cfg, 1 + static_cast<int>(rng.uniform01() * cfg.direction_count()));
}

}  // namespace

TEST_CASE("single user yields one group holding that user's tiles") {
  const MulticastPartition p = build_partition(kWide, {{1, 1}});
  REQUIRE(p.groups.size() == 1);
  CHECK(p.groups[0].receivers == std::vector<int>{1});
  CHECK(p.groups[0].tiles == tiles_for_direction(kWide, {1, 1}));
}

TEST_CASE("identical directions collapse into one shared group") {
  const MulticastPartition p = build_partition(kWide, {{1, 5}, {1, 5}});
  REQUIRE(p.groups.size() == 1);
  CHECK(p.groups[0].receivers == std::vector<int>{1, 2});
  CHECK(p.groups[0].tiles == tiles_for_direction(kWide, {1, 5}));
}

TEST_CASE("two partially overlapping users split into three groups") {
  const ViewState x{{1, 1}, {1, 4}};
  const MulticastPartition p = build_partition(kWide, x);
  REQUIRE(p.groups.size() == 3);

  // canonical order: {1} before {2} before {1,2}
  CHECK(p.groups[0].receivers == std::vector<int>{1});
  CHECK(p.groups[1].receivers == std::vector<int>{2});
  CHECK(p.groups[2].receivers == std::vector<int>{1, 2});

  // counts must match the per-tile membership scan
  const auto oracle = testing::membership_partition(kWide, x);
  REQUIRE(oracle.size() == 3);
  std::map<std::vector<int>, std::size_t> oracle_counts;
  for (const auto& g : oracle) oracle_counts[g.receivers] = g.tiles.size();
  for (const TileGroup& g : p.groups) CHECK(g.tiles.size() == oracle_counts.at(g.receivers));
}

TEST_CASE("random states form true partitions of the union") {
  Rng rng(29);
  for (int rep = 0; rep < 40; ++rep) {
    const int users = 1 + static_cast<int>(rng.uniform01() * 5);
    ViewState x;
    for (int k = 0; k < users; ++k) x.push_back(random_direction(kWide, rng));
    const MulticastPartition p = build_partition(kWide, x);
    CHECK_NOTHROW(testing::check_partition(kWide, x, p));

    // receiver sets are unique and canonically ordered (largest user last)
    std::set<std::vector<int>> seen;
    for (const TileGroup& g : p.groups) CHECK(seen.insert(g.receivers).second);
  }
}

TEST_CASE("permuting users relabels receivers but keeps group shapes") {
  const ViewState x{{1, 3}, {2, 9}, {1, 17}};
  const ViewState swapped{{1, 17}, {1, 3}, {2, 9}};  // permutation 1->2, 2->3, 3->1
  const MulticastPartition a = build_partition(kWide, x);
  const MulticastPartition b = build_partition(kWide, swapped);

  auto shape = [](const MulticastPartition& p, const std::vector<int>& relabel) {
    std::set<std::pair<std::size_t, std::set<int>>> s;
    for (const TileGroup& g : p.groups) {
      std::set<int> recv;
      for (int k : g.receivers) recv.insert(relabel[k - 1]);
      s.insert({g.tiles.size(), recv});
    }
    return s;
  };
  CHECK(shape(a, {2, 3, 1}) == shape(b, {1, 2, 3}));
}

TEST_CASE("total tiles counts the union exactly once") {
  CHECK(total_tiles(build_partition(kWide, {{1, 1}})) == tiles_for_direction(kWide, {1, 1}).size());
  CHECK(total_tiles(build_partition(kWide, {{1, 1}, {1, 1}})) ==
        tiles_for_direction(kWide, {1, 1}).size());

  // far-apart users with disjoint footprints add up exactly
  const std::size_t one = tiles_for_direction(kWide, {1, 1}).size();
  const std::size_t other = tiles_for_direction(kWide, {2, 19}).size();
  const MulticastPartition p = build_partition(kWide, {{1, 1}, {2, 19}});
  REQUIRE(p.groups.size() == 2);
  CHECK(total_tiles(p) == one + other);
}

TEST_CASE("union never exceeds the per-user sum") {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    ViewState x;
    const int users = 1 + static_cast<int>(rng.uniform01() * 4);
    std::size_t per_user_sum = 0;
    for (int k = 0; k < users; ++k) {
      x.push_back(random_direction(kWide, rng));
      per_user_sum += tiles_for_direction(kWide, x.back()).size();
    }
    const MulticastPartition p = build_partition(kWide, x);
    CHECK(total_tiles(p) <= per_user_sum);

    bool any_overlap = false;
    for (const TileGroup& g : p.groups) any_overlap |= g.receivers.size() > 1;
    if (!any_overlap) CHECK(total_tiles(p) == per_user_sum);
    if (total_tiles(p) == per_user_sum) CHECK(!any_overlap);
  }
}

TEST_CASE("empty view state is rejected") {
  CHECK_THROWS_AS(build_partition(kWide, ViewState{}), std::invalid_argument);
}

TEST_CASE("many users still group correctly across word boundaries") {
  // 70 users exercises the second receiver-mask word
  ViewState x;
  for (int k = 0; k < 70; ++k) x.push_back(direction_from_rank(kWide, (k % 3) * 25 + 1));
  const MulticastPartition p = build_partition(kWide, x);
  CHECK_NOTHROW(testing::check_partition(kWide, x, p));
  for (const TileGroup& g : p.groups) CHECK(g.receivers.size() >= 23);
}
