#pragma once

#include <cstddef>
#include <vector>

#include "tilecast/geometry.hpp"

namespace tilecast {

/// One viewing direction per user; index in the vector is user k - 1.
using ViewState = std::vector<ViewingDirection>;

/// A set of tiles multicast together with the exact set of users that need
/// every tile in it. Receiver ids are 1-based user indices, ascending.
struct TileGroup {
  TileSet tiles;
  std::vector<int> receivers;
};

/// Disjoint tile groups covering the union of all users' tile sets. Groups
/// are ordered canonically by receiver-set bitmask (user k = bit k - 1),
/// ascending, so identical states always produce identical partitions.
struct MulticastPartition {
  std::vector<TileGroup> groups;
};

/// Groups the union of the users' tile sets into equivalence classes of the
/// map tile -> {users that need it}: the finest partition in which no tile
/// is ever transmitted twice.
MulticastPartition build_partition(const GridConfig& cfg, const ViewState& x);

/// Same, from per-user tile sets already computed for this grid.
MulticastPartition build_partition(const GridConfig& cfg,
                                   const std::vector<TileSet>& per_user_tiles);

/// Number of tiles transmitted in total, i.e. the sum of group sizes.
std::size_t total_tiles(const MulticastPartition& p);

}  // namespace tilecast
