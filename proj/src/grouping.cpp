#include "tilecast/grouping.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>

namespace tilecast {

namespace {

using UserMask = std::vector<std::uint64_t>;

// numeric order of the receiver bitmask, most significant word first
struct MaskLess {
  bool operator()(const UserMask& a, const UserMask& b) const {
    for (std::size_t w = a.size(); w-- > 0;)
      if (a[w] != b[w]) return a[w] < b[w];
    return false;
  }
};

}  // namespace

MulticastPartition build_partition(const GridConfig& cfg,
                                   const std::vector<TileSet>& per_user_tiles) {
  validate(cfg);
  if (per_user_tiles.empty())
    throw std::invalid_argument("build_partition: need at least one user");

  const std::size_t users = per_user_tiles.size();
  const std::size_t words = (users + 63) / 64;
  const int n_tiles = cfg.tile_count();

  std::vector<UserMask> tile_users(n_tiles, UserMask(words, 0));
  for (std::size_t k = 0; k < users; ++k)
    for (const TileIndex& t : per_user_tiles[k])
      tile_users[flat_tile_index(cfg, t)][k >> 6] |= std::uint64_t{1} << (k & 63);

  // equivalence classes of tile -> requesting-user set; tiles kept in
  // ascending flat order, which is row-major
  std::map<UserMask, std::vector<int>, MaskLess> classes;
  for (int idx = 0; idx < n_tiles; ++idx) {
    bool any = false;
    for (std::uint64_t w : tile_users[idx]) any |= (w != 0);
    if (any) classes[tile_users[idx]].push_back(idx);
  }

  MulticastPartition part;
  part.groups.reserve(classes.size());
  for (const auto& [mask, flat] : classes) {
    TileGroup g;
    for (std::size_t k = 0; k < users; ++k)
      if (mask[k >> 6] & (std::uint64_t{1} << (k & 63))) g.receivers.push_back(static_cast<int>(k) + 1);
    g.tiles.reserve(flat.size());
    for (int idx : flat) g.tiles.push_back({idx / cfg.v_h + 1, idx % cfg.v_h + 1});
    part.groups.push_back(std::move(g));
  }
  return part;
}

MulticastPartition build_partition(const GridConfig& cfg, const ViewState& x) {
  if (x.empty()) throw std::invalid_argument("build_partition: need at least one user");
  std::vector<TileSet> phis;
  phis.reserve(x.size());
  for (const ViewingDirection& d : x) phis.push_back(tiles_for_direction(cfg, d));
  return build_partition(cfg, phis);
}

std::size_t total_tiles(const MulticastPartition& p) {
  std::size_t n = 0;
  for (const TileGroup& g : p.groups) n += g.tiles.size();
  return n;
}

}  // namespace tilecast
