#pragma once

#include <vector>

namespace tilecast {

/// Layout of the equirectangular video sphere: the discrete viewing-direction
/// grid and the tile grid. All angles are degrees; yaw lives on [0, 360) with
/// wraparound, pitch on [0, 180] from the top pole down (no wraparound).
struct GridConfig {
  int n_h = 36;          ///< horizontal viewing directions
  int n_v = 2;           ///< vertical viewing directions
  int v_h = 30;          ///< tile columns
  int v_v = 15;          ///< tile rows
  double fov_h = 100.0;  ///< FoV width in degrees, (0, 360]
  double fov_v = 100.0;  ///< FoV height in degrees, (0, 180]
  double margin = 15.0;  ///< extra degrees on each of the four FoV sides

  int direction_count() const { return n_h * n_v; }
  int tile_count() const { return v_h * v_v; }
  double tile_width() const { return 360.0 / v_h; }
  double tile_height() const { return 180.0 / v_v; }
};

/// Throws std::invalid_argument if the grid violates its invariants.
void validate(const GridConfig& cfg);

/// One of the n_h x n_v gaze centers a user can select. 1-based indices.
struct ViewingDirection {
  int row = 1;  ///< vertical index, 1..n_v
  int col = 1;  ///< horizontal index, 1..n_h

  friend bool operator==(const ViewingDirection&, const ViewingDirection&) = default;
};

/// One tile of the v_v x v_h split. 1-based indices; ordering is row-major.
struct TileIndex {
  int row = 1;
  int col = 1;

  friend bool operator==(const TileIndex&, const TileIndex&) = default;
  friend auto operator<=>(const TileIndex&, const TileIndex&) = default;
};

/// Duplicate-free, row-major sorted set of tiles.
using TileSet = std::vector<TileIndex>;

struct AngleCenter {
  double yaw_deg;
  double pitch_deg;
};

/// Directions are ranked column-major: rank = (col - 1) * n_v + row, 1-based.
/// The rank order is what the viewport popularity distribution is defined on.
int direction_rank(const GridConfig& cfg, const ViewingDirection& d);
ViewingDirection direction_from_rank(const GridConfig& cfg, int rank);

/// Center of a direction's FoV: cell-center placement on the uniform grid,
/// yaw = (col - 0.5) * 360 / n_h, pitch = (row - 0.5) * 180 / n_v.
AngleCenter direction_center(const GridConfig& cfg, const ViewingDirection& d);

/// Every tile whose rectangle intersects, with positive area, the FoV
/// expanded by `margin` on all four sides and centered at the direction.
/// Horizontal intersection wraps modulo 360; the vertical extent is clipped
/// to [0, 180]. Tiles that only touch the expanded FoV boundary are excluded.
/// The result is non-empty and sorted row-major.
TileSet tiles_for_direction(const GridConfig& cfg, const ViewingDirection& d);

/// 0-based row-major position of a tile on the grid.
int flat_tile_index(const GridConfig& cfg, const TileIndex& t);

}  // namespace tilecast
