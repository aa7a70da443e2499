#include "tilecast/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tilecast {

void validate(const GridConfig& cfg) {
  if (cfg.n_h < 1 || cfg.n_v < 1)
    throw std::invalid_argument("GridConfig: direction counts must be >= 1");
  if (cfg.v_h < 1 || cfg.v_v < 1)
    throw std::invalid_argument("GridConfig: tile counts must be >= 1");
  if (!(cfg.fov_h > 0.0) || !(cfg.fov_h <= 360.0))
    throw std::invalid_argument("GridConfig: fov_h must be in (0, 360]");
  if (!(cfg.fov_v > 0.0) || !(cfg.fov_v <= 180.0))
    throw std::invalid_argument("GridConfig: fov_v must be in (0, 180]");
  if (!(cfg.margin >= 0.0))
    throw std::invalid_argument("GridConfig: margin must be >= 0");
}

namespace {

void check_direction(const GridConfig& cfg, const ViewingDirection& d) {
  if (d.row < 1 || d.row > cfg.n_v || d.col < 1 || d.col > cfg.n_h)
    throw std::invalid_argument("ViewingDirection: index out of range for grid");
}

// positive-length overlap of [lo1, hi1] and [lo2, hi2]
bool overlaps(double lo1, double hi1, double lo2, double hi2) {
  return std::min(hi1, hi2) > std::max(lo1, lo2);
}

}  // namespace

int direction_rank(const GridConfig& cfg, const ViewingDirection& d) {
  validate(cfg);
  check_direction(cfg, d);
  return (d.col - 1) * cfg.n_v + d.row;
}

ViewingDirection direction_from_rank(const GridConfig& cfg, int rank) {
  validate(cfg);
  if (rank < 1 || rank > cfg.direction_count())
    throw std::invalid_argument("direction rank out of range");
  return {(rank - 1) % cfg.n_v + 1, (rank - 1) / cfg.n_v + 1};
}

AngleCenter direction_center(const GridConfig& cfg, const ViewingDirection& d) {
  validate(cfg);
  check_direction(cfg, d);
  return {(d.col - 0.5) * 360.0 / cfg.n_h, (d.row - 0.5) * 180.0 / cfg.n_v};
}

TileSet tiles_for_direction(const GridConfig& cfg, const ViewingDirection& d) {
  const AngleCenter c = direction_center(cfg, d);  // validates

  const double width = std::min(cfg.fov_h + 2.0 * cfg.margin, 360.0);
  const double height = cfg.fov_v + 2.0 * cfg.margin;

  double lo_x = std::fmod(c.yaw_deg - 0.5 * width, 360.0);
  if (lo_x < 0.0) lo_x += 360.0;
  const double hi_x = lo_x + width;

  // a window at least 180 tall sees pole to pole wherever it is centered;
  // anything shorter is cut at the poles, never wrapped
  const double lo_y = height >= 180.0 ? 0.0 : std::max(0.0, c.pitch_deg - 0.5 * height);
  const double hi_y = height >= 180.0 ? 180.0 : std::min(180.0, c.pitch_deg + 0.5 * height);

  const double tw = cfg.tile_width();
  const double th = cfg.tile_height();

  std::vector<char> col_hit(cfg.v_h);
  for (int col = 1; col <= cfg.v_h; ++col) {
    const double x0 = (col - 1) * tw;
    const double x1 = col * tw;
    // the FoV arc may cross 0 degrees; test the tile in both unwrapped copies
    col_hit[col - 1] =
        overlaps(lo_x, hi_x, x0, x1) || overlaps(lo_x, hi_x, x0 + 360.0, x1 + 360.0);
  }
  std::vector<char> row_hit(cfg.v_v);
  for (int row = 1; row <= cfg.v_v; ++row) {
    const double y0 = (row - 1) * th;
    const double y1 = row * th;
    row_hit[row - 1] = overlaps(lo_y, hi_y, y0, y1);
  }

  TileSet out;
  for (int row = 1; row <= cfg.v_v; ++row) {
    if (!row_hit[row - 1]) continue;
    for (int col = 1; col <= cfg.v_h; ++col)
      if (col_hit[col - 1]) out.push_back({row, col});
  }
  return out;
}

int flat_tile_index(const GridConfig& cfg, const TileIndex& t) {
  if (t.row < 1 || t.row > cfg.v_v || t.col < 1 || t.col > cfg.v_h)
    throw std::invalid_argument("TileIndex: index out of range for grid");
  return (t.row - 1) * cfg.v_h + (t.col - 1);
}

}  // namespace tilecast
