#include "tilecast/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tilecast {

namespace {

constexpr double kLn2 = 0.6931471805599453;

}  // namespace

MulticastPartition unicast_partition(const std::vector<TileSet>& per_user_tiles) {
  if (per_user_tiles.empty())
    throw std::invalid_argument("unicast_partition: need at least one user");
  MulticastPartition part;
  part.groups.reserve(per_user_tiles.size());
  for (std::size_t k = 0; k < per_user_tiles.size(); ++k) {
    TileGroup g;
    g.tiles = per_user_tiles[k];
    g.receivers = {static_cast<int>(k) + 1};
    part.groups.push_back(std::move(g));
  }
  return part;
}

MulticastPartition unicast_partition(const GridConfig& cfg, const ViewState& x) {
  validate(cfg);
  if (x.empty()) throw std::invalid_argument("unicast_partition: need at least one user");
  std::vector<TileSet> phis;
  phis.reserve(x.size());
  for (const ViewingDirection& d : x) phis.push_back(tiles_for_direction(cfg, d));
  return unicast_partition(phis);
}

Allocation unicast_energy(const ScenarioConfig& cfg, const GridConfig& grid, const ViewState& x,
                          const ChannelState& h, const Tolerance& tol) {
  return solve_state(cfg, unicast_partition(grid, x), h, tol);
}

Allocation equal_time_energy(const ScenarioConfig& cfg, const MulticastPartition& part,
                             const ChannelState& h) {
  validate(cfg);
  const std::vector<double> h_min = group_min_channel(part, h);
  const double total = static_cast<double>(total_tiles(part));

  Allocation a;
  const std::size_t n = part.groups.size();
  a.times_s.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    a.times_s[i] = cfg.frame_s * static_cast<double>(part.groups[i].tiles.size()) / total;
  scale_times_to_frame(a.times_s, cfg.frame_s);

  a.powers_w.resize(n);
  a.energy_j = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a.powers_w[i] = power_from_time(cfg, part.groups[i].tiles.size(), h_min[i], a.times_s[i]);
    a.energy_j += a.times_s[i] * a.powers_w[i];
  }
  return a;
}

double baseline1_quality(const ScenarioConfig& link, double e_limit_j, double h_min_global,
                         const GridConfig& grid, int users) {
  validate_link(link);
  validate(grid);
  if (users < 1) throw std::invalid_argument("baseline1_quality: users must be >= 1");
  // the per-user tile counts are maximized independently, so the worst
  // total is K times the largest single-direction set
  std::size_t max_single = 0;
  for (int r = 1; r <= grid.direction_count(); ++r)
    max_single = std::max(max_single, tiles_for_direction(grid, direction_from_rank(grid, r)).size());
  const long long worst_total = static_cast<long long>(max_single) * users;
  return link.bandwidth_hz * std::log1p(e_limit_j * h_min_global / (link.noise_w * link.frame_s)) /
         (kLn2 * static_cast<double>(worst_total));
}

double baseline2_quality(const ScenarioConfig& link, double e_limit_j, double h_min_global,
                         long long max_tiles) {
  validate_link(link);
  if (!(e_limit_j > 0.0) || !(h_min_global > 0.0) || max_tiles < 1)
    throw std::invalid_argument("baseline2_quality: invalid budget, channel or tile count");
  // with every group at the same minimum channel, equal time per tile makes
  // the frame energy depend on the state only through its total tile count;
  // inverting that at the worst state gives the largest feasible rate
  return link.bandwidth_hz * std::log1p(e_limit_j * h_min_global / (link.noise_w * link.frame_s)) /
         (kLn2 * static_cast<double>(max_tiles));
}

BaselineQualities baseline_qualities(const GridConfig& grid, const ScenarioConfig& link, int users,
                                     double e_limit_j, double h_min_global,
                                     long long search_budget) {
  const MaxTilesResult mt = max_total_tiles(grid, users, search_budget);
  return {baseline1_quality(link, e_limit_j, h_min_global, grid, users),
          baseline2_quality(link, e_limit_j, h_min_global, mt.count)};
}

}  // namespace tilecast
