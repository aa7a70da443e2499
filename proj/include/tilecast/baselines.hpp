#pragma once

#include "tilecast/quality_alloc.hpp"

namespace tilecast {

/// One group per user carrying that user's full tile set; tiles several
/// users request are duplicated across their groups instead of multicast.
MulticastPartition unicast_partition(const GridConfig& cfg, const ViewState& x);

/// Same, from per-user tile sets already computed for this grid.
MulticastPartition unicast_partition(const std::vector<TileSet>& per_user_tiles);

/// Optimal unicast schedule: the minimum-energy solver applied to the
/// one-group-per-user partition, all users sharing the one TDMA frame.
Allocation unicast_energy(const ScenarioConfig& cfg, const GridConfig& grid, const ViewState& x,
                          const ChannelState& h, const Tolerance& tol = {});

/// Equal time per transmitted tile (group time proportional to its tile
/// count) with the matching minimum power per group.
Allocation equal_time_energy(const ScenarioConfig& cfg, const MulticastPartition& part,
                             const ChannelState& h);

/// Largest rate whose optimal unicast energy fits the budget in the worst
/// case; overlapping tiles count once per requesting user, so the worst
/// case is every user on the direction with the largest tile set.
double baseline1_quality(const ScenarioConfig& link, double e_limit_j, double h_min_global,
                         const GridConfig& grid, int users);

/// Largest rate whose equal-time energy at (worst state, all-minimum
/// channels) fits the budget, by closed-form inversion per state.
double baseline2_quality(const ScenarioConfig& link, double e_limit_j, double h_min_global,
                         long long max_tiles);

struct BaselineQualities {
  double baseline1_bps = 0.0;
  double baseline2_bps = 0.0;
};

/// Both baseline qualities for one configuration; runs the worst-case tile
/// searches internally.
BaselineQualities baseline_qualities(const GridConfig& grid, const ScenarioConfig& link, int users,
                                     double e_limit_j, double h_min_global,
                                     long long search_budget = 2'000'000);

}  // namespace tilecast
