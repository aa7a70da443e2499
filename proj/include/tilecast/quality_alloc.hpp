#pragma once

#include <cstdint>
#include <optional>

#include "tilecast/energy_alloc.hpp"

namespace tilecast {

/// Discrete encoding-rate ladder, strictly increasing, all positive.
struct QualityLevels {
  std::vector<double> rates_bps;
};

void validate(const QualityLevels& levels);

/// Result of the worst-case union search over user direction combinations.
struct MaxTilesResult {
  long long count = 0;  ///< largest union of per-user tile sets found
  ViewState state;      ///< attaining state, directions sorted by rank
  bool exact = true;    ///< false: sampling/greedy lower bound only
};

/// Largest number of distinct tiles any K-user direction state can request,
/// with an attaining state. Exhaustive over direction combinations with
/// repetition (unions do not depend on user order) while the combination
/// count fits the budget; beyond it, a seeded Monte-Carlo plus greedy
/// search returns a lower bound flagged exact = false. Ties resolve to the
/// lexicographically smallest state.
MaxTilesResult max_total_tiles(const GridConfig& cfg, int users,
                               long long search_budget = 2'000'000, std::uint64_t seed = 1);

/// Largest per-tile rate whose worst-case frame energy fits the budget:
/// D = B ln(e_limit h_min / (n0 T) + 1) / (ln 2 * max_tiles).
/// cfg.rate_bps is ignored.
double optimal_quality(const ScenarioConfig& cfg, double e_limit_j, double h_min_global,
                       long long max_tiles);

/// Time/power split at the chosen rate (cfg.rate_bps must carry it); the
/// returned energy never exceeds the budget the rate was derived from, and
/// is exactly the budget at the worst state under all-minimum channels.
Allocation allocations_at_quality(const ScenarioConfig& cfg, const MulticastPartition& part,
                                  const ChannelState& h, const Tolerance& tol = {});

/// Largest ladder rate not exceeding d_star, or nullopt when even the
/// lowest level is out of reach.
std::optional<double> snap_to_level(double d_star, const QualityLevels& levels);

/// Full quality-maximization result for one configuration.
struct QualityResult {
  double d_star = 0.0;                ///< continuous optimum
  std::optional<double> d_snapped;    ///< ladder level, if a ladder was given
  ViewState worst_state;              ///< state attaining the tile maximum
  long long max_tiles = 0;
  bool exact = true;                  ///< whether max_tiles is exact
  Allocation worst_allocation;        ///< at (worst state, all-min channels)
};

QualityResult optimize_quality(const GridConfig& grid, const ScenarioConfig& link, int users,
                               double e_limit_j, double h_min_global,
                               const std::optional<QualityLevels>& levels = {},
                               long long search_budget = 2'000'000);

}  // namespace tilecast
