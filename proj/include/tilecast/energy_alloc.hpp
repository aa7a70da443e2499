#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tilecast/distribution.hpp"
#include "tilecast/grouping.hpp"
#include "tilecast/special_fn.hpp"

namespace tilecast {

/// Link and source parameters shared by every per-state problem.
struct ScenarioConfig {
  double bandwidth_hz = 1e7;   ///< downlink bandwidth B
  double noise_w = 1e-9;       ///< receiver noise power n0
  double frame_s = 0.1;        ///< TDMA frame duration T
  double rate_bps = 30561.0;   ///< per-tile encoding rate D
};

/// Checks bandwidth, noise and frame duration (rate may be unset).
void validate_link(const ScenarioConfig& cfg);
/// Checks all four fields, including rate_bps > 0.
void validate(const ScenarioConfig& cfg);

/// Per-group transmission schedule for one system state. Group order
/// matches the partition it was solved for; times sum to at most the frame
/// and each group's rate constraint binds at its minimum channel power.
struct Allocation {
  std::vector<double> times_s;
  std::vector<double> powers_w;
  double lambda = 0.0;   ///< multiplier of the frame-time constraint (0 if unused)
  double energy_j = 0.0; ///< sum of t_i * p_i
};

/// Weakest channel power among each group's receivers; it dictates the
/// power needed for the whole group to decode.
std::vector<double> group_min_channel(const MulticastPartition& part, const ChannelState& h);

/// The unique power under which a group of `tile_count` tiles is delivered
/// within t_s seconds at exactly the rate its weakest receiver can decode:
/// p = n0 / h_min * (2^(S D T / (B t)) - 1).
double power_from_time(const ScenarioConfig& cfg, std::size_t tile_count, double h_min,
                       double t_s);

/// Minimum-energy time and power split of one frame across the partition's
/// groups at the configured rate. Per-group times follow the Lambert-W
/// water-filling form in the frame-time multiplier, which is found by
/// bisection so that the frame is exactly filled.
Allocation solve_state(const ScenarioConfig& cfg, const MulticastPartition& part,
                       const ChannelState& h, const Tolerance& tol = {});

/// Minimum energy when every user sees the same channel power h:
/// n0 T / h * (2^(D * total_tiles / B) - 1).
double equal_channel_energy(const ScenarioConfig& cfg, std::size_t total_tiles, double h);

/// Closed-form envelope of the per-state minimum energy over any channel
/// vector drawn from [h_min_global, h_max_global]: (lower, upper).
std::pair<double, double> energy_bounds(const ScenarioConfig& cfg, const MulticastPartition& part,
                                        double h_min_global, double h_max_global);

/// Rescales times so they sum exactly to the frame duration without ever
/// exceeding it (the last few ulps go unused rather than overrun).
void scale_times_to_frame(std::vector<double>& times_s, double frame_s);

/// Expected minimum transmission energy over the random system state.
/// Enumerates the state space exactly when it fits the sampling threshold,
/// otherwise returns a seeded Monte-Carlo mean with its standard error.
Expectation expected_energy(const ScenarioConfig& cfg, const GridConfig& grid,
                            const StateDistribution& dist, const Tolerance& tol = {},
                            const SamplingSpec& sampling = {});

}  // namespace tilecast
