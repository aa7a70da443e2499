#include "tilecast/energy_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tilecast {

void validate_link(const ScenarioConfig& cfg) {
  if (!(cfg.bandwidth_hz > 0.0) || !(cfg.noise_w > 0.0) || !(cfg.frame_s > 0.0))
    throw std::invalid_argument(
        "ScenarioConfig: bandwidth, noise power and frame duration must be positive");
}

void validate(const ScenarioConfig& cfg) {
  validate_link(cfg);
  if (!(cfg.rate_bps > 0.0))
    throw std::invalid_argument("ScenarioConfig: per-tile encoding rate must be positive");
}

namespace {

constexpr double kInvE = 0.36787944117144233;
constexpr double kLn2 = 0.6931471805599453;

// 2^bits on a frame slice; anything past 1000 bits per channel use is a
// configuration error, not a schedule
constexpr double kMaxBitsPerUse = 1000.0;

double exp2m1_checked(double bits) {
  if (!(bits <= kMaxBitsPerUse))
    throw std::domain_error(
        "spectral efficiency above 1000 bits per channel use; rate, tile count or time slice "
        "is out of range");
  return std::expm1(bits * kLn2);
}

void check_state(const MulticastPartition& part, const ChannelState& h) {
  if (part.groups.empty()) throw std::invalid_argument("partition has no groups");
  for (double v : h)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("channel powers must be positive and finite");
  for (const TileGroup& g : part.groups) {
    if (g.tiles.empty() || g.receivers.empty())
      throw std::invalid_argument("every group needs tiles and receivers");
    for (int k : g.receivers)
      if (k < 1 || static_cast<std::size_t>(k) > h.size())
        throw std::invalid_argument("group receiver has no channel entry");
  }
}

}  // namespace

std::vector<double> group_min_channel(const MulticastPartition& part, const ChannelState& h) {
  check_state(part, h);
  std::vector<double> mins;
  mins.reserve(part.groups.size());
  for (const TileGroup& g : part.groups) {
    double m = std::numeric_limits<double>::infinity();
    for (int k : g.receivers) m = std::min(m, h[k - 1]);
    mins.push_back(m);
  }
  return mins;
}

double power_from_time(const ScenarioConfig& cfg, std::size_t tile_count, double h_min,
                       double t_s) {
  validate(cfg);
  if (!(h_min > 0.0)) throw std::invalid_argument("h_min must be positive");
  if (!(t_s > 0.0)) throw std::domain_error("transmission time must be positive");
  const double bits =
      static_cast<double>(tile_count) * cfg.rate_bps * cfg.frame_s / (cfg.bandwidth_hz * t_s);
  return cfg.noise_w / h_min * exp2m1_checked(bits);
}

void scale_times_to_frame(std::vector<double>& times_s, double frame_s) {
  auto sum = [&] { return std::accumulate(times_s.begin(), times_s.end(), 0.0); };
  double s = sum();
  if (!(s > 0.0)) throw std::invalid_argument("scale_times_to_frame: times must sum to > 0");
  for (double& t : times_s) t *= frame_s / s;
  s = sum();
  if (s > frame_s) {
    const double shrink = frame_s / s * (1.0 - 1e-13);
    for (double& t : times_s) t *= shrink;
    s = sum();
  }
  if (s > frame_s || s < frame_s * (1.0 - 1e-10))
    throw ConvergenceError("scale_times_to_frame: frame normalization failed", s / frame_s - 1.0);
}

Allocation solve_state(const ScenarioConfig& cfg, const MulticastPartition& part,
                       const ChannelState& h, const Tolerance& tol) {
  validate(cfg);
  validate(tol);
  check_state(part, h);

  const std::vector<double> h_min = group_min_channel(part, h);
  const std::size_t n = part.groups.size();

  // share of the frame each group needs as a function of the time
  // multiplier: sum_i S_i D ln2 / (B (W(lambda h_i / (n0 e) - 1/e) + 1));
  // strictly decreasing in lambda, so the frame-filling root is unique
  std::vector<double> coef(n), scale(n);
  for (std::size_t i = 0; i < n; ++i) {
    coef[i] = static_cast<double>(part.groups[i].tiles.size()) * cfg.rate_bps * kLn2 /
              cfg.bandwidth_hz;
    scale[i] = h_min[i] / (cfg.noise_w * std::exp(1.0));
  }
  auto frame_share = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      s += coef[i] / (lambert_w0(lambda * scale[i] - kInvE) + 1.0);
    return s;
  };

  const double hint = cfg.noise_w / *std::min_element(h_min.begin(), h_min.end());
  Allocation a;
  a.lambda = bisect_decreasing(frame_share, 1.0, hint, tol);

  a.times_s.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    a.times_s[i] =
        cfg.frame_s * coef[i] / (lambert_w0(a.lambda * scale[i] - kInvE) + 1.0);
  scale_times_to_frame(a.times_s, cfg.frame_s);

  a.powers_w.resize(n);
  a.energy_j = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a.powers_w[i] = power_from_time(cfg, part.groups[i].tiles.size(), h_min[i], a.times_s[i]);
    a.energy_j += a.times_s[i] * a.powers_w[i];
  }
  return a;
}

double equal_channel_energy(const ScenarioConfig& cfg, std::size_t total_tiles, double h) {
  validate(cfg);
  if (!(h > 0.0)) throw std::invalid_argument("channel power must be positive");
  const double bits = cfg.rate_bps * static_cast<double>(total_tiles) / cfg.bandwidth_hz;
  return cfg.noise_w * cfg.frame_s / h * exp2m1_checked(bits);
}

std::pair<double, double> energy_bounds(const ScenarioConfig& cfg, const MulticastPartition& part,
                                        double h_min_global, double h_max_global) {
  validate(cfg);
  if (!(h_min_global > 0.0) || !(h_min_global <= h_max_global))
    throw std::invalid_argument("energy_bounds: need 0 < h_min_global <= h_max_global");
  const std::size_t s = total_tiles(part);
  return {equal_channel_energy(cfg, s, h_max_global), equal_channel_energy(cfg, s, h_min_global)};
}

Expectation expected_energy(const ScenarioConfig& cfg, const GridConfig& grid,
                            const StateDistribution& dist, const Tolerance& tol,
                            const SamplingSpec& sampling) {
  validate(cfg);
  return expect_state_value(
      grid, dist,
      [&](const SystemState& st) {
        return solve_state(cfg, build_partition(grid, st.view), st.channels, tol).energy_j;
      },
      sampling);
}

}  // namespace tilecast
