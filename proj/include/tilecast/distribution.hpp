#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "tilecast/geometry.hpp"
#include "tilecast/grouping.hpp"

namespace tilecast {

/// Per-user channel power in linear units; index in the vector is user k - 1.
using ChannelState = std::vector<double>;

/// One possible channel power value and its probability.
struct ChannelPoint {
  double power_w = 0.0;
  double prob = 0.0;
};

/// Joint distribution of the random system state. Viewing directions are
/// i.i.d. Zipf over direction ranks (rank = (col - 1) * n_v + row); channel
/// powers are i.i.d. over a finite set of points. Directions and channels
/// are drawn independently of each other.
struct StateDistribution {
  double zipf_gamma = 0.8;
  int users = 1;
  std::vector<ChannelPoint> channel;
};

void validate(const StateDistribution& dist);

/// One realization of the random system state.
struct SystemState {
  ViewState view;
  ChannelState channels;
};

/// Zipf probabilities over ranks 1..n: p_r = r^-gamma / sum_i i^-gamma.
std::vector<double> zipf_pmf(double gamma, int n);

/// Deterministic random stream: std::mt19937_64 (bit-stable across platforms
/// by the C++ standard) mapped to [0,1) doubles through a fixed 53-bit
/// shift, so seeded runs reproduce exactly everywhere and across releases.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

/// splitmix64 mix of (master seed, cell, batch) into one stream seed, so
/// sweep cells and sample batches get independent reproducible streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t batch = 0);

/// Precomputed inverse-CDF tables for fast repeated draws from one
/// distribution on one grid.
class StateSampler {
 public:
  StateSampler(const GridConfig& cfg, const StateDistribution& dist);

  SystemState operator()(Rng& rng) const;

 private:
  GridConfig cfg_;
  int users_;
  std::vector<double> dir_cdf_;
  std::vector<double> chan_cdf_;
  std::vector<double> chan_power_;
};

/// Draws one system state: users' directions i.i.d. from the Zipf pmf over
/// ranks, channel powers i.i.d. from the channel points.
SystemState sample_state(const GridConfig& cfg, const StateDistribution& dist, Rng& rng);

/// How to evaluate an expectation over the random system state.
struct SamplingSpec {
  enum class Mode { automatic, exact, monte_carlo };
  Mode mode = Mode::automatic;
  std::size_t samples = 100000;    ///< Monte-Carlo sample count
  std::uint64_t seed = 1;          ///< master seed
  std::uint64_t cell = 0;          ///< stream selector (e.g. sweep cell index)
  double enumeration_threshold = 1e6;  ///< max support size for exact mode
};

struct Expectation {
  double mean = 0.0;
  double std_error = 0.0;  ///< 0 when exact
  std::size_t samples = 0;
  bool exact = false;
};

namespace detail {

inline double support_size(const GridConfig& cfg, const StateDistribution& dist) {
  return std::pow(static_cast<double>(cfg.direction_count()), dist.users) *
         std::pow(static_cast<double>(dist.channel.size()), dist.users);
}

inline constexpr std::size_t kBatchSize = 4096;

}  // namespace detail

/// Expectation of fn over the random system state: exact enumeration of
/// X^K x H^K when the support fits the threshold, otherwise a seeded
/// Monte-Carlo mean with its standard error. Enumeration accumulates in
/// ascending state order and Monte-Carlo draws batches from streams keyed
/// by (seed, cell, batch), so results never depend on scheduling.
template <class Fn>
Expectation expect_state_value(const GridConfig& cfg, const StateDistribution& dist, Fn&& fn,
                               const SamplingSpec& spec = {}) {
  validate(cfg);
  validate(dist);
  const int k = dist.users;

  bool exact = false;
  switch (spec.mode) {
    case SamplingSpec::Mode::exact:
      if (detail::support_size(cfg, dist) > spec.enumeration_threshold)
        throw std::invalid_argument("expect_state_value: support too large for exact mode");
      exact = true;
      break;
    case SamplingSpec::Mode::monte_carlo:
      exact = false;
      break;
    case SamplingSpec::Mode::automatic:
      exact = detail::support_size(cfg, dist) <= spec.enumeration_threshold;
      break;
  }

  if (exact) {
    const std::vector<double> dir_pmf = zipf_pmf(dist.zipf_gamma, cfg.direction_count());
    const int n_dir = cfg.direction_count();
    const int n_ch = static_cast<int>(dist.channel.size());

    SystemState st;
    st.view.assign(k, direction_from_rank(cfg, 1));
    st.channels.assign(k, dist.channel[0].power_w);
    std::vector<int> dir_idx(k, 0), ch_idx(k, 0);

    double mean = 0.0;
    std::size_t count = 0;
    bool done = false;
    while (!done) {
      double weight = 1.0;
      for (int u = 0; u < k; ++u) weight *= dir_pmf[dir_idx[u]] * dist.channel[ch_idx[u]].prob;
      for (int u = 0; u < k; ++u) {
        st.view[u] = direction_from_rank(cfg, dir_idx[u] + 1);
        st.channels[u] = dist.channel[ch_idx[u]].power_w;
      }
      mean += weight * fn(static_cast<const SystemState&>(st));
      ++count;

      // odometer over (dir_idx, ch_idx)
      int pos = 0;
      for (; pos < 2 * k; ++pos) {
        if (pos < k) {
          if (++dir_idx[pos] < n_dir) break;
          dir_idx[pos] = 0;
        } else {
          if (++ch_idx[pos - k] < n_ch) break;
          ch_idx[pos - k] = 0;
        }
      }
      done = (pos == 2 * k);
    }
    return {mean, 0.0, count, true};
  }

  if (spec.samples < 1) throw std::invalid_argument("expect_state_value: samples must be >= 1");
  const StateSampler sampler(cfg, dist);
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  const std::size_t batches = (spec.samples + detail::kBatchSize - 1) / detail::kBatchSize;
  for (std::size_t b = 0; b < batches; ++b) {
    Rng rng(derive_seed(spec.seed, spec.cell, b));
    const std::size_t in_batch = std::min(detail::kBatchSize, spec.samples - b * detail::kBatchSize);
    for (std::size_t s = 0; s < in_batch; ++s) {
      const SystemState st = sampler(rng);
      const double v = fn(static_cast<const SystemState&>(st));
      ++n;
      const double delta = v - mean;
      mean += delta / static_cast<double>(n);
      m2 += delta * (v - mean);
    }
  }
  const double stderr_ = n > 1 ? std::sqrt(m2 / (static_cast<double>(n) - 1.0) / static_cast<double>(n)) : 0.0;
  return {mean, stderr_, n, false};
}

}  // namespace tilecast
