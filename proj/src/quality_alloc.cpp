#include "tilecast/quality_alloc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace tilecast {

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct TileMask {
  std::vector<std::uint64_t> w;

  explicit TileMask(int bits) : w((bits + 63) / 64, 0) {}

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }

  void or_with(const TileMask& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }

  int count() const {
    int c = 0;
    for (std::uint64_t v : w) c += std::popcount(v);
    return c;
  }
};

std::vector<TileMask> direction_masks(const GridConfig& cfg) {
  std::vector<TileMask> masks;
  masks.reserve(cfg.direction_count());
  for (int r = 1; r <= cfg.direction_count(); ++r) {
    TileMask m(cfg.tile_count());
    for (const TileIndex& t : tiles_for_direction(cfg, direction_from_rank(cfg, r)))
      m.set(flat_tile_index(cfg, t));
    masks.push_back(std::move(m));
  }
  return masks;
}

double combinations_with_repetition(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c *= static_cast<double>(n + i - 1) / i;
  return c;
}

ViewState state_from_ranks(const GridConfig& cfg, const std::vector<int>& ranks) {
  ViewState x;
  x.reserve(ranks.size());
  for (int r : ranks) x.push_back(direction_from_rank(cfg, r));
  return x;
}

}  // namespace

void validate(const QualityLevels& levels) {
  if (levels.rates_bps.empty()) throw std::invalid_argument("QualityLevels: empty ladder");
  double prev = 0.0;
  for (double r : levels.rates_bps) {
    if (!(r > prev))
      throw std::invalid_argument("QualityLevels: rates must be positive and strictly increasing");
    prev = r;
  }
}

MaxTilesResult max_total_tiles(const GridConfig& cfg, int users, long long search_budget,
                               std::uint64_t seed) {
  validate(cfg);
  if (users < 1) throw std::invalid_argument("max_total_tiles: users must be >= 1");
  if (search_budget < 1) throw std::invalid_argument("max_total_tiles: search budget must be >= 1");

  const int n = cfg.direction_count();
  const int all = cfg.tile_count();
  const std::vector<TileMask> masks = direction_masks(cfg);

  int max_single = 0;
  for (const TileMask& m : masks) max_single = std::max(max_single, m.count());

  MaxTilesResult best;
  best.count = -1;

  if (combinations_with_repetition(n, users) <= static_cast<double>(search_budget)) {
    // exhaustive over multisets {rank_1 <= ... <= rank_K}; first maximum in
    // lexicographic order wins, so ties resolve deterministically
    std::vector<int> ranks(users);
    std::vector<TileMask> prefix(users + 1, TileMask(all));

    auto rec = [&](auto&& self, int depth, int first_rank) -> bool {
      if (depth == users) {
        const int c = prefix[users].count();
        if (c > best.count) {
          best.count = c;
          best.state = state_from_ranks(cfg, ranks);
          if (best.count == all) return true;  // cannot improve further
        }
        return false;
      }
      const int remaining = users - depth;
      if (prefix[depth].count() + remaining * max_single <= best.count) return false;
      for (int r = first_rank; r <= n; ++r) {
        ranks[depth] = r;
        prefix[depth + 1] = prefix[depth];
        prefix[depth + 1].or_with(masks[r - 1]);
        if (self(self, depth + 1, r)) return true;
      }
      return false;
    };
    rec(rec, 0, 1);
    best.exact = true;
    return best;
  }

  // over budget: greedy marginal-gain seed plus Monte-Carlo, lower bound only
  {
    TileMask cur(all);
    std::vector<int> ranks;
    for (int step = 0; step < users; ++step) {
      int pick = 1, pick_count = -1;
      for (int r = 1; r <= n; ++r) {
        TileMask trial = cur;
        trial.or_with(masks[r - 1]);
        const int c = trial.count();
        if (c > pick_count) {
          pick_count = c;
          pick = r;
        }
      }
      ranks.push_back(pick);
      cur.or_with(masks[pick - 1]);
    }
    std::sort(ranks.begin(), ranks.end());
    best.count = cur.count();
    best.state = state_from_ranks(cfg, ranks);
  }
  Rng rng(derive_seed(seed, 0x6d61787469ull));
  const long long samples = search_budget;
  for (long long s = 0; s < samples && best.count < all; ++s) {
    std::vector<int> ranks(users);
    TileMask cur(all);
    for (int u = 0; u < users; ++u) {
      ranks[u] = static_cast<int>(rng.uniform01() * n) + 1;
      ranks[u] = std::min(ranks[u], n);
      cur.or_with(masks[ranks[u] - 1]);
    }
    const int c = cur.count();
    if (c > best.count) {
      std::sort(ranks.begin(), ranks.end());
      best.count = c;
      best.state = state_from_ranks(cfg, ranks);
    }
  }
  best.exact = false;
  return best;
}

double optimal_quality(const ScenarioConfig& cfg, double e_limit_j, double h_min_global,
                       long long max_tiles) {
  validate_link(cfg);
  if (!(e_limit_j > 0.0)) throw std::invalid_argument("optimal_quality: energy budget must be positive");
  if (!(h_min_global > 0.0)) throw std::invalid_argument("optimal_quality: h_min must be positive");
  if (max_tiles < 1) throw std::invalid_argument("optimal_quality: max_tiles must be >= 1");
  return cfg.bandwidth_hz * std::log1p(e_limit_j * h_min_global / (cfg.noise_w * cfg.frame_s)) /
         (kLn2 * static_cast<double>(max_tiles));
}

Allocation allocations_at_quality(const ScenarioConfig& cfg, const MulticastPartition& part,
                                  const ChannelState& h, const Tolerance& tol) {
  return solve_state(cfg, part, h, tol);
}

std::optional<double> snap_to_level(double d_star, const QualityLevels& levels) {
  validate(levels);
  auto it = std::upper_bound(levels.rates_bps.begin(), levels.rates_bps.end(), d_star);
  if (it == levels.rates_bps.begin()) return std::nullopt;
  return *(it - 1);
}

QualityResult optimize_quality(const GridConfig& grid, const ScenarioConfig& link, int users,
                               double e_limit_j, double h_min_global,
                               const std::optional<QualityLevels>& levels,
                               long long search_budget) {
  QualityResult res;
  const MaxTilesResult mt = max_total_tiles(grid, users, search_budget);
  res.max_tiles = mt.count;
  res.worst_state = mt.state;
  res.exact = mt.exact;
  res.d_star = optimal_quality(link, e_limit_j, h_min_global, mt.count);
  if (levels) res.d_snapped = snap_to_level(res.d_star, *levels);

  ScenarioConfig at_opt = link;
  at_opt.rate_bps = res.d_star;
  const ChannelState all_min(static_cast<std::size_t>(users), h_min_global);
  res.worst_allocation =
      allocations_at_quality(at_opt, build_partition(grid, mt.state), all_min);
  return res;
}

}  // namespace tilecast
