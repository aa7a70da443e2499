#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "tilecast/energy_alloc.hpp"

using namespace tilecast;

namespace {

const GridConfig kWide{36, 2, 30, 15, 100.0, 100.0, 15.0};
const ScenarioConfig kScenario{1e7, 1e-9, 0.1, 30561.0};

MulticastPartition synthetic(const std::vector<std::size_t>& sizes,
                             const std::vector<std::vector<int>>& receivers) {
  MulticastPartition p;
  int flat = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    TileGroup g;
    g.receivers = receivers[i];
    for (std::size_t j = 0; j < sizes[i]; ++j, ++flat) g.tiles.push_back({flat / 40 + 1, flat % 40 + 1});
    p.groups.push_back(std::move(g));
  }
  return p;
}

double group_rate_bits(const ScenarioConfig& cfg, const Allocation& a, double h_min,
                       std::size_t i) {
  return a.times_s[i] * cfg.bandwidth_hz *
         std::log2(1.0 + a.powers_w[i] * h_min / cfg.noise_w);
}

}  // namespace

TEST_CASE("group_min_channel picks each group's weakest receiver") {
  const MulticastPartition p = synthetic({3, 2, 4}, {{1}, {1, 2}, {2, 3}});
  const ChannelState h{0.5, 1.5, 0.25};
  const auto mins = group_min_channel(p, h);
  CHECK(mins == std::vector<double>{0.5, 0.5, 0.25});

  const ChannelState equal{0.7, 0.7, 0.7};
  for (double m : group_min_channel(p, equal)) CHECK(m == 0.7);
}

TEST_CASE("power_from_time evaluates the rate-binding power") {
  // exponent exactly 1 makes the power equal n0 / h
  ScenarioConfig cfg = kScenario;
  cfg.rate_bps = 2.0e6;
  const double t = 10.0 * cfg.rate_bps * cfg.frame_s / cfg.bandwidth_hz;  // bits-per-use = 1
  CHECK(power_from_time(cfg, 10, 0.5, t) == doctest::Approx(cfg.noise_w / 0.5).epsilon(1e-12));

  // frozen spot value
  CHECK(power_from_time(kScenario, 50, 5e-7, 0.05) ==
        doctest::Approx(4.718822140219579082e-4).epsilon(1e-12));

  // monotone decreasing in t, vanishing in the long-time limit
  double prev = power_from_time(kScenario, 50, 5e-7, 0.01);
  for (double tt : {0.02, 0.05, 0.1, 1.0, 100.0, 1e6}) {
    const double p = power_from_time(kScenario, 50, 5e-7, tt);
    CHECK(p < prev);
    prev = p;
  }
  CHECK(prev < 1e-12);

  CHECK_THROWS_AS(power_from_time(kScenario, 50, 5e-7, 0.0), std::domain_error);
  CHECK_THROWS_AS(power_from_time(kScenario, 50, 5e-7, -1.0), std::domain_error);
  // spectral-efficiency guard
  CHECK_THROWS_AS(power_from_time(kScenario, 5000000, 5e-7, 1e-9), std::domain_error);
}

TEST_CASE("single group gets the whole frame") {
  const MulticastPartition p = synthetic({120}, {{1, 2}});
  const ChannelState h{5e-7, 1.5e-6};
  const Allocation a = solve_state(kScenario, p, h);
  REQUIRE(a.times_s.size() == 1);
  CHECK(a.times_s[0] == doctest::Approx(kScenario.frame_s).epsilon(1e-12));
  CHECK(a.powers_w[0] ==
        doctest::Approx(power_from_time(kScenario, 120, 5e-7, kScenario.frame_s)).epsilon(1e-9));
  CHECK(a.energy_j == doctest::Approx(equal_channel_energy(kScenario, 120, 5e-7)).epsilon(1e-9));
}

TEST_CASE("equal channels collapse to the closed form") {
  Rng rng(41);
  for (int rep = 0; rep < 30; ++rep) {
    const testing::SyntheticInstance inst = testing::random_instance(rng);
    const double h_tilde = 1e-7 * std::pow(10.0, rng.uniform01());
    const ChannelState equal(inst.h.size(), h_tilde);
    const Allocation a = solve_state(kScenario, inst.part, equal);
    CHECK(a.energy_j ==
          doctest::Approx(equal_channel_energy(kScenario, total_tiles(inst.part), h_tilde))
              .epsilon(1e-12));
    // times split proportionally to group tile counts
    const double total = static_cast<double>(total_tiles(inst.part));
    for (std::size_t i = 0; i < a.times_s.size(); ++i)
      CHECK(a.times_s[i] == doctest::Approx(kScenario.frame_s *
                                            static_cast<double>(inst.part.groups[i].tiles.size()) /
                                            total)
                                .epsilon(1e-10));
  }
}

TEST_CASE("scaling all equal channels rescales the energy exactly") {
  const MulticastPartition p = synthetic({40, 25, 60}, {{1}, {2}, {1, 2}});
  for (double c : {2.0, 8.0, 64.0}) {
    const double base = solve_state(kScenario, p, ChannelState{4e-7, 4e-7}).energy_j;
    const double scaled = solve_state(kScenario, p, ChannelState{4e-7 * c, 4e-7 * c}).energy_j;
    CHECK(scaled * c == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("solver matches the simplex-refinement reference") {
  Rng rng(43);
  for (int rep = 0; rep < 12; ++rep) {
    const testing::SyntheticInstance inst = testing::random_instance(rng, 4, 4);
    const Allocation a = solve_state(kScenario, inst.part, inst.h);

    std::vector<std::size_t> sizes;
    for (const TileGroup& g : inst.part.groups) sizes.push_back(g.tiles.size());
    const double oracle =
        testing::simplex_min_energy(kScenario, sizes, group_min_channel(inst.part, inst.h));
    CHECK(a.energy_j == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("allocations fill the frame and bind every rate constraint") {
  Rng rng(47);
  for (int rep = 0; rep < 50; ++rep) {
    const testing::SyntheticInstance inst = testing::random_instance(rng);
    const Allocation a = solve_state(kScenario, inst.part, inst.h);
    const double sum = std::accumulate(a.times_s.begin(), a.times_s.end(), 0.0);
    CHECK(sum <= kScenario.frame_s);
    CHECK(sum >= kScenario.frame_s * (1.0 - 1e-9));

    const auto mins = group_min_channel(inst.part, inst.h);
    for (std::size_t i = 0; i < a.times_s.size(); ++i) {
      CHECK(a.times_s[i] > 0.0);
      CHECK(a.powers_w[i] > 0.0);
      const double need = static_cast<double>(inst.part.groups[i].tiles.size()) *
                          kScenario.rate_bps * kScenario.frame_s;
      CHECK(group_rate_bits(kScenario, a, mins[i], i) == doctest::Approx(need).epsilon(1e-9));
    }
  }
}

TEST_CASE("energy is nondecreasing in rate and in any group size") {
  Rng rng(53);
  for (int rep = 0; rep < 10; ++rep) {
    const testing::SyntheticInstance inst = testing::random_instance(rng);
    const double base = solve_state(kScenario, inst.part, inst.h).energy_j;

    ScenarioConfig faster = kScenario;
    faster.rate_bps *= 1.05;
    CHECK(solve_state(faster, inst.part, inst.h).energy_j > base);

    MulticastPartition bigger = inst.part;
    bigger.groups[0].tiles.push_back({20, 40});
    CHECK(solve_state(kScenario, bigger, inst.h).energy_j > base);
  }
}

TEST_CASE("closed-form bounds bracket the solved energy") {
  const MulticastPartition degenerate = synthetic({77}, {{1}});
  const auto [lo_d, hi_d] = energy_bounds(kScenario, degenerate, 4e-7, 4e-7);
  CHECK(lo_d == hi_d);
  CHECK(lo_d == doctest::Approx(equal_channel_energy(kScenario, 77, 4e-7)));

  Rng rng(59);
  const double d = 1e-6;
  for (int rep = 0; rep < 40; ++rep) {
    const testing::SyntheticInstance base = testing::random_instance(rng);
    ChannelState h;
    for (std::size_t k = 0; k < base.h.size(); ++k)
      h.push_back(rng.uniform01() < 0.5 ? 0.5 * d : 1.5 * d);
    const auto [lo, hi] = energy_bounds(kScenario, base.part, 0.5 * d, 1.5 * d);
    const double e = solve_state(kScenario, base.part, h).energy_j;
    CHECK(lo <= e * (1 + 1e-12));
    CHECK(e <= hi * (1 + 1e-12));
  }
  CHECK_THROWS_AS(energy_bounds(kScenario, degenerate, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("expected energy over a deterministic state equals a direct solve") {
  GridConfig tiny{2, 1, 4, 2, 160.0, 90.0, 0.0};
  StateDistribution dist;
  dist.users = 2;
  dist.zipf_gamma = 1000.0;  // all mass on rank 1
  dist.channel = {{5e-7, 1.0}};
  const Expectation e = expected_energy(kScenario, tiny, dist);
  CHECK(e.exact);

  const ViewState x{{1, 1}, {1, 1}};
  const double direct =
      solve_state(kScenario, build_partition(tiny, x), ChannelState{5e-7, 5e-7}).energy_j;
  // rank-1 probability is 1 - 2^-1000; the other states contribute nothing visible
  CHECK(e.mean == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("expected energy averages equiprobable channel states") {
  GridConfig tiny{1, 1, 4, 2, 160.0, 90.0, 0.0};
  StateDistribution dist;
  dist.users = 1;
  dist.zipf_gamma = 0.0;
  dist.channel = {{5e-7, 0.5}, {1.5e-6, 0.5}};
  const Expectation e = expected_energy(kScenario, tiny, dist);
  CHECK(e.exact);
  CHECK(e.samples == 2);

  const MulticastPartition p = build_partition(tiny, {{1, 1}});
  const double a = solve_state(kScenario, p, {5e-7}).energy_j;
  const double b = solve_state(kScenario, p, {1.5e-6}).energy_j;
  CHECK(e.mean == doctest::Approx(0.5 * (a + b)).epsilon(1e-12));
}

TEST_CASE("scenario and state validation") {
  CHECK_THROWS_AS(validate(ScenarioConfig{0, 1e-9, 0.1, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ScenarioConfig{1e7, 1e-9, 0.1, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(validate_link(ScenarioConfig{1e7, 1e-9, 0.1, 0.0}));

  const MulticastPartition p = synthetic({3}, {{1, 2}});
  CHECK_THROWS_AS(solve_state(kScenario, p, ChannelState{1e-7}), std::invalid_argument);
  CHECK_THROWS_AS(solve_state(kScenario, p, ChannelState{1e-7, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_state(kScenario, MulticastPartition{}, ChannelState{1e-7}),
                  std::invalid_argument);
}
