// Command-line front end: per-state solves, energy and quality sweeps, the
// worst-case tile search, and a randomized invariant check. Every flag can
// also be set from an INI config file (sections named after subcommands);
// command-line flags override file values.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tilecast/experiment.hpp"

using namespace tilecast;

namespace {

struct CommonOpts {
  GridConfig grid;
  ScenarioConfig scenario;
  int users = 3;
  double gamma = 0.8;
  double pathloss = 1e-6;
  std::vector<std::string> channel = {"0.5:0.5", "1.5:0.5"};
  double elimit = 0.1;
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  bool exact = false;
  long long budget = 2'000'000;
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--nh", o.grid.n_h, "horizontal viewing directions")->capture_default_str();
  cmd->add_option("--nv", o.grid.n_v, "vertical viewing directions")->capture_default_str();
  cmd->add_option("--vh", o.grid.v_h, "tile columns")->capture_default_str();
  cmd->add_option("--vv", o.grid.v_v, "tile rows")->capture_default_str();
  cmd->add_option("--fov-h", o.grid.fov_h, "FoV width, degrees")->capture_default_str();
  cmd->add_option("--fov-v", o.grid.fov_v, "FoV height, degrees")->capture_default_str();
  cmd->add_option("--margin", o.grid.margin, "extra degrees on each FoV side")->capture_default_str();
  cmd->add_option("--bandwidth", o.scenario.bandwidth_hz, "bandwidth, Hz")->capture_default_str();
  cmd->add_option("--noise", o.scenario.noise_w, "receiver noise power, W")->capture_default_str();
  cmd->add_option("--frame", o.scenario.frame_s, "frame duration, s")->capture_default_str();
  cmd->add_option("--rate", o.scenario.rate_bps, "per-tile encoding rate, bit/s")
      ->capture_default_str();
  cmd->add_option("--users", o.users, "number of users")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "viewport popularity exponent")->capture_default_str();
  cmd->add_option("--pathloss", o.pathloss, "channel power scale d")->capture_default_str();
  cmd->add_option("--channel", o.channel,
                  "channel points as POWER:PROB, power in multiples of the path loss")
      ->capture_default_str();
  cmd->add_option("--elimit", o.elimit, "per-state energy budget, J")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--samples", o.samples, "Monte-Carlo sample count")->capture_default_str();
  cmd->add_flag("--exact", o.exact, "enumerate the state space instead of sampling");
  cmd->add_option("--budget", o.budget, "tile-search combination budget")->capture_default_str();
  cmd->add_option("--output", o.output, "write results to this file instead of stdout");
}

StateDistribution make_distribution(const CommonOpts& o, double pathloss) {
  StateDistribution dist;
  dist.users = o.users;
  dist.zipf_gamma = o.gamma;
  for (const std::string& spec : o.channel) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--channel", "expected POWER:PROB, got '" + spec + "'");
    dist.channel.push_back(
        {std::stod(spec.substr(0, colon)) * pathloss, std::stod(spec.substr(colon + 1))});
  }
  validate(dist);
  return dist;
}

// writes through to stdout unless an output path was given
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<ViewingDirection> parse_dirs(const std::vector<std::string>& specs) {
  std::vector<ViewingDirection> dirs;
  for (const std::string& s : specs) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--dirs", "expected ROW:COL, got '" + s + "'");
    dirs.push_back({std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))});
  }
  return dirs;
}

int run_solve_state(const CommonOpts& o, const std::vector<std::string>& dir_specs,
                    const std::vector<double>& powers) {
  const ViewState x = parse_dirs(dir_specs);
  if (powers.size() != x.size())
    throw CLI::ValidationError("--powers", "need exactly one channel power per direction");
  const MulticastPartition part = build_partition(o.grid, x);
  const Allocation a = solve_state(o.scenario, part, powers);
  Output out(o.output);
  write_allocation_csv(out.stream(), part, a);
  std::cerr << "groups " << part.groups.size() << ", tiles " << total_tiles(part) << ", energy "
            << format_sig12(a.energy_j) << " J, multiplier " << format_sig12(a.lambda) << "\n";
  return 0;
}

int run_sweep_command(const CommonOpts& o, SweepParam param, SweepObjective objective,
                      const std::vector<double>& values) {
  SweepSpec spec;
  spec.param = param;
  spec.objective = objective;
  spec.values = values;
  spec.mode = o.exact ? SamplingSpec::Mode::exact : SamplingSpec::Mode::automatic;
  spec.samples = o.samples;
  spec.seed = o.seed;
  spec.e_limit_j = o.elimit;
  spec.search_budget = o.budget;

  // gamma sweeps fix the channel at --pathloss; path-loss sweeps scale the
  // shape by each swept value
  const double base_scale = param == SweepParam::zipf_gamma ? o.pathloss : 1.0;
  const StateDistribution dist = make_distribution(o, base_scale);

  const SweepResult res = run_sweep(spec, o.scenario, o.grid, dist);
  Output out(o.output);
  write_sweep_csv(out.stream(), res);
  int failures = 0;
  for (const SweepRow& row : res.rows)
    if (!row.diagnostic.empty()) {
      ++failures;
      std::cerr << "cell " << row.sweep_param << "=" << format_sig12(row.value) << " "
                << scheme_name(row.scheme) << ": " << row.diagnostic << "\n";
    }
  return failures == 0 ? 0 : 1;
}

int run_max_tiles(const CommonOpts& o) {
  const MaxTilesResult r = max_total_tiles(o.grid, o.users, o.budget, o.seed);
  Output out(o.output);
  out.stream() << "max_tiles,exact,state\n" << r.count << ',' << (r.exact ? "true" : "false") << ',';
  for (std::size_t k = 0; k < r.state.size(); ++k) {
    if (k) out.stream() << ';';
    out.stream() << r.state[k].row << ':' << r.state[k].col;
  }
  out.stream() << '\n';
  return 0;
}

int run_validate(const CommonOpts& o, int instances) {
  const StateDistribution dist = make_distribution(o, o.pathloss);
  const StateSampler sampler(o.grid, dist);
  Rng rng(o.seed);

  double h_min_global = dist.channel[0].power_w, h_max_global = dist.channel[0].power_w;
  for (const ChannelPoint& c : dist.channel) {
    h_min_global = std::min(h_min_global, c.power_w);
    h_max_global = std::max(h_max_global, c.power_w);
  }

  int violations = 0;
  double worst_frame = 0.0, worst_rate = 0.0;
  auto flag = [&](bool bad, const char* what, int rep) {
    if (bad) {
      ++violations;
      std::cerr << "instance " << rep << ": " << what << "\n";
    }
  };

  for (int rep = 0; rep < instances; ++rep) {
    const SystemState st = sampler(rng);
    const MulticastPartition part = build_partition(o.grid, st.view);

    // partition invariants: disjoint cover with exact receiver sets
    std::vector<int> owner(o.grid.tile_count(), -1);
    std::vector<TileSet> phis;
    for (const ViewingDirection& d : st.view) phis.push_back(tiles_for_direction(o.grid, d));
    bool part_ok = true;
    for (std::size_t gi = 0; gi < part.groups.size(); ++gi) {
      for (const TileIndex& t : part.groups[gi].tiles) {
        int& own = owner[flat_tile_index(o.grid, t)];
        part_ok &= own == -1;
        own = static_cast<int>(gi);
        std::vector<int> expect;
        for (std::size_t k = 0; k < phis.size(); ++k)
          if (std::binary_search(phis[k].begin(), phis[k].end(), t))
            expect.push_back(static_cast<int>(k) + 1);
        part_ok &= expect == part.groups[gi].receivers;
      }
    }
    for (const TileSet& phi : phis)
      for (const TileIndex& t : phi) part_ok &= owner[flat_tile_index(o.grid, t)] != -1;
    flag(!part_ok, "partition invariants violated", rep);

    // schedule invariants
    const Allocation a = solve_state(o.scenario, part, st.channels);
    const double sum = std::accumulate(a.times_s.begin(), a.times_s.end(), 0.0);
    worst_frame = std::max(worst_frame, 1.0 - sum / o.scenario.frame_s);
    flag(sum > o.scenario.frame_s || sum < o.scenario.frame_s * (1 - 1e-9),
         "frame not exactly filled", rep);
    const auto mins = group_min_channel(part, st.channels);
    for (std::size_t i = 0; i < a.times_s.size(); ++i) {
      const double got = a.times_s[i] * o.scenario.bandwidth_hz *
                         std::log2(1.0 + a.powers_w[i] * mins[i] / o.scenario.noise_w);
      const double need = static_cast<double>(part.groups[i].tiles.size()) *
                          o.scenario.rate_bps * o.scenario.frame_s;
      worst_rate = std::max(worst_rate, std::abs(got / need - 1.0));
      flag(std::abs(got / need - 1.0) > 1e-9, "rate constraint not binding", rep);
    }

    // envelope and dominance
    const auto [lo, hi] = energy_bounds(o.scenario, part, h_min_global, h_max_global);
    flag(!(lo <= a.energy_j * (1 + 1e-12) && a.energy_j <= hi * (1 + 1e-12)),
         "energy outside the closed-form envelope", rep);
    flag(a.energy_j > unicast_energy(o.scenario, o.grid, st.view, st.channels).energy_j * (1 + 1e-12),
         "optimal schedule beaten by unicast", rep);
    flag(a.energy_j > equal_time_energy(o.scenario, part, st.channels).energy_j * (1 + 1e-12),
         "optimal schedule beaten by equal-time", rep);
  }

  std::printf("%d instances checked, %d violations (frame slack %.2e, rate residual %.2e)\n",
              instances, violations, worst_frame, worst_rate);
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmission-time and power planning for tiled 360-degree video multicast"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file; flags override it");

  CommonOpts solve_opts, energy_opts, quality_opts, tiles_opts, validate_opts;
  std::vector<std::string> dir_specs;
  std::vector<double> powers;
  std::vector<double> energy_values{0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> quality_values{0.5e-6, 1.0e-6, 1.5e-6, 2.0e-6};
  int instances = 200;

  CLI::App* solve = app.add_subcommand(
      "solve-state", "optimal time and power split for one explicit system state");
  add_common(solve, solve_opts);
  solve->add_option("--dirs", dir_specs, "per-user viewing directions as ROW:COL")->required();
  solve->add_option("--powers", powers, "per-user channel powers, absolute")->required();

  CLI::App* energy = app.add_subcommand(
      "energy-sweep", "average minimum energy versus the viewport popularity exponent");
  add_common(energy, energy_opts);
  energy->add_option("--values", energy_values, "popularity exponents to sweep")
      ->capture_default_str();

  CLI::App* quality = app.add_subcommand(
      "quality-sweep", "largest feasible encoding rate versus the path loss");
  add_common(quality, quality_opts);
  quality->add_option("--values", quality_values, "path-loss values to sweep")
      ->capture_default_str();

  CLI::App* tiles = app.add_subcommand(
      "max-tiles", "worst-case number of distinct tiles any user state can request");
  add_common(tiles, tiles_opts);

  CLI::App* check = app.add_subcommand(
      "validate", "check schedule and partition invariants on random states");
  add_common(check, validate_opts);
  check->add_option("--instances", instances, "number of random states")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve_state(solve_opts, dir_specs, powers);
    if (energy->parsed())
      return run_sweep_command(energy_opts, SweepParam::zipf_gamma, SweepObjective::energy,
                               energy_values);
    if (quality->parsed())
      return run_sweep_command(quality_opts, SweepParam::path_loss, SweepObjective::quality,
                               quality_values);
    if (tiles->parsed()) return run_max_tiles(tiles_opts);
    if (check->parsed()) return run_validate(validate_opts, instances);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
