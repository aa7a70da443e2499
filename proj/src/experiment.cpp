#include "tilecast/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace tilecast {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::multicast_opt: return "multicast_opt";
    case Scheme::unicast_opt: return "unicast_opt";
    case Scheme::equal_time: return "equal_time";
  }
  throw std::invalid_argument("unknown scheme");
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("SweepSpec: empty value list");
  if (spec.schemes.empty()) throw std::invalid_argument("SweepSpec: no schemes selected");
  if (spec.samples < 1) throw std::invalid_argument("SweepSpec: samples must be >= 1");
  if (spec.objective == SweepObjective::quality && !(spec.e_limit_j > 0.0))
    throw std::invalid_argument("SweepSpec: quality sweeps need a positive energy budget");
  if (spec.param == SweepParam::path_loss)
    for (double v : spec.values)
      if (!(v > 0.0)) throw std::invalid_argument("SweepSpec: path-loss values must be positive");
  if (spec.param == SweepParam::zipf_gamma)
    for (double v : spec.values)
      if (!(v >= 0.0)) throw std::invalid_argument("SweepSpec: gamma values must be >= 0");
}

namespace {

constexpr std::string_view kParamNames[] = {"zipf_gamma", "path_loss"};

double min_channel_power(const StateDistribution& dist) {
  double m = std::numeric_limits<double>::infinity();
  for (const ChannelPoint& c : dist.channel) m = std::min(m, c.power_w);
  return m;
}

double scheme_energy(Scheme scheme, const ScenarioConfig& cfg, const GridConfig& grid,
                     const SystemState& st) {
  std::vector<TileSet> phis;
  phis.reserve(st.view.size());
  for (const ViewingDirection& d : st.view) phis.push_back(tiles_for_direction(grid, d));
  switch (scheme) {
    case Scheme::multicast_opt:
      return solve_state(cfg, build_partition(grid, phis), st.channels).energy_j;
    case Scheme::unicast_opt:
      return solve_state(cfg, unicast_partition(phis), st.channels).energy_j;
    case Scheme::equal_time:
      return equal_time_energy(cfg, build_partition(grid, phis), st.channels).energy_j;
  }
  throw std::invalid_argument("unknown scheme");
}

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}

  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const ScenarioConfig& scenario,
                      const GridConfig& grid, const StateDistribution& base_dist) {
  validate(spec);
  validate(grid);
  validate_link(scenario);
  validate(base_dist);

  SweepResult out;
  const std::string param_name{kParamNames[static_cast<int>(spec.param)]};

  // worst-case tile maxima do not depend on the swept value; compute once
  std::optional<MaxTilesResult> union_max;

  for (std::size_t ci = 0; ci < spec.values.size(); ++ci) {
    const double value = spec.values[ci];
    StateDistribution dist = base_dist;
    if (spec.param == SweepParam::zipf_gamma) {
      dist.zipf_gamma = value;
    } else {
      for (std::size_t j = 0; j < dist.channel.size(); ++j)
        dist.channel[j].power_w = base_dist.channel[j].power_w * value;
    }

    for (Scheme scheme : spec.schemes) {
      SweepRow row;
      row.sweep_param = param_name;
      row.value = value;
      row.scheme = scheme;
      WallTimer timer;
      try {
        if (spec.objective == SweepObjective::energy) {
          validate(scenario);
          SamplingSpec sampling;
          sampling.mode = spec.mode;
          sampling.samples = spec.samples;
          sampling.seed = spec.seed;
          sampling.cell = ci;
          const Expectation e = expect_state_value(
              grid, dist,
              [&](const SystemState& st) { return scheme_energy(scheme, scenario, grid, st); },
              sampling);
          row.objective = e.mean;
          row.std_error = e.std_error;
          row.samples = e.samples;
        } else {
          const double h_min = min_channel_power(dist);
          if (!union_max && scheme != Scheme::unicast_opt)
            union_max = max_total_tiles(grid, dist.users, spec.search_budget);
          switch (scheme) {
            case Scheme::multicast_opt:
              row.objective =
                  optimal_quality(scenario, spec.e_limit_j, h_min, union_max->count);
              break;
            case Scheme::unicast_opt:
              row.objective =
                  baseline1_quality(scenario, spec.e_limit_j, h_min, grid, dist.users);
              break;
            case Scheme::equal_time:
              row.objective =
                  baseline2_quality(scenario, spec.e_limit_j, h_min, union_max->count);
              break;
          }
          if (union_max && !union_max->exact && scheme != Scheme::unicast_opt)
            row.diagnostic = "tile maximum is a sampled lower bound; rate is an upper estimate";
          row.std_error = 0.0;
          row.samples = 0;
        }
      } catch (const std::exception& e) {
        row.objective = std::numeric_limits<double>::quiet_NaN();
        row.diagnostic = e.what();
      }
      row.wall_ms = timer.ms();
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << "sweep_param,value,scheme,objective,stderr,samples,wall_ms\n";
  for (const SweepRow& r : result.rows) {
    os << r.sweep_param << ',' << format_sig12(r.value) << ',' << scheme_name(r.scheme) << ','
       << format_sig12(r.objective) << ',' << format_sig12(r.std_error) << ',' << r.samples << ','
       << format_sig12(r.wall_ms) << '\n';
  }
}

void write_allocation_csv(std::ostream& os, const MulticastPartition& part, const Allocation& a) {
  if (part.groups.size() != a.times_s.size() || a.times_s.size() != a.powers_w.size())
    throw std::invalid_argument("write_allocation_csv: allocation does not match partition");
  os << "group,tiles,receivers,t_s,p_w,energy_j\n";
  for (std::size_t i = 0; i < part.groups.size(); ++i) {
    os << (i + 1) << ',' << part.groups[i].tiles.size() << ',';
    for (std::size_t k = 0; k < part.groups[i].receivers.size(); ++k) {
      if (k) os << ';';
      os << part.groups[i].receivers[k];
    }
    os << ',' << format_sig12(a.times_s[i]) << ',' << format_sig12(a.powers_w[i]) << ','
       << format_sig12(a.times_s[i] * a.powers_w[i]) << '\n';
  }
}

}  // namespace tilecast
