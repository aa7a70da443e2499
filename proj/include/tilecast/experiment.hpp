#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "tilecast/baselines.hpp"
#include "tilecast/distribution.hpp"

namespace tilecast {

/// Transmission schemes the experiment engine can compare.
enum class Scheme {
  multicast_opt,  ///< optimal time and power over the multicast partition
  unicast_opt,    ///< optimal time and power, one group per user
  equal_time,     ///< multicast partition, equal time per tile
};

std::string_view scheme_name(Scheme s);

enum class SweepParam { zipf_gamma, path_loss };
enum class SweepObjective { energy, quality };

/// One sweep: a parameter axis, the schemes to run, and the objective.
/// For path-loss sweeps the distribution's channel powers are treated as a
/// per-unit shape and scaled by each swept value; for gamma sweeps they are
/// absolute and the Zipf exponent is overridden per value.
struct SweepSpec {
  SweepParam param = SweepParam::zipf_gamma;
  std::vector<double> values;
  std::vector<Scheme> schemes = {Scheme::multicast_opt, Scheme::unicast_opt, Scheme::equal_time};
  SweepObjective objective = SweepObjective::energy;
  SamplingSpec::Mode mode = SamplingSpec::Mode::automatic;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double e_limit_j = 0.1;            ///< quality objective only
  long long search_budget = 2'000'000;
};

void validate(const SweepSpec& spec);

struct SweepRow {
  std::string sweep_param;
  double value = 0.0;
  Scheme scheme = Scheme::multicast_opt;
  double objective = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  double wall_ms = 0.0;
  std::string diagnostic;  ///< non-empty when the cell aborted or is approximate
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Runs every (value, scheme) cell. Schemes at the same swept value share
/// one sample stream keyed by the value's cell index, so per-state
/// dominance between schemes carries over to the reported means. A solver
/// failure aborts only its own cell and is recorded in the row diagnostic.
SweepResult run_sweep(const SweepSpec& spec, const ScenarioConfig& scenario,
                      const GridConfig& grid, const StateDistribution& dist);

/// CSV with header sweep_param,value,scheme,objective,stderr,samples,wall_ms.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

/// CSV with header group,tiles,receivers,t_s,p_w,energy_j; tiles is the
/// group's tile count and receivers a ';'-joined user list.
void write_allocation_csv(std::ostream& os, const MulticastPartition& part, const Allocation& a);

/// Shortest decimal form with 12 significant digits.
std::string format_sig12(double v);

}  // namespace tilecast
