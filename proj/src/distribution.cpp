#include "tilecast/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace tilecast {

void validate(const StateDistribution& dist) {
  if (dist.users < 1) throw std::invalid_argument("StateDistribution: users must be >= 1");
  if (!(dist.zipf_gamma >= 0.0))
    throw std::invalid_argument("StateDistribution: zipf_gamma must be >= 0");
  if (dist.channel.empty())
    throw std::invalid_argument("StateDistribution: channel point set is empty");
  double total = 0.0;
  for (const ChannelPoint& c : dist.channel) {
    if (!(c.power_w > 0.0) || !std::isfinite(c.power_w))
      throw std::invalid_argument("StateDistribution: channel powers must be positive and finite");
    if (!(c.prob >= 0.0)) throw std::invalid_argument("StateDistribution: channel probabilities must be >= 0");
    total += c.prob;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("StateDistribution: channel probabilities must sum to 1");
}

std::vector<double> zipf_pmf(double gamma, int n) {
  if (n < 1) throw std::invalid_argument("zipf_pmf: n must be >= 1");
  if (!(gamma >= 0.0)) throw std::invalid_argument("zipf_pmf: gamma must be >= 0");
  std::vector<double> p(n);
  double total = 0.0;
  for (int r = 1; r <= n; ++r) {
    p[r - 1] = std::pow(static_cast<double>(r), -gamma);
    total += p[r - 1];
  }
  for (double& v : p) v /= total;
  return p;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t batch) {
  // splitmix64 finalizer applied to a fixed combination of the three keys
  std::uint64_t z = master;
  for (std::uint64_t key : {cell, batch}) {
    z += 0x9e3779b97f4a7c15ull + key * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
  }
  return z;
}

namespace {

std::vector<double> cumulative(const std::vector<double>& pmf) {
  std::vector<double> cdf(pmf.size());
  double run = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    run += pmf[i];
    cdf[i] = run;
  }
  cdf.back() = 1.0;  // guard against rounding in the final bin
  return cdf;
}

std::size_t draw(const std::vector<double>& cdf, double u) {
  return static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

}  // namespace

StateSampler::StateSampler(const GridConfig& cfg, const StateDistribution& dist) : cfg_(cfg) {
  validate(cfg);
  validate(dist);
  users_ = dist.users;
  dir_cdf_ = cumulative(zipf_pmf(dist.zipf_gamma, cfg.direction_count()));
  std::vector<double> chan_pmf;
  chan_pmf.reserve(dist.channel.size());
  for (const ChannelPoint& c : dist.channel) {
    chan_pmf.push_back(c.prob);
    chan_power_.push_back(c.power_w);
  }
  chan_cdf_ = cumulative(chan_pmf);
}

SystemState StateSampler::operator()(Rng& rng) const {
  SystemState st;
  st.view.reserve(users_);
  st.channels.reserve(users_);
  for (int u = 0; u < users_; ++u)
    st.view.push_back(direction_from_rank(cfg_, static_cast<int>(draw(dir_cdf_, rng.uniform01())) + 1));
  for (int u = 0; u < users_; ++u) st.channels.push_back(chan_power_[draw(chan_cdf_, rng.uniform01())]);
  return st;
}

SystemState sample_state(const GridConfig& cfg, const StateDistribution& dist, Rng& rng) {
  return StateSampler(cfg, dist)(rng);
}

}  // namespace tilecast
