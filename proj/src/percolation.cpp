#include "perqw/percolation.hpp"

namespace perqw {

PercolationModel PercolationModel::uniform(const Topology& t, double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("break probability must lie strictly in (0,1)");
  return {std::vector<double>(static_cast<size_t>(t.edge_count()), p)};
}

PercolationModel PercolationModel::per_edge(std::vector<double> p) {
  for (double v : p)
    if (!(v > 0.0 && v < 1.0)) throw InvalidInput("break probability must lie strictly in (0,1)");
  return {std::move(p)};
}

std::vector<EdgeConfig> enumerate_configs(const Topology& t) {
  const int ne = t.edge_count();
  if (ne > kEnumerationGuard)
    throw GuardError("edge count " + std::to_string(ne) + " exceeds the enumeration guard of " +
                     std::to_string(kEnumerationGuard));
  std::vector<EdgeConfig> out;
  out.reserve(1u << ne);
  for (std::uint32_t bits = 0; bits < (1u << ne); ++bits) out.push_back({bits});
  return out;
}

double config_probability(const PercolationModel& m, const Topology& t, EdgeConfig k) {
  if (m.edge_count() != t.edge_count())
    throw InvalidInput("percolation model does not match the topology edge count");
  double p = 1.0;
  for (int e = 0; e < t.edge_count(); ++e)
    p *= k.has(e) ? (1.0 - m.break_probabilities[e]) : m.break_probabilities[e];
  return p;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t x) { return splitmix64(x); }

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t trajectory_id) {
  return mix64(master ^ mix64(trajectory_id ^ 0xA3EC4E93C5A1D3B7ull));
}

EdgeConfig sample_config(const PercolationModel& m, std::uint64_t stream_seed, std::uint64_t step_index) {
  std::uint64_t state = mix64(stream_seed ^ mix64(step_index ^ 0x632BE59BD9B4E019ull));
  EdgeConfig k;
  for (int e = 0; e < m.edge_count(); ++e) {
    const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    if (u >= m.break_probabilities[e]) k.set(e);  // broken with probability p_e
  }
  return k;
}

}  // namespace perqw
