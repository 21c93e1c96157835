#ifndef PERQW_PERCOLATION_HPP
#define PERQW_PERCOLATION_HPP

#include <cstdint>
#include <vector>

#include "perqw/topology.hpp"
#include "perqw/types.hpp"

namespace perqw {

/// Subset of edges present during one time step, as a bitset over edge indices.
struct EdgeConfig {
  std::uint32_t bits = 0;

  bool has(int edge) const { return (bits >> edge) & 1u; }
  void set(int edge) { bits |= (1u << edge); }
  int count() const { return __builtin_popcount(bits); }

  static EdgeConfig empty() { return {}; }
  static EdgeConfig full(int n_edges) { return {n_edges >= 32 ? ~0u : ((1u << n_edges) - 1u)}; }

  bool operator==(const EdgeConfig& o) const { return bits == o.bits; }
};

/// Per-edge break probabilities, each strictly inside (0,1).
struct PercolationModel {
  std::vector<double> break_probabilities;

  static PercolationModel uniform(const Topology& t, double p);
  static PercolationModel per_edge(std::vector<double> p);

  int edge_count() const { return static_cast<int>(break_probabilities.size()); }
};

inline constexpr int kEnumerationGuard = 24;  // max edge count for exhaustive enumeration

/// All 2^|E| configurations in ascending bitset order.
std::vector<EdgeConfig> enumerate_configs(const Topology& t);

/// prod_{e in K}(1-p_e) * prod_{e not in K} p_e ; sums to 1 over all configs.
double config_probability(const PercolationModel& m, const Topology& t, EdgeConfig k);

// Deterministic seed mixing (splitmix64). A per-stream seed is derived as
//   s0 = mix(master ^ mix(trajectory_id)); stream for step t starts at
//   mix(s0 ^ mix(step)) and yields one uniform double per edge.
// This is the documented replay contract: identical (master, trajectory, step)
// always produce the identical configuration, on any platform/thread count.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t trajectory_id);

/// One Bernoulli draw per edge: edge broken iff u < p_e.
EdgeConfig sample_config(const PercolationModel& m, std::uint64_t stream_seed, std::uint64_t step_index);

}  // namespace perqw

#endif
