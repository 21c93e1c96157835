#ifndef PERQW_CHANNEL_HPP
#define PERQW_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "perqw/operators.hpp"
#include "perqw/percolation.hpp"
#include "perqw/topology.hpp"
#include "perqw/types.hpp"

namespace perqw {

struct DensityCheck {
  double hermiticity;   // max |rho - rho^dag|
  double trace_dev;     // |Tr rho - 1|
  double min_eigenvalue;
  bool ok(double herm_tol = 1e-12, double tr_tol = 1e-12, double psd_tol = -1e-10) const {
    return hermiticity < herm_tol && trace_dev < tr_tol && min_eigenvalue >= psd_tol;
  }
};

DensityCheck check_density_matrix(const Matrix& rho);

/// Exact Kraus sum Phi(rho) = sum_K p_K U_K rho U_K^dag (one particle) or
/// with U_K (x) U_K (two particles). Per-config terms are computed in
/// parallel and merged pairwise in fixed config order, so the result is
/// bit-identical for any thread count.
Matrix apply_channel(const Matrix& state, const Topology& t, const PercolationModel& m, int particles);

/// t-fold application of apply_channel.
Matrix evolve(const Matrix& state, const Topology& t, const PercolationModel& m, int particles, int steps);

/// One stochastic unraveling: applies U_K (or U_K (x) U_K) for `steps`
/// configurations sampled from the per-(trajectory, step) stream.
Vector sample_trajectory(const Vector& pure_state, const Topology& t, const PercolationModel& m,
                         int particles, int steps, std::uint64_t master_seed, std::uint64_t trajectory_id);

/// Average of |psi_i><psi_i| over trajectories 0..n-1. Trajectories are
/// summed inside fixed-size blocks (in trajectory order) and the block
/// partials are merged by pairwise summation, which both bounds rounding
/// drift and keeps the result independent of the thread count.
Matrix trajectory_average(const Vector& pure_state, const Topology& t, const PercolationModel& m,
                          int particles, int steps, std::uint64_t master_seed, std::uint64_t n_trajectories);

inline constexpr int kSuperoperatorGuardDim = 4096;  // d^2 may not exceed this

/// Dense matrix M with M vec(X) = vec(Phi(X)), column-stacked convention:
/// M = sum_K p_K conj(U_K) (x) U_K. Exists for the completeness oracle only.
Matrix build_superoperator(const Topology& t, const PercolationModel& m, int particles);

/// Step unitaries for every configuration, in ascending config order.
std::vector<Matrix> all_step_unitaries(const Topology& t);

}  // namespace perqw

#endif
