#ifndef PERQW_REFERENCE_HPP
#define PERQW_REFERENCE_HPP

#include <cstdint>

#include "perqw/channel.hpp"

// Plain serial implementations of the parallel kernels, kept as test oracles.
// They use straight dense products and in-order accumulation; nothing here is
// performance-tuned on purpose.
namespace perqw::reference {

Matrix apply_channel(const Matrix& state, const Topology& t, const PercolationModel& m, int particles);

Matrix trajectory_average(const Vector& pure_state, const Topology& t, const PercolationModel& m,
                          int particles, int steps, std::uint64_t master_seed, std::uint64_t n_trajectories);

double attractor_residual(const Matrix& x, cxd lambda, const Topology& t);

}  // namespace perqw::reference

#endif
