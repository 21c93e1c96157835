#include "perqw/reference.hpp"

namespace perqw::reference {

Matrix apply_channel(const Matrix& state, const Topology& t, const PercolationModel& m, int particles) {
  const auto configs = enumerate_configs(t);
  Matrix out = Matrix::Zero(state.rows(), state.cols());
  for (auto k : configs) {
    Matrix u = step_unitary(t, k);
    if (particles == 2) u = two_particle_unitary(u);
    if (u.rows() != state.rows()) throw InvalidInput("state dimension mismatch");
    out += config_probability(m, t, k) * (u * state * u.adjoint());
  }
  return out;
}

Matrix trajectory_average(const Vector& pure_state, const Topology& t, const PercolationModel& m,
                          int particles, int steps, std::uint64_t master_seed, std::uint64_t n_trajectories) {
  Matrix acc = Matrix::Zero(pure_state.size(), pure_state.size());
  for (std::uint64_t id = 0; id < n_trajectories; ++id) {
    const Vector psi = sample_trajectory(pure_state, t, m, particles, steps, master_seed, id);
    acc += psi * psi.adjoint();
  }
  return acc / static_cast<double>(n_trajectories);
}

double attractor_residual(const Matrix& x, cxd lambda, const Topology& t) {
  double worst = 0;
  for (auto k : enumerate_configs(t)) {
    const Matrix u2 = two_particle_unitary(step_unitary(t, k));
    worst = std::max(worst, max_abs(u2 * x * u2.adjoint() - lambda * x));
  }
  return worst;
}

}  // namespace perqw::reference
