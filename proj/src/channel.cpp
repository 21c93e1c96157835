#include "perqw/channel.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace perqw {

namespace {

// Merge a list of addends by pairwise summation in fixed order.
Matrix pairwise_merge(std::vector<Matrix>& terms) {
  if (terms.empty()) throw InvalidInput("nothing to merge");
  for (size_t stride = 1; stride < terms.size(); stride *= 2)
    for (size_t i = 0; i + stride < terms.size(); i += 2 * stride) terms[i] += terms[i + stride];
  return std::move(terms[0]);
}

void check_particles(int particles) {
  if (particles != 1 && particles != 2) throw InvalidInput("particles must be 1 or 2");
}

}  // namespace

DensityCheck check_density_matrix(const Matrix& rho) {
  DensityCheck c;
  c.hermiticity = max_abs(rho - rho.adjoint());
  c.trace_dev = std::abs(rho.trace() - cxd(1.0));
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

std::vector<Matrix> all_step_unitaries(const Topology& t) {
  const auto configs = enumerate_configs(t);
  std::vector<Matrix> us;
  us.reserve(configs.size());
  for (auto k : configs) us.push_back(step_unitary(t, k));
  return us;
}

Matrix apply_channel(const Matrix& state, const Topology& t, const PercolationModel& m, int particles) {
  check_particles(particles);
  const int d = particles == 1 ? t.dim1() : t.dim2();
  if (state.rows() != d || state.cols() != d) throw InvalidInput("state dimension mismatch");

  const auto configs = enumerate_configs(t);
  std::vector<Matrix> terms(configs.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < static_cast<int>(configs.size()); ++i) {
    const Matrix u = step_unitary(t, configs[i]);
    const double p = config_probability(m, t, configs[i]);
    terms[i] = p * (particles == 1 ? conjugate_single(u, state) : conjugate_two_particle(u, state));
  }
  return pairwise_merge(terms);
}

Matrix evolve(const Matrix& state, const Topology& t, const PercolationModel& m, int particles, int steps) {
  if (steps < 0) throw InvalidInput("step count must be nonnegative");
  Matrix rho = state;
  for (int s = 0; s < steps; ++s) rho = apply_channel(rho, t, m, particles);
  return rho;
}

Vector sample_trajectory(const Vector& pure_state, const Topology& t, const PercolationModel& m,
                         int particles, int steps, std::uint64_t master_seed, std::uint64_t trajectory_id) {
  check_particles(particles);
  const int d = particles == 1 ? t.dim1() : t.dim2();
  if (pure_state.size() != d) throw InvalidInput("state dimension mismatch");
  if (std::abs(pure_state.norm() - 1.0) > 1e-10) throw InvalidInput("trajectory input must be normalized");

  const std::uint64_t stream = derive_stream_seed(master_seed, trajectory_id);
  Vector psi = pure_state;
  for (int s = 0; s < steps; ++s) {
    const EdgeConfig k = sample_config(m, stream, static_cast<std::uint64_t>(s));
    const Matrix u = step_unitary(t, k);
    psi = particles == 1 ? Vector(u * psi) : apply_two_particle(u, psi);
  }
  return psi;
}

Matrix trajectory_average(const Vector& pure_state, const Topology& t, const PercolationModel& m,
                          int particles, int steps, std::uint64_t master_seed, std::uint64_t n_trajectories) {
  check_particles(particles);
  if (n_trajectories == 0) throw InvalidInput("need at least one trajectory");
  const int d = particles == 1 ? t.dim1() : t.dim2();

  // Fixed block decomposition (independent of thread count): each block sums
  // its trajectories in order; block partials then merge pairwise.
  const std::uint64_t block_size = 256;
  const std::uint64_t n_blocks = (n_trajectories + block_size - 1) / block_size;
  std::vector<Matrix> partials(n_blocks);

#pragma omp parallel for schedule(dynamic)
  for (long long b = 0; b < static_cast<long long>(n_blocks); ++b) {
    Matrix acc = Matrix::Zero(d, d);
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * block_size;
    const std::uint64_t hi = std::min(lo + block_size, n_trajectories);
    for (std::uint64_t id = lo; id < hi; ++id) {
      const Vector psi = sample_trajectory(pure_state, t, m, particles, steps, master_seed, id);
      acc.noalias() += psi * psi.adjoint();
    }
    partials[b] = std::move(acc);
  }
  return pairwise_merge(partials) / static_cast<double>(n_trajectories);
}

Matrix build_superoperator(const Topology& t, const PercolationModel& m, int particles) {
  check_particles(particles);
  const int d = particles == 1 ? t.dim1() : t.dim2();
  // The matrix is d^2 x d^2; cap that at 4096 x 4096 (two particles up to
  // N=4, one particle up to N=32).
  if (d * d > kSuperoperatorGuardDim)
    throw GuardError("superoperator dimension " + std::to_string(d) + "^2 exceeds guard " +
                     std::to_string(kSuperoperatorGuardDim));

  const auto configs = enumerate_configs(t);
  Matrix super = Matrix::Zero(d * d, d * d);
  for (auto k : configs) {
    Matrix u = step_unitary(t, k);
    if (particles == 2) u = two_particle_unitary(u);
    super += config_probability(m, t, k) * kron(u.conjugate(), u);  // column-stacked vec convention
  }
  return super;
}

}  // namespace perqw
