#include "perqw/operators.hpp"

#include <cmath>

namespace perqw {

Matrix hadamard() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Matrix local_reflection() {
  Matrix r(2, 2);
  r << 0, 1, 1, 0;
  return r;
}

Matrix build_coin(const Topology& t) {
  return kron(Matrix::Identity(t.n_sites, t.n_sites), hadamard());
}

Matrix build_reflection(const Topology& t) {
  return kron(Matrix::Identity(t.n_sites, t.n_sites), local_reflection());
}

Matrix build_shift(const Topology& t, EdgeConfig config) {
  const int n = t.n_sites;
  if (config.bits >> t.edge_count())
    throw InvalidInput("configuration references edges beyond the topology");

  Matrix s = Matrix::Zero(t.dim1(), t.dim1());
  for (int m = 0; m < n; ++m) {
    // right mover at m rides edge (m, m+1); on a line that edge only exists for m < N-1
    const bool right_edge_exists = t.is_circle() || m < n - 1;
    if (right_edge_exists && config.has(m)) {
      s(flat_index((m + 1) % n, Coin::R), flat_index(m, Coin::R)) = 1;
    } else {
      s(flat_index(m, Coin::L), flat_index(m, Coin::R)) = 1;  // reflect in place
    }
    // left mover at m rides edge (m-1, m)
    const bool left_edge_exists = t.is_circle() || m > 0;
    const int left_edge = (m - 1 + n) % n;
    if (left_edge_exists && config.has(left_edge)) {
      s(flat_index((m - 1 + n) % n, Coin::L), flat_index(m, Coin::L)) = 1;
    } else {
      s(flat_index(m, Coin::R), flat_index(m, Coin::L)) = 1;
    }
  }
  return s;
}

Matrix step_unitary(const Topology& t, EdgeConfig config) {
  return build_shift(t, config) * build_coin(t);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix two_particle_unitary(const Matrix& u) {
  if (u.rows() != u.cols()) throw InvalidInput("two_particle_unitary needs a square matrix");
  return kron(u, u);
}

double unitarity_residual(const Matrix& u) {
  return max_abs(u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()));
}

Matrix conjugate_two_particle(const Matrix& u, const Matrix& x) {
  const Eigen::Index m = u.rows();
  const Eigen::Index d = m * m;
  if (x.rows() != d || x.cols() != d) throw InvalidInput("operand is not a two-particle operator");

  // Column r of X, viewed column-major as an m x m block M with
  // M(b, a) = X(a*m+b, r), transforms as M -> U M U^T under (U (x) U) X.
  Matrix left(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    Eigen::Map<const Matrix> block(x.col(r).data(), m, m);
    Eigen::Map<Matrix> out(left.col(r).data(), m, m);
    out = u * block * u.transpose();
  }
  // Right side: Y (U (x) U)^dag = ((U (x) U) Y^dag)^dag.
  Matrix right(d, d);
  Matrix left_adj = left.adjoint();
  for (Eigen::Index r = 0; r < d; ++r) {
    Eigen::Map<const Matrix> block(left_adj.col(r).data(), m, m);
    Eigen::Map<Matrix> out(right.col(r).data(), m, m);
    out = u * block * u.transpose();
  }
  return right.adjoint();
}

Matrix conjugate_single(const Matrix& u, const Matrix& x) { return u * x * u.adjoint(); }

Vector apply_two_particle(const Matrix& u, const Vector& psi) {
  const Eigen::Index m = u.rows();
  if (psi.size() != m * m) throw InvalidInput("state dimension is not dim(u)^2");
  // psi(a*m+b) viewed column-major as P(b,a): (U (x) U) psi  <->  U P U^T.
  Eigen::Map<const Matrix> p(psi.data(), m, m);
  Vector out(m * m);
  Eigen::Map<Matrix>(out.data(), m, m) = u * p * u.transpose();
  return out;
}

}  // namespace perqw
