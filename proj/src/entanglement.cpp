#include "perqw/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace perqw {

Matrix partial_transpose(const Matrix& rho, int d1, int d2) {
  if (rho.rows() != rho.cols() || rho.rows() != static_cast<Eigen::Index>(d1) * d2)
    throw InvalidInput("partial transpose: dimension mismatch");
  Matrix out(rho.rows(), rho.cols());
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b)
      for (int c = 0; c < d1; ++c)
        for (int e = 0; e < d2; ++e)
          out(a * d2 + e, c * d2 + b) = rho(a * d2 + b, c * d2 + e);
  return out;
}

PTSpectrum pt_spectrum(const Matrix& rho, int d1, int d2) {
  const Matrix pt = partial_transpose(rho, d1, d2);
  Eigen::SelfAdjointEigenSolver<Matrix> es((pt + pt.adjoint()) / 2.0);
  PTSpectrum s;
  s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  s.is_ppt = s.eigenvalues.front() >= kNptThreshold;
  s.negativity = 0;
  for (double v : s.eigenvalues)
    if (v < 0) s.negativity -= v;
  return s;
}

double negativity(const Matrix& rho, int d1, int d2) { return pt_spectrum(rho, d1, d2).negativity; }

double concurrence(const Matrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw InvalidInput("concurrence needs a two-qubit state");
  Matrix yy(4, 4);  // sigma_y (x) sigma_y
  yy << 0, 0, 0, -1,
      0, 0, 1, 0,
      0, 1, 0, 0,
      -1, 0, 0, 0;
  const Matrix rho = (rho4 + rho4.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  Matrix sqrt_rho = es.operatorSqrt();
  const Matrix rho_tilde = yy * rho.conjugate() * yy;
  // Hermitian form sqrt(rho) rho_tilde sqrt(rho): same spectrum as rho rho_tilde.
  Eigen::SelfAdjointEigenSolver<Matrix> es2(sqrt_rho * rho_tilde * sqrt_rho);
  Eigen::Vector4d mu = es2.eigenvalues().cwiseMax(0.0);
  std::sort(mu.data(), mu.data() + 4, std::greater<double>());
  const double c = std::sqrt(mu(0)) - std::sqrt(mu(1)) - std::sqrt(mu(2)) - std::sqrt(mu(3));
  return std::max(c, 0.0);
}

double concurrence_closed_form(double b, double q, double phi) {
  const double rest = 1.0 - b * b - q * q;
  if (b < 0 || q < 0 || rest < -1e-12) throw InvalidInput("require b, q >= 0 and b^2 + q^2 <= 1");
  const double q2 = q * q;
  const double s2 = std::sin(phi) * std::sin(phi);
  const double alpha = 25.0 - 34.0 * q2 + 13.0 * q2 * q2 - 72.0 * b * b * std::max(rest, 0.0) * s2;
  const double beta = 7.0 + 2.0 * q2 - 5.0 * q2 * q2;
  const double disc = std::sqrt(std::max(alpha * alpha - beta * beta, 0.0));
  const double val =
      (std::sqrt(std::max(alpha + disc, 0.0)) - std::sqrt(std::max(alpha - disc, 0.0)) - 4.0 * (1.0 + q2)) / 12.0;
  return std::max(val, 0.0);
}

bool npt_region(double b, double q, double phi) {
  const double rest = 1.0 - b * b - q * q;
  if (b < 0 || q < 0 || rest < -1e-12) throw InvalidInput("require b, q >= 0 and b^2 + q^2 <= 1");
  const double q2 = q * q;
  const double lhs = b * b * std::max(rest, 0.0) * std::sin(phi) * std::sin(phi);
  const double rhs = (5.0 - 26.0 * q2 + 5.0 * q2 * q2) / 36.0;
  return lhs < rhs;
}

}  // namespace perqw
