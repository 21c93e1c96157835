#ifndef PERQW_TYPES_HPP
#define PERQW_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace perqw {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kOrthoTol = 1e-10;     // Gram-matrix deviation allowed for an "orthonormal" basis
inline constexpr double kResidualTol = 1e-10;  // attractor / eigenstate defining-equation residual
inline constexpr double kRankCutoff = 1e-9;    // relative singular-value cutoff for rank decisions

// Thrown when an input violates a documented size guard (CLI exit code 3).
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on dimension/shape mismatches and invalid argument values (CLI exit code 2).
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical self-check fails (CLI exit code 1).
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hilbert-Schmidt inner product <A,B> = Tr(A^dag B).
inline cxd hs_inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace();
}

inline double hs_norm(const Matrix& a) { return a.norm(); }

inline double hs_distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace perqw

#endif
