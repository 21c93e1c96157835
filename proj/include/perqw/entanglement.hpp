#ifndef PERQW_ENTANGLEMENT_HPP
#define PERQW_ENTANGLEMENT_HPP

#include <vector>

#include "perqw/types.hpp"

namespace perqw {

inline constexpr double kNptThreshold = -1e-10;  // below this a PT eigenvalue counts as negative

/// Transpose on the second tensor factor of a d1 x d2 bipartition.
Matrix partial_transpose(const Matrix& rho, int d1, int d2);

struct PTSpectrum {
  std::vector<double> eigenvalues;  // ascending
  bool is_ppt;
  double negativity;  // sum of |negative eigenvalues|
};

PTSpectrum pt_spectrum(const Matrix& rho, int d1, int d2);

double negativity(const Matrix& rho, int d1, int d2);

/// Wootters concurrence of a two-qubit state, evaluated through the
/// Hermitian form sqrt(rho) (sy x sy) rho^* (sy x sy) sqrt(rho).
double concurrence(const Matrix& rho4);

/// Closed-form concurrence of the length-4 asymptotic coin cycle in the
/// (b, q, phi) parameterization.
double concurrence_closed_form(double b, double q, double phi);

/// Closed-form NPT condition b^2(1-b^2-q^2) sin^2 phi < (5-26q^2+5q^4)/36.
bool npt_region(double b, double q, double phi);

}  // namespace perqw

#endif
