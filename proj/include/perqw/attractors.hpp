#ifndef PERQW_ATTRACTORS_HPP
#define PERQW_ATTRACTORS_HPP

#include <map>
#include <string>
#include <vector>

#include "perqw/operators.hpp"
#include "perqw/topology.hpp"
#include "perqw/types.hpp"

namespace perqw {

/// Pure state with U_K v = eigenvalue * v for every configuration K.
struct CommonEigenstate {
  Vector vector;
  cxd eigenvalue;
  std::string label;  // phi+, phi-, Phi++, Phi--, Phi+-, Phi-+, Phi_w, Phi_w'
};

/// Operator X with U_K X U_K^dag = lambda X for every configuration.
struct Attractor {
  Matrix op;
  cxd eigenvalue;        // one of {1, i, -i, -1}
  std::string provenance;  // "p(alpha,beta)", "non-p(k)", "oracle"
};

/// Orthonormal attractors grouped by eigenvalue. Keys are the exact
/// lattice eigenvalues {1, i, -i, -1}; sectors may be empty.
struct AttractorBasis {
  std::vector<std::pair<cxd, std::vector<Attractor>>> sectors;

  int total() const {
    int n = 0;
    for (const auto& s : sectors) n += static_cast<int>(s.second.size());
    return n;
  }
  std::map<std::string, int> sector_sizes() const;
};

std::string eigenvalue_key(cxd lambda);  // "1", "i", "-i", "-1"

/// One-particle common eigenstates: phi+ (lambda = (1+i)/sqrt2) and phi-
/// (lambda = (1-i)/sqrt2) on a line or a circle of length 4k; empty otherwise.
/// phi+ carries position phase (+i)^s on coin |+> = (i|L>+|R>)/sqrt2 and
/// phi- carries (-i)^s on |-> = (-i|L>+|R>)/sqrt2, the unique phases
/// compatible with the shift conditions.
std::vector<CommonEigenstate> common_eigenstates_1p(const Topology& t);

/// Two-particle set: {Phi++, Phi--, Phi+-, Phi-+, Phi_w'} on a line or a
/// circle of length 4k; {Phi_w} alone on other circles. Orthonormal.
std::vector<CommonEigenstate> common_eigenstates_2p(const Topology& t);

/// The non-orthogonalized Phi_w: weight 1/sqrt(2N) on every |s,L,s,L> and |s,R,s,R>.
Vector phi_w_vector(const Topology& t);

/// Outer products |Phi_a><Phi_b| over the common-eigenstate set, eigenvalue
/// alpha * conj(beta). 25 elements for line / circle-4k, 1 otherwise.
std::vector<Attractor> build_p_attractors(const Topology& t);

/// Tensor products of one-particle attractors with at least one identity
/// factor, plus their SWAP multiples: 18 elements for line / circle-4k,
/// {I, W} otherwise.
std::vector<Attractor> build_non_p_attractors(const Topology& t);

/// SWAP of the two particles' full (position, coin) registers.
Matrix swap_operator(const Topology& t);

/// F = 2N |Phi_w><Phi_w| = sum |x,i,x,i><y,j,y,j|.
Matrix f_operator(const Topology& t);

/// Per-sector modified Gram-Schmidt (one reorthogonalization pass) over the
/// analytic attractors, p-attractors first, in construction order. Verifies
/// the global Gram matrix afterwards; a vector whose post-projection norm
/// falls below 1e-10 means the analytic set was dependent and is an error.
AttractorBasis orthonormal_basis(const Topology& t);

/// max over configs of |U_K X U_K^dag - lambda X|_max (two-particle X).
double attractor_residual(const Matrix& x, cxd lambda, const Topology& t);
/// Same for a single-particle operator.
double attractor_residual_1p(const Matrix& x, cxd lambda, const Topology& t);

/// Parameterized coin-condition block for the given eigenvalue; params size
/// 6 / 4 / 4 / 2 for lambda = 1 / i / -i / -1. Satisfies
/// (RH (x) RH) B (RH (x) RH)^dag = lambda B for all parameter values.
Matrix coin_block(cxd lambda, const std::vector<cxd>& params);

/// Largest violation of the inter-block element equalities that every
/// attractor must satisfy, enumerated per index-coincidence pattern
/// (16-element chain for distinct indices, splitting into 2/4/4/8 chains as
/// position indices coincide). Line: shifted indices range over [1, N-1];
/// circle: all indices mod N.
double check_shift_conditions(const Matrix& x, const Topology& t);

/// Violation of the common-eigenstate conditions R C v = alpha v (coin) and
/// S_K^dag v = S_L^dag v (shift) for a one- or two-particle state.
double coin_condition_residual(const Vector& v, cxd alpha, const Topology& t, int particles);
double shift_condition_residual(const Vector& v, const Topology& t, int particles);

struct OracleResult {
  std::map<std::string, int> dimensions;              // eigenvalue key -> null-space dim
  std::map<std::string, std::vector<Matrix>> bases;   // orthonormal kernel bases
  bool spectrum_checked = false;
  double worst_stray_modulus_gap = 0.0;  // max |1-|mu|| gap violation among stray unit-circle eigenvalues
};

inline constexpr int kOracle2pMaxSites = 4;
inline constexpr int kOracle1pMaxSites = 8;

/// Brute-force attractor space: for each candidate lambda in {1, i, -i, -1}
/// stacks the constraints (U_K . U_K^dag - lambda) X = 0 over all configs and
/// computes the common kernel (incremental basis reduction + SVD, relative
/// cutoff 1e-9). For two-particle N <= 3 also eigendecomposes the dense
/// superoperator and confirms no modulus-1 eigenvalues outside the candidate
/// set (window 1e-8).
OracleResult brute_force_attractor_space(const Topology& t, int particles);

}  // namespace perqw

#endif
