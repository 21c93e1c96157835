#ifndef PERQW_ASYMPTOTICS_HPP
#define PERQW_ASYMPTOTICS_HPP

#include <array>
#include <vector>

#include "perqw/attractors.hpp"
#include "perqw/topology.hpp"
#include "perqw/types.hpp"

namespace perqw {

/// Two-coin state decomposed over the Bell basis
///   psi+- = (|LR> +- |RL>)/sqrt2,  phi+- = (|LL> +- |RR>)/sqrt2,
/// amplitudes (a, b, c, d) with |a|^2+|b|^2+|c|^2+|d|^2 = 1.
struct BellCoinState {
  cxd a, b, c, d;

  BellCoinState(cxd a_, cxd b_, cxd c_, cxd d_);

  /// Amplitudes in the computational coin-pair basis (LL, LR, RL, RR).
  Vector computational() const;

  /// Overlap weight with the psi+ / phi- subspace.
  double q_squared() const { return std::norm(a) + std::norm(d); }
  /// Relative phase of c against real b >= 0 (the (b, q, phi) parameterization).
  double phase_phi() const { return std::arg(c) - std::arg(b == cxd(0) ? cxd(1) : b); }

  /// Build from the (b, q, phi) parameterization: b real >= 0,
  /// c = e^{i phi} sqrt(1-b^2-q^2), remaining weight q on psi+.
  static BellCoinState from_bqphi(double b, double q, double phi);
};

/// Periodic asymptotic orbit; states[k] is the limit along times == k (mod period).
struct AsymptoticCycle {
  int period = 1;
  std::vector<Matrix> states;
};

/// rho_inf(n) = sum_{lambda,i} lambda^n Tr[X_i^dag rho0] X_i over the
/// orthonormal attractor basis. Rejects a basis whose Gram matrix deviates
/// from the identity by more than 1e-10.
Matrix project_asymptotic(const Matrix& rho0, const AttractorBasis& basis, long n);

/// Two-particle initial state |x, coin1, y, coin2> built from a Bell coin pair at sites (x, y).
Vector localized_bell_state(const Topology& t, int x, int y, const BellCoinState& coin);

/// Stationary state c1 I + c2 W + c3 F of a circle with 4 not dividing N:
/// same_site = true uses the displayed (|b|^2, |c|^2, N) coefficients; false
/// gives the coin-independent ((2N+1) I - W - F) / (4N(2N^2+N-1)).
Matrix circle_steady_state(int n_sites, const BellCoinState& coin, bool same_site);

/// Closed-form coefficients (c1, c2, c3) for the same-site circle steady state.
std::array<double, 3> circle_steady_coefficients(int n_sites, const BellCoinState& coin);

/// w(x,y) = sum_{ij} <x,i,y,j|rho|x,i,y,j>; nonnegative, sums to 1.
Eigen::MatrixXd position_distribution(const Matrix& rho, const Topology& t);

/// Partial trace over both position registers, coin-pair basis (LL, LR, RL, RR).
Matrix reduced_coin_state(const Matrix& rho, const Topology& t);

/// Closed-form reduced coin state of the same-site circle steady state.
/// r2..r4 follow the published display; r1 is the trace-consistent value
/// (N^2+N-1) + N(|c|^2-|b|^2) (the displayed 2N^2 leading term fails Tr=1,
/// see report --check-claims).
Matrix circle_reduced_coin_closed_form(int n_sites, const BellCoinState& coin);

/// Length-4 closed-form asymptotic cycle of reduced coin states (period 4,
/// phases 4t..4t+3), a function of amplitudes b and c only. Transcribed
/// verbatim; project_asymptotic is the independent oracle for it and the
/// check-claims report quantifies where the two disagree.
AsymptoticCycle line4_coin_cycle(const BellCoinState& coin);

/// Length-4 closed-form position-distribution cycle (4x4 matrices over a
/// 1/3840 grid), a function of b, c, d. Same verbatim/oracle caveat.
AsymptoticCycle line4_position_cycle(const BellCoinState& coin);

}  // namespace perqw

#endif
