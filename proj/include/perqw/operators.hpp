#ifndef PERQW_OPERATORS_HPP
#define PERQW_OPERATORS_HPP

#include "perqw/percolation.hpp"
#include "perqw/topology.hpp"
#include "perqw/types.hpp"

namespace perqw {

/// 2x2 Hadamard coin, basis (L,R).
Matrix hadamard();
/// 2x2 local reflection sigma_x.
Matrix local_reflection();

/// Global coin C = I_N (x) H, dimension 2N.
Matrix build_coin(const Topology& t);
/// Global reflection R = I_N (x) sigma_x.
Matrix build_reflection(const Topology& t);

/// Shift for a configuration: transport along present edges, local
/// reflection (stay in place, flip coin) at missing edges. The open ends of a
/// line behave as permanently missing edges; the circle wrap edge is real.
Matrix build_shift(const Topology& t, EdgeConfig config);

/// One-step walk unitary U_K = S_K C.
Matrix step_unitary(const Topology& t, EdgeConfig config);

/// Kronecker product u (x) u, particle-1-major indexing.
Matrix two_particle_unitary(const Matrix& u);

Matrix kron(const Matrix& a, const Matrix& b);

/// max |U U^dag - I| entry; 0 for exact unitaries.
double unitarity_residual(const Matrix& u);

/// (u (x) u) X (u (x) u)^dag computed in factored form, O(d^2 m) rather than
/// O(d^3): X is d x d with d = m^2 and u is m x m. Equal to the dense product
/// up to rounding; this is the hot path of residual sweeps and Kraus sums.
Matrix conjugate_two_particle(const Matrix& u, const Matrix& x);

/// u X u^dag (single-particle conjugation, plain dense product).
Matrix conjugate_single(const Matrix& u, const Matrix& x);

/// Apply u (x) u to a two-particle state vector in O(m^3), m = dim(u).
Vector apply_two_particle(const Matrix& u, const Vector& psi);

}  // namespace perqw

#endif
