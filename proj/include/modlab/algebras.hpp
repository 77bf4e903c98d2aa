#pragma once

// Finite-dimensional unital *-algebras of matrices, their commutants, states
// given by density matrices, and the GNS construction.

#include <vector>

#include "modlab/numerics.hpp"

namespace modlab {

/// Unital *-closed span of n x n matrices, held as a Hilbert-Schmidt
/// orthonormal basis.
class OperatorAlgebra {
 public:
  /// Orthonormalizes the span of `elements` and validates that it contains
  /// the identity and is closed under adjoint and product (NotAnAlgebra).
  static OperatorAlgebra from_spanning_set(const std::vector<ComplexMatrix>& elements);

  /// M_n, spanned by the matrix units.
  static OperatorAlgebra full(Index n);
  /// C * 1 on C^n.
  static OperatorAlgebra scalars(Index n);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }

  /// Hilbert-Schmidt coefficients <B_i, X> of the projection onto the span.
  ComplexVector coefficients(const ComplexMatrix& x) const;
  ComplexMatrix from_coefficients(const ComplexVector& c) const;
  /// Frobenius distance from x to the span.
  double projection_residual(const ComplexMatrix& x) const;
  /// residual <= rel_tol * max(||x||_F, 1).
  bool contains(const ComplexMatrix& x, double rel_tol) const;
  /// Mutual containment of bases.
  bool same_span(const OperatorAlgebra& other, double rel_tol) const;

 private:
  OperatorAlgebra(Index n, std::vector<ComplexMatrix> basis, ComplexMatrix frame)
      : ambient_dim_(n), basis_(std::move(basis)), frame_(std::move(frame)) {}

  Index ambient_dim_;
  std::vector<ComplexMatrix> basis_;
  ComplexMatrix frame_;  // n^2 x d, column i = vec(B_i)
};

/// Smallest unital *-algebra containing the generators. Grows the span
/// level by level (words of increasing length), re-orthonormalizing after
/// each level; more than 20 growing levels raises ClosureDidNotConverge.
OperatorAlgebra generate_algebra(const std::vector<ComplexMatrix>& generators);

/// {X : X B = B X for every basis element B}, from the null space of the
/// stacked commutator maps.
OperatorAlgebra commutant(const OperatorAlgebra& a);

/// A == A'' as spans. Always true for a valid algebra in finite dimension.
bool is_von_neumann(const OperatorAlgebra& a);

/// State omega(A) = Tr(rho A) given by an ambient density matrix.
class AlgebraState {
 public:
  /// Validates Hermiticity, positivity and unit trace (InvalidState).
  explicit AlgebraState(const ComplexMatrix& density);
  /// Vector state |psi><psi| / <psi, psi>.
  static AlgebraState from_vector(const ComplexVector& psi);
  static AlgebraState maximally_mixed(Index n);

  Index ambient_dim() const { return density_.dim(); }
  const HermitianPositive& density() const { return density_; }
  Complex operator()(const ComplexMatrix& a) const;

 private:
  HermitianPositive density_;
};

/// sum_j w_j rho_j. BadWeights when a weight is negative or they do not
/// sum to one.
AlgebraState convex_combine(const std::vector<AlgebraState>& states,
                            const std::vector<double>& weights);

struct GnsData {
  Index gns_dim = 0;
  Index null_rank = 0;
  ComplexMatrix gram;                // omega(B_i* B_j)
  std::vector<ComplexMatrix> rep;    // pi(B_i), gns_dim x gns_dim
  ComplexVector cyclic_vector;       // Omega = [1]

  // Map from algebra coefficients to pi: pi(A) = coords * T(A) * synth,
  // where T(A)_{lj} = <B_l, A B_j>.
  ComplexMatrix coords;  // gns_dim x d
  ComplexMatrix synth;   // d x gns_dim
};

GnsData gns_construct(const OperatorAlgebra& a, const AlgebraState& omega);

/// pi_omega(x) for an arbitrary element of the algebra.
ComplexMatrix gns_represent(const GnsData& gns, const OperatorAlgebra& a, const ComplexMatrix& x);

struct GnsResiduals {
  double reconstruction = 0.0;   // max_i |omega(B_i) - <Omega, pi(B_i) Omega>|
  double multiplicativity = 0.0; // max_ij ||pi(B_i B_j) - pi(B_i) pi(B_j)||
  double unit = 0.0;             // ||pi(1) - 1||
  double adjoint = 0.0;          // max_i ||pi(B_i*) - pi(B_i)*||
  Index cyclic_rank = 0;         // dim span{pi(B_i) Omega}
};

GnsResiduals gns_residuals(const GnsData& gns, const OperatorAlgebra& a,
                           const AlgebraState& omega);

/// Irreducibility of the GNS representation: its commutant is C * 1.
bool is_pure(const OperatorAlgebra& a, const AlgebraState& omega);

/// The Gram matrix omega(B_i* B_j) has no eigenvalue at or below eps_gram.
bool is_faithful(const OperatorAlgebra& a, const AlgebraState& omega);

/// Column-major vectorization helpers shared with the modular code.
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, Index n);

}  // namespace modlab
