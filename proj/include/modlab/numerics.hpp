#pragma once

// Dense complex linear algebra used by every finite-dimensional operator
// computation: Hermitian spectral data, positive operators, antilinear maps,
// polar decomposition, operator functions and tensor products.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace modlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest singular value.
double op_norm(const ComplexMatrix& a);

/// Max |a_ij|; all comparisons against tolerances in this library use
/// either this or op_norm, as documented at each call.
double max_abs(const ComplexMatrix& a);

bool is_square(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double rel_tol);
bool is_unitary(const ComplexMatrix& a, double tol);

struct SpectralData {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, orthonormal

  ComplexMatrix reconstruct() const;
  /// V f(diag) V* for a scalar function applied to the eigenvalues.
  template <typename F>
  ComplexMatrix apply(F&& f) const {
    ComplexVector d(eigenvalues.size());
    for (Index i = 0; i < eigenvalues.size(); ++i) d(i) = f(eigenvalues(i));
    return eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
  }
};

/// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when
/// ||A - A*|| exceeds tol::herm * ||A||.
SpectralData herm_eig(const ComplexMatrix& a);

/// Positive semidefinite Hermitian operator together with its spectral data.
class HermitianPositive {
 public:
  /// Validates Hermiticity and positivity; eigenvalues within
  /// tol::eig * lambda_max of zero are clamped to zero.
  static HermitianPositive from_matrix(const ComplexMatrix& a);
  static HermitianPositive from_spectral(SpectralData data);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SpectralData& spectral() const { return spectral_; }
  const RealVector& eigenvalues() const { return spectral_.eigenvalues; }
  const ComplexMatrix& eigenvectors() const { return spectral_.eigenvectors; }
  Index dim() const { return matrix_.rows(); }

  double max_eigenvalue() const;
  double min_eigenvalue() const;
  /// eps_logcut: eigenvalues at or below this count as zero.
  double log_cutoff() const;
  bool strictly_positive() const;

  ComplexMatrix sqrt() const;
  /// P^p; negative powers require strict positivity.
  ComplexMatrix power(double p) const;

 private:
  HermitianPositive(ComplexMatrix m, SpectralData s)
      : matrix_(std::move(m)), spectral_(std::move(s)) {}

  ComplexMatrix matrix_;
  SpectralData spectral_;
};

/// Antilinear map v -> M conj(v), stored by its kernel M.
class AntilinearOp {
 public:
  explicit AntilinearOp(ComplexMatrix kernel);

  const ComplexMatrix& kernel() const { return kernel_; }
  Index dim() const { return kernel_.rows(); }

  ComplexVector apply(const ComplexVector& v) const {
    return kernel_ * v.conjugate();
  }
  /// <x, T y> = conj(<T* x, y>) gives kernel M^T.
  AntilinearOp adjoint() const { return AntilinearOp(kernel_.transpose()); }
  bool is_antiunitary(double tol) const { return is_unitary(kernel_, tol); }

 private:
  ComplexMatrix kernel_;
};

// Composition rules: antilinear after antilinear is linear with matrix
// M1 conj(M2); mixed compositions stay antilinear.
ComplexMatrix compose(const AntilinearOp& a, const AntilinearOp& b);
AntilinearOp compose(const AntilinearOp& a, const ComplexMatrix& l);
AntilinearOp compose(const ComplexMatrix& l, const AntilinearOp& a);

struct PolarDecomposition {
  ComplexMatrix isometry;      // V, partial isometry
  HermitianPositive modulus;   // |T| = (T*T)^{1/2}
};

struct AntilinearPolarDecomposition {
  AntilinearOp isometry;
  HermitianPositive modulus;
};

/// T = V |T| from the SVD; singular values at or below
/// tol::logcut * sigma_max are treated as kernel directions.
PolarDecomposition polar_decompose(const ComplexMatrix& t);
AntilinearPolarDecomposition polar_decompose(const AntilinearOp& t);

/// Hermitian logarithm. Throws SingularOperator if any eigenvalue is at or
/// below the log cutoff.
ComplexMatrix mat_log(const HermitianPositive& p);

/// exp(z H) for Hermitian H and complex scalar z.
ComplexMatrix exp_hermitian(const ComplexMatrix& h, Complex z);

/// Delta^{it} = exp(i t log Delta), unitary.
ComplexMatrix unitary_power(const HermitianPositive& delta, double t);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Projector onto the span of the columns of a, rank decided relative to
/// the largest singular value.
ComplexMatrix range_projector(const ComplexMatrix& a, double rel_tol);

/// Numerical rank relative to the largest singular value.
Index numerical_rank(const ComplexMatrix& a, double rel_tol);

/// Orthonormal basis of the null space (columns).
ComplexMatrix null_space(const ComplexMatrix& a, double rel_tol);

}  // namespace modlab
