#include "modlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "modlab/error.hpp"
#include "modlab/tolerances.hpp"

namespace modlab {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (!is_square(a)) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected a square matrix, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

Eigen::BDCSVD<ComplexMatrix> full_svd(const ComplexMatrix& a) {
  return Eigen::BDCSVD<ComplexMatrix>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

Index rank_from(const RealVector& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

// Singular values come out descending; spectral data is stored ascending.
SpectralData ascending(const RealVector& values, const ComplexMatrix& vectors) {
  const Index n = values.size();
  SpectralData s{RealVector(n), ComplexMatrix(vectors.rows(), n)};
  for (Index i = 0; i < n; ++i) {
    s.eigenvalues(i) = values(n - 1 - i);
    s.eigenvectors.col(i) = vectors.col(n - 1 - i);
  }
  return s;
}

}  // namespace

double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_square(const ComplexMatrix& a) { return a.rows() == a.cols() && a.rows() > 0; }

bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (!is_square(a)) return false;
  return (a - a.adjoint()).norm() <= rel_tol * std::max(a.norm(), 1e-300);
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (!is_square(a)) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(a.rows(), a.cols());
  return max_abs(a.adjoint() * a - id) <= tol && max_abs(a * a.adjoint() - id) <= tol;
}

ComplexMatrix SpectralData::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralData herm_eig(const ComplexMatrix& a) {
  require_square(a, "herm_eig");
  if (!a.allFinite()) throw Error(ErrorCode::NotHermitian, "herm_eig: non-finite entries");
  const double asym = (a - a.adjoint()).norm();
  const double scale = a.norm();
  if (asym > tol::herm * scale) {
    throw Error(ErrorCode::NotHermitian,
                "herm_eig: ||A - A*|| = " + std::to_string(asym) + " exceeds tolerance");
  }
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  return SpectralData{solver.eigenvalues(), solver.eigenvectors()};
}

HermitianPositive HermitianPositive::from_matrix(const ComplexMatrix& a) {
  return from_spectral(herm_eig(a));
}

HermitianPositive HermitianPositive::from_spectral(SpectralData data) {
  const Index n = data.eigenvalues.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "HermitianPositive: empty operator");
  const double top = data.eigenvalues.cwiseAbs().maxCoeff();
  for (Index i = 0; i < n; ++i) {
    double& v = data.eigenvalues(i);
    if (v < 0.0) {
      if (v < -tol::eig * top) {
        throw Error(ErrorCode::NotPositive,
                    "HermitianPositive: eigenvalue " + std::to_string(v) + " is negative");
      }
      v = 0.0;
    }
  }
  ComplexMatrix m = data.reconstruct();
  return HermitianPositive(std::move(m), std::move(data));
}

double HermitianPositive::max_eigenvalue() const { return spectral_.eigenvalues.maxCoeff(); }
double HermitianPositive::min_eigenvalue() const { return spectral_.eigenvalues.minCoeff(); }

double HermitianPositive::log_cutoff() const { return tol::logcut * max_eigenvalue(); }

bool HermitianPositive::strictly_positive() const {
  return max_eigenvalue() > 0.0 && min_eigenvalue() > log_cutoff();
}

ComplexMatrix HermitianPositive::sqrt() const {
  return spectral_.apply([](double x) { return Complex(std::sqrt(x)); });
}

ComplexMatrix HermitianPositive::power(double p) const {
  if (p < 0.0 && !strictly_positive()) {
    throw Error(ErrorCode::SingularOperator, "HermitianPositive::power: negative power of a singular operator");
  }
  return spectral_.apply([p](double x) { return Complex(x == 0.0 ? 0.0 : std::pow(x, p)); });
}

AntilinearOp::AntilinearOp(ComplexMatrix kernel) : kernel_(std::move(kernel)) {
  require_square(kernel_, "AntilinearOp");
}

ComplexMatrix compose(const AntilinearOp& a, const AntilinearOp& b) {
  return a.kernel() * b.kernel().conjugate();
}

AntilinearOp compose(const AntilinearOp& a, const ComplexMatrix& l) {
  return AntilinearOp(a.kernel() * l.conjugate());
}

AntilinearOp compose(const ComplexMatrix& l, const AntilinearOp& a) {
  return AntilinearOp(l * a.kernel());
}

PolarDecomposition polar_decompose(const ComplexMatrix& t) {
  require_square(t, "polar_decompose");
  const auto svd = full_svd(t);
  const RealVector& sv = svd.singularValues();
  const Index r = rank_from(sv, tol::logcut);
  const ComplexMatrix& w = svd.matrixU();
  const ComplexMatrix& x = svd.matrixV();
  ComplexMatrix v = w.leftCols(r) * x.leftCols(r).adjoint();
  auto modulus = HermitianPositive::from_spectral(ascending(sv, x));
  return PolarDecomposition{std::move(v), std::move(modulus)};
}

AntilinearPolarDecomposition polar_decompose(const AntilinearOp& t) {
  // T v = M conj(v) with M = W S X*: |T| = conj(X) S X^T and the isometry
  // has kernel W X* restricted to the nonzero singular directions.
  const auto svd = full_svd(t.kernel());
  const RealVector& sv = svd.singularValues();
  const Index r = rank_from(sv, tol::logcut);
  const ComplexMatrix& w = svd.matrixU();
  const ComplexMatrix& x = svd.matrixV();
  AntilinearOp v(w.leftCols(r) * x.leftCols(r).adjoint());
  auto modulus = HermitianPositive::from_spectral(ascending(sv, x.conjugate()));
  return AntilinearPolarDecomposition{std::move(v), std::move(modulus)};
}

ComplexMatrix mat_log(const HermitianPositive& p) {
  if (!p.strictly_positive()) {
    throw Error(ErrorCode::SingularOperator,
                "mat_log: smallest eigenvalue " + std::to_string(p.min_eigenvalue()) +
                    " is below the log cutoff");
  }
  return p.spectral().apply([](double x) { return Complex(std::log(x)); });
}

ComplexMatrix exp_hermitian(const ComplexMatrix& h, Complex z) {
  return herm_eig(h).apply([z](double x) { return std::exp(z * x); });
}

ComplexMatrix unitary_power(const HermitianPositive& delta, double t) {
  if (!delta.strictly_positive()) {
    throw Error(ErrorCode::SingularOperator, "unitary_power: operator is not strictly positive");
  }
  return delta.spectral().apply(
      [t](double x) { return std::exp(Complex(0.0, t * std::log(x))); });
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix range_projector(const ComplexMatrix& a, double rel_tol) {
  const auto svd = full_svd(a);
  const Index r = rank_from(svd.singularValues(), rel_tol);
  const auto u = svd.matrixU().leftCols(r);
  return u * u.adjoint();
}

Index numerical_rank(const ComplexMatrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return rank_from(svd.singularValues(), rel_tol);
}

ComplexMatrix null_space(const ComplexMatrix& a, double rel_tol) {
  const auto svd = full_svd(a);
  const Index r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(a.cols() - r);
}

}  // namespace modlab
