#include "modlab/modular.hpp"

#include <algorithm>
#include <cmath>

#include "modlab/error.hpp"
#include "modlab/tolerances.hpp"

namespace modlab {

namespace {

constexpr double kFrameRankTol = 1e-10;

ComplexMatrix frame(const OperatorAlgebra& n, const ComplexVector& psi, bool adjoint) {
  ComplexMatrix f(psi.size(), n.dim());
  for (Index i = 0; i < n.dim(); ++i) {
    const ComplexMatrix& b = n.basis()[static_cast<std::size_t>(i)];
    f.col(i) = adjoint ? ComplexVector(b.adjoint() * psi) : ComplexVector(b * psi);
  }
  return f;
}

void require_member(const OperatorAlgebra& n, const ComplexMatrix& a, const char* what) {
  if (!n.contains(a, tol::mod)) {
    throw Error(ErrorCode::NotInAlgebra, std::string(what) + ": operator is not in the algebra");
  }
}

}  // namespace

StandardCheck check_standard(const OperatorAlgebra& n, const ComplexVector& psi) {
  if (psi.size() != n.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "check_standard: vector and algebra dimensions differ");
  }
  if (std::abs(psi.norm() - 1.0) > tol::mod) {
    throw Error(ErrorCode::InvalidState, "check_standard: vector is not normalized");
  }
  const Index rank = numerical_rank(frame(n, psi, false), kFrameRankTol);
  return StandardCheck{rank == n.ambient_dim(), rank == n.dim()};
}

ModularData modular_objects(const StandardPair& pair) {
  const StandardCheck check = check_standard(pair.algebra, pair.vector);
  if (!check.standard()) {
    throw Error(ErrorCode::NotStandard,
                std::string("modular_objects: vector is not ") + (check.cyclic ? "separating" : "cyclic"));
  }
  // S(F c) = G conj(c) gives the kernel M = G conj(F)^{-1}; solve
  // F* M^T = G^T instead of inverting.
  const ComplexMatrix f = frame(pair.algebra, pair.vector, false);
  const ComplexMatrix g = frame(pair.algebra, pair.vector, true);
  const ComplexMatrix mt = f.adjoint().partialPivLu().solve(g.transpose());
  AntilinearOp tomita(mt.transpose());

  auto polar = polar_decompose(tomita);
  const SpectralData& half = polar.modulus.spectral();
  SpectralData full{half.eigenvalues.cwiseProduct(half.eigenvalues), half.eigenvectors};
  HermitianPositive delta = HermitianPositive::from_spectral(std::move(full));
  ComplexMatrix log_delta = 2.0 * mat_log(polar.modulus);
  return ModularData{std::move(tomita), std::move(polar.isometry), std::move(delta),
                     std::move(polar.modulus), std::move(log_delta), pair.vector};
}

ComplexMatrix modular_conjugate(const ModularData& m, const ComplexMatrix& a) {
  const ComplexMatrix& k = m.conj.kernel();
  return k * a.conjugate() * k.conjugate();
}

std::vector<std::pair<std::string, double>> TomitaTakesakiReport::named() const {
  return {
      {"polar_S_eq_J_Delta_half", polar},
      {"J_squared_is_identity", j_involution},
      {"J_selfadjoint", j_selfadjoint},
      {"J_fixes_vector", j_fixes_vector},
      {"jN_equals_commutant", j_commutant},
      {"J_Delta_half_J_eq_Delta_minus_half", j_delta},
      {"Delta_half_fixes_vector", delta_fixes_vector},
      {"modular_flow_preserves_N", flow_invariance},
      {"kms_boundary_identity", kms},
  };
}

double TomitaTakesakiReport::max_residual() const {
  double worst = 0.0;
  for (const auto& [name, value] : named()) worst = std::max(worst, value);
  return worst;
}

double kms_boundary_residual(const StandardPair& pair, const ComplexMatrix& x) {
  const ComplexMatrix f = frame(pair.algebra, pair.vector, false);
  const ComplexMatrix g = frame(pair.algebra, pair.vector, true);
  const ComplexMatrix lhs = (x * g).adjoint() * (x * f);
  const ComplexMatrix rhs = (g.adjoint() * f).transpose();
  return max_abs(lhs - rhs);
}

TomitaTakesakiReport verify_tomita_takesaki(const StandardPair& pair,
                                            const std::vector<double>& t_samples) {
  const ModularData m = modular_objects(pair);
  const OperatorAlgebra& n = pair.algebra;
  const ComplexVector& psi = pair.vector;
  const Index dim = n.ambient_dim();
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix& k = m.conj.kernel();
  const ComplexMatrix& d_half = m.delta_half.matrix();

  TomitaTakesakiReport r;
  r.polar = (m.tomita.kernel() - compose(m.conj, d_half).kernel()).norm() / m.tomita.kernel().norm();
  r.j_involution = (compose(m.conj, m.conj) - id).norm();
  r.j_selfadjoint = (k - k.transpose()).norm();
  r.j_fixes_vector = (m.conj.apply(psi) - psi).norm();

  const OperatorAlgebra nc = commutant(n);
  if (nc.dim() != n.dim()) {
    r.j_commutant = 1.0;
  } else {
    ComplexMatrix images(dim * dim, n.dim());
    for (Index i = 0; i < n.dim(); ++i) {
      const ComplexMatrix jb = modular_conjugate(m, n.basis()[static_cast<std::size_t>(i)]);
      r.j_commutant = std::max(r.j_commutant, nc.projection_residual(jb) / jb.norm());
      images.col(i) = vec(jb);
    }
    // j is a Hilbert-Schmidt isometry, so the images are orthonormal.
    for (const auto& c : nc.basis()) {
      const ComplexVector v = vec(c);
      r.j_commutant = std::max(r.j_commutant, (v - images * (images.adjoint() * v)).norm());
    }
  }

  const ComplexMatrix d_minus_half = m.delta_half.power(-1.0);
  r.j_delta = (modular_conjugate(m, d_half) - d_minus_half).norm() / d_minus_half.norm();
  r.delta_fixes_vector = (d_half * psi - psi).norm();

  for (double t : t_samples) {
    const ComplexMatrix u = unitary_power(m.delta, t);
    for (const auto& b : n.basis()) {
      r.flow_invariance = std::max(r.flow_invariance, n.projection_residual(u * b * u.adjoint()));
    }
  }
  r.kms = kms_boundary_residual(pair, d_half);
  return r;
}

ComplexMatrix modular_flow(const StandardPair& pair, const ModularData& m,
                           const ComplexMatrix& a, double t) {
  require_member(pair.algebra, a, "modular_flow");
  const ComplexMatrix u = unitary_power(m.delta, t);
  return u * a * u.adjoint();
}

ComplexMatrix modular_flow(const StandardPair& pair, const ComplexMatrix& a, double t) {
  return modular_flow(pair, modular_objects(pair), a, t);
}

RealVector gibbs_weights(const ComplexMatrix& h, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::InvalidState, "gibbs_weights: beta must be positive and finite");
  }
  const SpectralData s = herm_eig(h);
  // Shift by the ground energy so the largest weight is exp(0).
  RealVector p = (-beta * (s.eigenvalues.array() - s.eigenvalues(0))).exp();
  return p / p.sum();
}

StandardPair purified_pair(const ComplexMatrix& rho) {
  const HermitianPositive d = HermitianPositive::from_matrix(rho);
  if (!d.strictly_positive()) throw Error(ErrorCode::NotStandard, "purified_pair: density is not faithful");
  const Index n = rho.rows();
  ComplexVector psi = ComplexVector::Zero(n * n);
  for (Index i = 0; i < n; ++i) {
    const ComplexVector u = d.eigenvectors().col(i);
    psi += std::sqrt(d.eigenvalues()(i)) * kron(u, u.conjugate());
  }
  std::vector<ComplexMatrix> span;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      span.push_back(kron(e, id));
    }
  }
  return StandardPair{OperatorAlgebra::from_spanning_set(span), psi.normalized()};
}

StandardPair gibbs_standard_pair(const ComplexMatrix& h, double beta) {
  const RealVector p = gibbs_weights(h, beta);
  const SpectralData s = herm_eig(h);
  return purified_pair(s.eigenvectors * p.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint());
}

FlowConvention resolve_gibbs_flow_convention(const ComplexMatrix& h, double beta,
                                             const std::vector<double>& t_samples) {
  const StandardPair pair = gibbs_standard_pair(h, beta);
  const ModularData m = modular_objects(pair);
  const Index n = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  FlowConvention out;
  for (double t : t_samples) {
    const ComplexMatrix plus = exp_hermitian(h, Complex(0.0, beta * t));
    const ComplexMatrix minus = exp_hermitian(h, Complex(0.0, -beta * t));
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(n, n);
        e(i, j) = 1.0;
        const ComplexMatrix flowed = modular_flow(pair, m, kron(e, id), t);
        out.residual_plus =
            std::max(out.residual_plus, max_abs(flowed - kron(plus * e * plus.adjoint(), id)));
        out.residual_minus =
            std::max(out.residual_minus, max_abs(flowed - kron(minus * e * minus.adjoint(), id)));
      }
    }
  }
  out.theta = out.residual_plus <= out.residual_minus ? beta : -beta;
  return out;
}

double araki_relative_entropy(const StandardPair& pair, const ModularData& m,
                              const ComplexMatrix& u) {
  const Index n = pair.algebra.ambient_dim();
  if (u.rows() != n || u.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "araki_relative_entropy: unitary has wrong shape");
  }
  if (!is_unitary(u, tol::mod)) throw Error(ErrorCode::NotUnitary, "araki_relative_entropy: U is not unitary");
  require_member(pair.algebra, u, "araki_relative_entropy");
  const ComplexVector w = u.adjoint() * pair.vector;
  return -w.dot(m.log_delta * w).real();
}

double araki_relative_entropy(const StandardPair& pair, const ComplexMatrix& u) {
  return araki_relative_entropy(pair, modular_objects(pair), u);
}

double kms_smeared_check(const StandardPair& pair, const ModularData& m, const ComplexMatrix& a,
                         const ComplexMatrix& b, double beta, const KmsWindow& window) {
  require_member(pair.algebra, a, "kms_smeared_check");
  require_member(pair.algebra, b, "kms_smeared_check");
  if (!(window.width > 0.0) || window.nodes < 2) {
    throw Error(ErrorCode::ConfigError, "kms_smeared_check: invalid window");
  }
  // Expand both correlation functions in the eigenbasis of Delta:
  //   omega(A sigma_t(B)) = sum_k conj(x_k) y_k delta_k^{it},   x = A* psi, y = B psi
  //   omega(sigma_t(B) A) = sum_k conj(z_k) v_k delta_k^{-it},  z = B* psi, v = A psi
  const SpectralData& s = m.delta.spectral();
  const ComplexMatrix vt = s.eigenvectors.adjoint();
  const ComplexVector& psi = pair.vector;
  const ComplexVector x = vt * (a.adjoint() * psi);
  const ComplexVector y = vt * (b * psi);
  const ComplexVector z = vt * (b.adjoint() * psi);
  const ComplexVector v = vt * (a * psi);
  const RealVector ell = s.eigenvalues.array().log();

  const double w = window.width;
  const double half = window.half_range_widths * w;
  const Index nodes = window.nodes;
  const double dt = 2.0 * half / static_cast<double>(nodes - 1);
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  for (Index j = 0; j < nodes; ++j) {
    const double t = -half + dt * static_cast<double>(j);
    const double weight = (j == 0 || j == nodes - 1) ? 0.5 * dt : dt;
    Complex l = 0.0;
    Complex r = 0.0;
    for (Index k = 0; k < ell.size(); ++k) {
      const Complex phase = std::exp(Complex(0.0, ell(k) * t));
      l += std::conj(x(k)) * y(k) * phase;
      r += std::conj(z(k)) * v(k) * std::conj(phase);
    }
    const Complex shifted(t, -beta);
    lhs += weight * std::exp(-t * t / (2.0 * w * w)) * l;
    rhs += weight * std::exp(-shifted * shifted / (2.0 * w * w)) * r;
  }
  return std::abs(lhs - rhs);
}

}  // namespace modlab
