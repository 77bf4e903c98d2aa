#include "modlab/algebras.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "modlab/error.hpp"
#include "modlab/tolerances.hpp"

namespace modlab {

namespace {

constexpr int kMaxClosureRounds = 20;
// A candidate direction is new when its component orthogonal to the
// current span is larger than this fraction of its norm.
constexpr double kNewDirection = 1e-8;

// Incremental Hilbert-Schmidt orthonormal basis of a matrix span.
class SpanBuilder {
 public:
  explicit SpanBuilder(Index n) : n_(n) {}

  bool add(const ComplexMatrix& x) {
    const ComplexVector v = vec(x);
    const double norm = v.norm();
    if (norm == 0.0) return false;
    ComplexVector w = v;
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : columns_) w -= q * q.dot(w);
    }
    const double rest = w.norm();
    if (rest <= kNewDirection * norm) return false;
    columns_.push_back(w / rest);
    return true;
  }

  Index size() const { return static_cast<Index>(columns_.size()); }
  ComplexMatrix matrix(Index i) const { return unvec(columns_[static_cast<std::size_t>(i)], n_); }

  std::vector<ComplexMatrix> matrices() const {
    std::vector<ComplexMatrix> out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) out.push_back(unvec(c, n_));
    return out;
  }

  ComplexMatrix frame() const {
    ComplexMatrix f(n_ * n_, size());
    for (Index i = 0; i < size(); ++i) f.col(i) = columns_[static_cast<std::size_t>(i)];
    return f;
  }

 private:
  Index n_;
  std::vector<ComplexVector> columns_;
};

Index common_dim(const std::vector<ComplexMatrix>& ms, const char* what) {
  if (ms.empty()) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": empty list");
  const Index n = ms.front().rows();
  for (const auto& m : ms) {
    if (m.rows() != n || m.cols() != n || n == 0) {
      throw Error(ErrorCode::DimensionMismatch,
                  std::string(what) + ": all matrices must be square of a common dimension");
    }
    if (!m.allFinite()) throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": non-finite entry");
  }
  return n;
}

}  // namespace

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

OperatorAlgebra OperatorAlgebra::from_spanning_set(const std::vector<ComplexMatrix>& elements) {
  const Index n = common_dim(elements, "OperatorAlgebra");
  SpanBuilder span(n);
  for (const auto& e : elements) span.add(e);
  OperatorAlgebra alg(n, span.matrices(), span.frame());

  const double unit_res = alg.projection_residual(ComplexMatrix::Identity(n, n));
  if (unit_res > tol::alg * std::sqrt(static_cast<double>(n))) {
    throw Error(ErrorCode::NotAnAlgebra, "span does not contain the identity");
  }
  for (const auto& b : alg.basis()) {
    if (!alg.contains(b.adjoint(), tol::alg)) {
      throw Error(ErrorCode::NotAnAlgebra, "span is not closed under adjoint");
    }
  }
  for (const auto& b1 : alg.basis()) {
    for (const auto& b2 : alg.basis()) {
      if (!alg.contains(b1 * b2, tol::alg)) {
        throw Error(ErrorCode::NotAnAlgebra, "span is not closed under products");
      }
    }
  }
  return alg;
}

OperatorAlgebra OperatorAlgebra::full(Index n) {
  std::vector<ComplexMatrix> units;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      units.push_back(std::move(e));
    }
  }
  return from_spanning_set(units);
}

OperatorAlgebra OperatorAlgebra::scalars(Index n) {
  return from_spanning_set({ComplexMatrix::Identity(n, n)});
}

ComplexVector OperatorAlgebra::coefficients(const ComplexMatrix& x) const {
  return frame_.adjoint() * vec(x);
}

ComplexMatrix OperatorAlgebra::from_coefficients(const ComplexVector& c) const {
  return unvec(frame_ * c, ambient_dim_);
}

double OperatorAlgebra::projection_residual(const ComplexMatrix& x) const {
  const ComplexVector v = vec(x);
  return (v - frame_ * (frame_.adjoint() * v)).norm();
}

bool OperatorAlgebra::contains(const ComplexMatrix& x, double rel_tol) const {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_) return false;
  return projection_residual(x) <= rel_tol * std::max(x.norm(), 1.0);
}

bool OperatorAlgebra::same_span(const OperatorAlgebra& other, double rel_tol) const {
  if (ambient_dim_ != other.ambient_dim_ || dim() != other.dim()) return false;
  for (const auto& b : other.basis()) {
    if (!contains(b, rel_tol)) return false;
  }
  for (const auto& b : basis_) {
    if (!other.contains(b, rel_tol)) return false;
  }
  return true;
}

OperatorAlgebra generate_algebra(const std::vector<ComplexMatrix>& generators) {
  const Index n = common_dim(generators, "generate_algebra");
  std::vector<ComplexMatrix> letters;
  for (const auto& g : generators) {
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }

  SpanBuilder span(n);
  span.add(ComplexMatrix::Identity(n, n));
  Index frontier_begin = 0;
  Index frontier_end = span.size();
  // Each round multiplies the newest words by one more letter.
  for (int round = 0;; ++round) {
    for (Index i = frontier_begin; i < frontier_end; ++i) {
      const ComplexMatrix word = span.matrix(i);
      for (const auto& g : letters) span.add(g * word);
    }
    if (span.size() == frontier_end) break;
    if (round + 1 >= kMaxClosureRounds) {
      throw Error(ErrorCode::ClosureDidNotConverge,
                  "generate_algebra: span still growing after 20 rounds");
    }
    frontier_begin = frontier_end;
    frontier_end = span.size();
  }
  return OperatorAlgebra::from_spanning_set(span.matrices());
}

OperatorAlgebra commutant(const OperatorAlgebra& a) {
  // With column-major vec, vec(XB - BX) = (B^T (x) 1 - 1 (x) B) vec(X).
  // Accumulate sum_B ad_B* ad_B and take its null space.
  const Index n = a.ambient_dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix gram = ComplexMatrix::Zero(n * n, n * n);
  for (const auto& b : a.basis()) {
    const ComplexMatrix bt = b.transpose();
    const ComplexMatrix bc = b.conjugate();
    gram += kron(bc * bt, id) + kron(id, b.adjoint() * b) - kron(bc, b) - kron(bt, b.adjoint());
  }
  const SpectralData s = herm_eig(gram);
  const double top = std::max(s.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<ComplexMatrix> basis;
  for (Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues(i) <= 1e-9 * top) basis.push_back(unvec(s.eigenvectors.col(i), n));
  }
  return OperatorAlgebra::from_spanning_set(basis);
}

bool is_von_neumann(const OperatorAlgebra& a) {
  return a.same_span(commutant(commutant(a)), tol::alg);
}

AlgebraState::AlgebraState(const ComplexMatrix& density)
    : density_([&] {
        try {
          return HermitianPositive::from_matrix(density);
        } catch (const Error& e) {
          throw Error(ErrorCode::InvalidState, std::string("density: ") + e.what());
        }
      }()) {
  const double trace = density.trace().real();
  if (std::abs(trace - 1.0) > tol::alg || std::abs(density.trace().imag()) > tol::alg) {
    throw Error(ErrorCode::InvalidState, "density trace is " + std::to_string(trace) + ", expected 1");
  }
}

AlgebraState AlgebraState::from_vector(const ComplexVector& psi) {
  const double nrm = psi.norm();
  if (nrm == 0.0) throw Error(ErrorCode::InvalidState, "zero vector");
  const ComplexVector u = psi / nrm;
  return AlgebraState(u * u.adjoint());
}

AlgebraState AlgebraState::maximally_mixed(Index n) {
  return AlgebraState(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
}

Complex AlgebraState::operator()(const ComplexMatrix& a) const {
  return (density_.matrix() * a).trace();
}

AlgebraState convex_combine(const std::vector<AlgebraState>& states,
                            const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw Error(ErrorCode::BadWeights, "convex_combine: need one weight per state");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorCode::BadWeights, "convex_combine: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::alg) {
    throw Error(ErrorCode::BadWeights, "convex_combine: weights sum to " + std::to_string(total));
  }
  const Index n = states.front().ambient_dim();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].ambient_dim() != n) {
      throw Error(ErrorCode::DimensionMismatch, "convex_combine: states on different spaces");
    }
    rho += weights[i] * states[i].density().matrix();
  }
  return AlgebraState(rho);
}

namespace {

// T(A)_{lj} = <B_l, A B_j>: left multiplication by A in the algebra basis.
ComplexMatrix left_multiplication(const OperatorAlgebra& a, const ComplexMatrix& x) {
  const Index d = a.dim();
  ComplexMatrix t(d, d);
  for (Index j = 0; j < d; ++j) {
    t.col(j) = a.coefficients(x * a.basis()[static_cast<std::size_t>(j)]);
  }
  return t;
}

void require_same_space(const OperatorAlgebra& a, const AlgebraState& omega) {
  if (a.ambient_dim() != omega.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state and algebra act on different spaces");
  }
}

ComplexMatrix gram_matrix(const OperatorAlgebra& a, const AlgebraState& omega) {
  const Index d = a.dim();
  ComplexMatrix g(d, d);
  const auto& b = a.basis();
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      g(i, j) = omega(b[static_cast<std::size_t>(i)].adjoint() * b[static_cast<std::size_t>(j)]);
    }
  }
  return 0.5 * (g + g.adjoint());
}

}  // namespace

GnsData gns_construct(const OperatorAlgebra& a, const AlgebraState& omega) {
  require_same_space(a, omega);
  GnsData out;
  out.gram = gram_matrix(a, omega);
  const SpectralData s = herm_eig(out.gram);
  const double top = s.eigenvalues.maxCoeff();
  const double cut = tol::gram * top;

  std::vector<Index> kept;
  for (Index k = 0; k < s.eigenvalues.size(); ++k) {
    if (s.eigenvalues(k) > cut) kept.push_back(k);
  }
  const Index r = static_cast<Index>(kept.size());
  const Index d = a.dim();
  out.gns_dim = r;
  out.null_rank = d - r;

  // Orthonormal GNS basis e_k = sum_j u_kj / sqrt(lambda_k) [B_j].
  out.coords.resize(r, d);
  out.synth.resize(d, r);
  for (Index k = 0; k < r; ++k) {
    const Index src = kept[static_cast<std::size_t>(k)];
    const double lam = s.eigenvalues(src);
    const ComplexVector u = s.eigenvectors.col(src);
    out.coords.row(k) = std::sqrt(lam) * u.adjoint();
    out.synth.col(k) = u / std::sqrt(lam);
  }

  out.rep.reserve(a.basis().size());
  for (const auto& b : a.basis()) out.rep.push_back(out.coords * left_multiplication(a, b) * out.synth);
  out.cyclic_vector = out.coords * a.coefficients(ComplexMatrix::Identity(a.ambient_dim(), a.ambient_dim()));
  return out;
}

ComplexMatrix gns_represent(const GnsData& gns, const OperatorAlgebra& a, const ComplexMatrix& x) {
  if (!a.contains(x, tol::alg)) throw Error(ErrorCode::NotInAlgebra, "gns_represent: element not in algebra");
  return gns.coords * left_multiplication(a, x) * gns.synth;
}

GnsResiduals gns_residuals(const GnsData& gns, const OperatorAlgebra& a,
                           const AlgebraState& omega) {
  GnsResiduals res;
  const auto& b = a.basis();
  const Index n = a.ambient_dim();
  const ComplexVector& omega_vec = gns.cyclic_vector;
  ComplexMatrix orbit(gns.gns_dim, a.dim());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Complex direct = omega(b[i]);
    const Complex rebuilt = omega_vec.dot(gns.rep[i] * omega_vec);
    res.reconstruction = std::max(res.reconstruction, std::abs(direct - rebuilt));
    res.adjoint = std::max(res.adjoint, max_abs(gns_represent(gns, a, b[i].adjoint()) - gns.rep[i].adjoint()));
    for (std::size_t j = 0; j < b.size(); ++j) {
      res.multiplicativity = std::max(
          res.multiplicativity, max_abs(gns_represent(gns, a, b[i] * b[j]) - gns.rep[i] * gns.rep[j]));
    }
    orbit.col(static_cast<Index>(i)) = gns.rep[i] * omega_vec;
  }
  res.unit = max_abs(gns_represent(gns, a, ComplexMatrix::Identity(n, n)) -
                     ComplexMatrix::Identity(gns.gns_dim, gns.gns_dim));
  res.cyclic_rank = numerical_rank(orbit, 1e-10);
  return res;
}

bool is_pure(const OperatorAlgebra& a, const AlgebraState& omega) {
  const GnsData gns = gns_construct(a, omega);
  const OperatorAlgebra image = OperatorAlgebra::from_spanning_set(gns.rep);
  return commutant(image).dim() == 1;
}

bool is_faithful(const OperatorAlgebra& a, const AlgebraState& omega) {
  require_same_space(a, omega);
  const SpectralData s = herm_eig(gram_matrix(a, omega));
  const double top = s.eigenvalues.maxCoeff();
  return top > 0.0 && s.eigenvalues.minCoeff() > tol::gram * top;
}

}  // namespace modlab
