#pragma once

// Tomita-Takesaki theory for finite-dimensional algebras with a standard
// vector: the Tomita operator S, its polar parts J and Delta, the modular
// flow, KMS checks, Gibbs standard forms and Araki relative entropy.

#include <string>
#include <utility>
#include <vector>

#include "modlab/algebras.hpp"
#include "modlab/numerics.hpp"

namespace modlab {

struct StandardPair {
  OperatorAlgebra algebra;
  ComplexVector vector;
};

struct StandardCheck {
  bool cyclic = false;
  bool separating = false;
  bool standard() const { return cyclic && separating; }
};

/// Rank tests on the frame [B_1 psi, ..., B_d psi]: cyclic iff its rank is
/// the ambient dimension, separating iff it is injective on coefficients.
/// psi must be a unit vector (InvalidState otherwise).
StandardCheck check_standard(const OperatorAlgebra& n, const ComplexVector& psi);

struct ModularData {
  AntilinearOp tomita;        // S(A psi) = A* psi
  AntilinearOp conj;          // J
  HermitianPositive delta;    // Delta = S* S
  HermitianPositive delta_half;
  ComplexMatrix log_delta;
  ComplexVector vector;
};

/// Builds S on the frame {B_i psi} and splits it as S = J Delta^{1/2}.
/// NotStandard when psi is not cyclic and separating.
ModularData modular_objects(const StandardPair& pair);

/// j(A) = J A J as a linear map.
ComplexMatrix modular_conjugate(const ModularData& m, const ComplexMatrix& a);

/// Named residuals for clauses (1)-(4) of the Tomita-Takesaki theorem.
struct TomitaTakesakiReport {
  double polar = 0.0;              // ||S - J Delta^{1/2}|| / ||S||
  double j_involution = 0.0;       // ||J^2 - 1||
  double j_selfadjoint = 0.0;      // ||J - J*||
  double j_fixes_vector = 0.0;     // ||J psi - psi||
  double j_commutant = 0.0;        // span distance of j(N) to N'
  double j_delta = 0.0;            // ||J Delta^{1/2} J - Delta^{-1/2}|| / ||Delta^{-1/2}||
  double delta_fixes_vector = 0.0; // ||Delta^{1/2} psi - psi||
  double flow_invariance = 0.0;    // max_t,i dist(sigma_t(B_i), N)
  double kms = 0.0;                // max_ij |<D A* psi, D B psi> - <B* psi, A psi>|

  std::vector<std::pair<std::string, double>> named() const;
  double max_residual() const;
};

TomitaTakesakiReport verify_tomita_takesaki(const StandardPair& pair,
                                            const std::vector<double>& t_samples);

/// max over basis pairs of |<X A* psi, X B psi> - <B* psi, A psi>| for a
/// candidate square root X of the modular operator.
double kms_boundary_residual(const StandardPair& pair, const ComplexMatrix& x);

/// sigma_t(A) = Delta^{it} A Delta^{-it}. NotInAlgebra unless A lies in N.
ComplexMatrix modular_flow(const StandardPair& pair, const ModularData& m,
                           const ComplexMatrix& a, double t);
ComplexMatrix modular_flow(const StandardPair& pair, const ComplexMatrix& a, double t);

/// Gibbs weights e^{-beta E_i} / Z in ascending energy order.
RealVector gibbs_weights(const ComplexMatrix& h, double beta);

/// psi = sum_i sqrt(p_i) u_i (x) conj(u_i) on C^n (x) C^n with N = M_n (x) 1,
/// so that <psi, (A (x) 1) psi> = Tr(rho A) for rho = e^{-beta H} / Z.
StandardPair gibbs_standard_pair(const ComplexMatrix& h, double beta);

/// Same construction for a faithful density matrix rho (NotStandard otherwise).
StandardPair purified_pair(const ComplexMatrix& rho);

/// Which of theta = +beta or -beta makes the modular flow of the Gibbs
/// pair equal to A (x) 1 -> e^{i theta t H} A e^{-i theta t H} (x) 1.
struct FlowConvention {
  double theta = 0.0;
  double residual_plus = 0.0;   // theta = +beta
  double residual_minus = 0.0;  // theta = -beta
};

FlowConvention resolve_gibbs_flow_convention(const ComplexMatrix& h, double beta,
                                             const std::vector<double>& t_samples);

/// -<U* psi, log(Delta) U* psi> for a unitary U in N.
/// NotUnitary, NotInAlgebra, SingularOperator.
double araki_relative_entropy(const StandardPair& pair, const ModularData& m,
                              const ComplexMatrix& u);
double araki_relative_entropy(const StandardPair& pair, const ComplexMatrix& u);

struct KmsWindow {
  double width = 2.0;
  double half_range_widths = 8.0;  // grid is [-8w, 8w]
  Index nodes = 1024;
};

/// |int chi(t) omega(A sigma_t(B)) dt - int chi(t - i beta) omega(sigma_t(B) A) dt|
/// with the Gaussian chi(t) = exp(-t^2 / (2 w^2)) continued analytically.
/// Vanishes at beta = 1 for the modular flow.
double kms_smeared_check(const StandardPair& pair, const ModularData& m, const ComplexMatrix& a,
                         const ComplexMatrix& b, double beta, const KmsWindow& window = {});

}  // namespace modlab
