#pragma once

// Scaling-limit field theory on R x S^2 at a horizon cross-section: the
// vacuum two-point form Lambda, the symplectic form, the quasifree Weyl
// functional, dilation/translation covariance, the KMS property of the
// dilations, tunneling overlaps and coherent-state relative entropy.

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "modlab/numerics.hpp"

namespace modlab::horizon {

class HorizonParams {
 public:
  /// kappa (surface gravity) and r (areal radius) must be positive and
  /// finite (ConfigError).
  HorizonParams(double kappa, double r);

  double kappa() const { return kappa_; }
  double r() const { return r_; }
  double beta() const { return beta_; }

 private:
  double kappa_;
  double r_;
  double beta_;
};

/// Uniform grid u_min + j (u_max - u_min) / (n - 1), j = 0..n-1.
struct RadialGrid {
  double u_min = -8.0;
  double u_max = 8.0;
  Index n = 4096;

  double spacing() const { return (u_max - u_min) / static_cast<double>(n - 1); }
  double node(Index j) const { return u_min + spacing() * static_cast<double>(j); }
  /// Number of nodes on each side that must carry zero samples.
  Index margin() const;
  bool operator==(const RadialGrid& o) const { return u_min == o.u_min && u_max == o.u_max && n == o.n; }
  bool operator!=(const RadialGrid& o) const { return !(*this == o); }
};

/// Smooth compactly supported bump exp(-1 / (1 - x^2)) rescaled to (a, b).
double bump(double u, double a, double b);
/// Its derivative in u.
double bump_derivative(double u, double a, double b);

/// Samples of a real radial profile h(U). The outer 5% of the grid on each
/// side must be exactly zero (InvalidProfile).
class RadialProfile {
 public:
  RadialProfile(RadialGrid grid, RealVector samples);
  static RadialProfile from_function(const RadialGrid& grid, const std::function<double(double)>& h);
  static RadialProfile bump(const RadialGrid& grid, double a, double b, double amplitude = 1.0);
  static RadialProfile zero(const RadialGrid& grid);

  const RadialGrid& grid() const { return grid_; }
  const RealVector& samples() const { return samples_; }
  bool is_zero() const { return first_ > last_; }
  /// Index range [first, last] of nonzero samples (first > last if zero).
  Index first_nonzero() const { return first_; }
  Index last_nonzero() const { return last_; }
  /// Band-limited (sinc) interpolant at u.
  double interpolate(double u) const;
  /// Fourier transform of the interpolant, int h(U) e^{-ikU} dU; zero for
  /// |k| at or beyond the Nyquist frequency pi / spacing.
  Complex fourier(double k) const;

 private:
  RadialGrid grid_;
  RealVector samples_;
  Index first_ = 0;
  Index last_ = -1;
};

/// (theta1, theta2) x (phi1, phi2) rectangle on the sphere with a constant value.
struct CapRect {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double value = 1.0;

  /// Solid angle (phi2 - phi1)(cos theta1 - cos theta2).
  double solid_angle() const;
};

/// Gauss-Legendre in cos(theta) times trapezoid in phi.
struct SphereQuadrature {
  Index n_theta = 32;
  Index n_phi = 64;

  bool operator==(const SphereQuadrature& o) const { return n_theta == o.n_theta && n_phi == o.n_phi; }
  /// Nodes (theta_i) and weights in cos(theta) of the Gauss-Legendre rule.
  std::pair<RealVector, RealVector> theta_rule() const;
  double phi_node(Index j) const;
};

class AngularWeight {
 public:
  enum class Kind { CapUnion, Grid };

  /// Disjoint rectangles; OverlappingCaps if two overlap, InvalidProfile if
  /// a rectangle is malformed.
  static AngularWeight caps(std::vector<CapRect> caps);
  static AngularWeight full_sphere(double value = 1.0);
  /// Samples a(theta, phi) at the quadrature nodes, row-major in (theta, phi).
  static AngularWeight grid(const SphereQuadrature& q, const std::function<double(double, double)>& a);
  /// Samples given directly, n_theta * n_phi of them in the same order.
  static AngularWeight grid(const SphereQuadrature& q, RealVector values);

  Kind kind() const { return kind_; }
  const std::vector<CapRect>& cap_list() const { return caps_; }
  const SphereQuadrature& quadrature() const { return quad_; }
  const RealVector& values() const { return values_; }
  double value_at(double theta, double phi) const;
  /// Solid angle of the support of a cap-union (sum of rectangle areas).
  double solid_angle() const;

 private:
  Kind kind_ = Kind::CapUnion;
  std::vector<CapRect> caps_;
  SphereQuadrature quad_;
  RealVector values_;
};

/// int a b dOmega: exact for two cap-unions, Gauss-Legendre x trapezoid
/// otherwise (GridMismatch if two grid weights use different rules).
double sphere_integral(const AngularWeight& a, const AngularWeight& b);

/// True when some pair of rectangles from the given caps overlaps with
/// positive area.
bool caps_overlap(const std::vector<CapRect>& caps);

/// f = sum_k h_k (x) a_k with all radial profiles on one grid.
class HorizonTestFunction {
 public:
  HorizonTestFunction() = default;
  HorizonTestFunction(RadialProfile h, AngularWeight a);

  void add_term(RadialProfile h, AngularWeight a);
  const std::vector<std::pair<RadialProfile, AngularWeight>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  HorizonTestFunction scaled(double c) const;
  HorizonTestFunction operator+(const HorizonTestFunction& g) const;
  HorizonTestFunction operator-(const HorizonTestFunction& g) const;

  /// Largest U with a nonzero sample over all terms (-inf if f = 0).
  double support_max() const;

 private:
  std::vector<std::pair<RadialProfile, AngularWeight>> terms_;
};

/// Positive-frequency form lambda(h1, h2) = (1/pi) int_0^inf k conj(h1^(k)) h2^(k) dk,
/// the limit of -(1/pi) int int h1(U) h2(U') / (U - U' + i eps)^2.
/// Evaluated exactly for the sinc interpolants. GridMismatch.
Complex lambda_1d(const RadialProfile& h1, const RadialProfile& h2);

/// The prefactor of lambda_1d in the spectral identity.
inline constexpr double kSpectralConstant = 0.31830988618379067;  // 1 / pi

/// Lambda(f, g) = r^2 sum_kl sphere_integral(a_k, b_l) lambda(h_k, g_l).
Complex lambda_full(const HorizonTestFunction& f, const HorizonTestFunction& g, const HorizonParams& p);

/// 2 Im Lambda(f, g).
double symplectic(const HorizonTestFunction& f, const HorizonTestFunction& g, const HorizonParams& p);

/// omega(W(f)) = exp(-Lambda(f, f) / 2).
double weyl_vacuum(const HorizonTestFunction& f, const HorizonParams& p);

/// omega(W(f) W(g)) from the Weyl relation, e^{-i sigma(f,g)/2} omega(W(f+g)),
/// and from the quasifree two-point form, exp(-Lambda(f,f)/2 - Lambda(g,g)/2 - Lambda(f,g)).
struct WeylPair {
  Complex via_relation;
  Complex via_two_point;
};
WeylPair weyl_two_point(const HorizonTestFunction& f, const HorizonTestFunction& g, const HorizonParams& p);

/// f_(t,a)(U) = f(e^{kappa t} U - a), resampled by sinc interpolation.
/// SupportEscapesGrid if the image support leaves the inner 90% of the grid.
RadialProfile dilate_translate(const RadialProfile& h, double t, double a, const HorizonParams& p);
HorizonTestFunction dilate_translate(const HorizonTestFunction& f, double t, double a, const HorizonParams& p);

/// (t1, a1) followed by (t2, a2) equals (t1 + t2, a1 + e^{kappa t1} a2).
std::pair<double, double> compose_dilation_translation(double t1, double a1, double t2, double a2,
                                                       const HorizonParams& p);

struct DilationKmsOptions {
  std::vector<double> window_widths{2.0, 3.0, 4.0};  // in units of 1 / kappa
  double half_range_widths = 8.0;                     // t in [-8w, 8w]
  double log_step = 0.004;                            // step in q = ln k
  double log_k_min = -14.0;
  int t_stride = 10;                                  // t step = stride * log_step / kappa
};

struct DilationKmsResult {
  double deviation = 0.0;                // max over windows
  std::vector<double> per_window;
};

/// Smeared KMS identity for the dilations tau_t g(U) = g(e^{kappa t} U):
/// int chi(t) L(t) dt = int chi(t - i beta_test) R(t) dt with
/// L(t) = Lambda(f, tau_t g), R(t) = Lambda(tau_t g, f) and Gaussian chi.
/// Deviation is relative to int chi * sqrt(Lambda(f,f) Lambda(g,g)).
/// SupportNotRightWedge unless f and g live in U < 0.
DilationKmsResult kms_dilation_check(const HorizonTestFunction& f, const HorizonTestFunction& g,
                                     double beta_test, const HorizonParams& p,
                                     const DilationKmsOptions& options = {});

/// L(t) = Lambda(f, tau_t g) on the t-grid used by kms_dilation_check
/// (radial factor only, r = 1 and unit angular weights).
std::vector<std::pair<double, Complex>> dilation_correlation(const RadialProfile& f, const RadialProfile& g,
                                                             const HorizonParams& p, double t_max,
                                                             const DilationKmsOptions& options = {});

/// Profile in the Kodama-time coordinate s, U = -e^{kappa s} on the right
/// wedge and U = e^{kappa s} on the left wedge; uniform s-grid.
struct KodamaProfile {
  double s_min = 0.0;
  double s_max = 0.0;
  RealVector samples;

  double spacing() const { return (s_max - s_min) / static_cast<double>(samples.size() - 1); }
  double node(Index j) const { return s_min + spacing() * static_cast<double>(j); }
  /// int F(s) e^{-i w s} ds by the trapezoid rule.
  Complex fourier(double w) const;
};

/// Lambda between two right-wedge profiles (U = -e^{kappa s}), from the
/// thermal kernel (1/pi) int F^ conj(G^) w / (1 - e^{-beta w}) dw.
Complex kodama_lambda_same(const KodamaProfile& f, const KodamaProfile& g, const HorizonParams& p,
                           double w_max, Index w_nodes);
/// Lambda between a left-wedge and a right-wedge profile,
/// -(1/(2 pi)) int conj(F_L^) F_R^ w / sinh(beta w / 2) dw.
Complex kodama_lambda_opposite(const KodamaProfile& left, const KodamaProfile& right, const HorizonParams& p,
                               double w_max, Index w_nodes);

struct TunnelingOptions {
  Index s_nodes = 4096;
  double envelope_widths = 12.0;  // s-grid half range in units of n / kappa
  double w_step_per_width = 0.125;
};

struct TunnelingResult {
  double overlap = 0.0;            // |Lambda(psi_L, psi_R)|^2
  Complex lambda_lr;
  double lambda_ll = 0.0;
  double lambda_rr = 0.0;
  double thermal_limit = 0.0;        // (1/4)((1 - e^{-x}) / sinh(x/2))^2, x = beta E0
  double real_packet_limit = 0.0;  // 1 / cosh^2(x / 2)
};

/// Transition probability between the normalized wavepackets
/// F(s) = exp(-kappa^2 s^2 / (2 n^2)) cos(E0 s) on the left and right wedges.
/// SupportEscapesGrid when the packet cannot be resolved on the s-grid.
TunnelingResult tunneling_overlap(double e0, int n, const HorizonParams& p, const TunnelingOptions& options = {});

/// -2 pi r^2 sum_kl sphere_integral(a_k, a_l) int U h_k' h_l' dU with
/// fourth-order differences and compensated summation. SupportNotRightWedge.
double coherent_relent_closed(const HorizonTestFunction& f, const HorizonParams& p);

struct ModularEntropy {
  double via_weyl = 0.0;     // i F'(0), F(t) = <W(f) Omega, Delta^{it} W(f) Omega>
  double via_lambda = 0.0;   // -Im d/dt Lambda(f, f_{beta t}) at 0
};

/// Relative entropy from the modular group, realized as the dilations
/// f_{beta t}, by central differences with step dt. SupportNotRightWedge.
ModularEntropy coherent_relent_modular(const HorizonTestFunction& f, const HorizonParams& p, double dt = 1e-4);

struct AdditivityReport {
  std::vector<double> single;       // S for h (x) chi_j
  double combined = 0.0;            // S for sum_j h (x) chi_j
  double additivity_residual = 0.0; // |combined - sum single| / |combined|
  std::vector<double> solid_angles;
  std::vector<double> entropy_per_area;   // S_j / (r^2 Omega_j)
  double proportionality_residual = 0.0;  // spread of entropy_per_area, relative
};

/// Additivity of the coherent-state entropy over disjoint caps and its
/// proportionality to the cap area. OverlappingCaps, SupportNotRightWedge.
AdditivityReport area_additivity_check(const RadialProfile& h, const std::vector<CapRect>& caps,
                                       const HorizonParams& p);

struct SpectrumReport {
  Complex positive_frequency;          // lambda_1d(h, h)
  Complex oracle;                      // eps -> 0 limit of the regularized kernel
  double negative_frequency_residual;  // |oracle - positive_frequency| / |positive_frequency|
  double composition_residual;         // max |(h_t)_a - (h_{a e^{kappa t}})_t| over samples
};

/// Compares the positive-frequency form with the eps-regularized kernel and
/// checks the dilation-translation commutation at sample level.
SpectrumReport spectrum_condition_check(const RadialProfile& h, const HorizonParams& p, double t = 0.3,
                                        double a = -0.2);

}  // namespace modlab::horizon
