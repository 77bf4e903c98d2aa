#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/legendre.hpp>

#include "modlab/error.hpp"
#include "modlab/horizon.hpp"

namespace modlab::horizon {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-14;

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

double sinc(double z) {
  if (std::abs(z) < 1e-12) return 1.0;
  const double pz = kPi * z;
  return std::sin(pz) / pz;
}

double overlap_length(double a1, double a2, double b1, double b2) {
  return std::max(0.0, std::min(a2, b2) - std::max(a1, b1));
}

double rect_intersection_area(const CapRect& x, const CapRect& y) {
  const double dphi = overlap_length(x.phi1, x.phi2, y.phi1, y.phi2);
  const double t1 = std::max(x.theta1, y.theta1);
  const double t2 = std::min(x.theta2, y.theta2);
  if (dphi <= 0.0 || t2 <= t1) return 0.0;
  return dphi * (std::cos(t1) - std::cos(t2));
}

void validate_cap(const CapRect& c) {
  const bool ok = std::isfinite(c.value) && c.theta1 >= 0.0 && c.theta1 < c.theta2 && c.theta2 <= kPi + kAngleSlack &&
                  c.phi1 >= 0.0 && c.phi1 < c.phi2 && c.phi2 <= 2.0 * kPi + kAngleSlack;
  if (!ok) {
    throw Error(ErrorCode::InvalidProfile,
                "cap rectangle needs 0 <= theta1 < theta2 <= pi and 0 <= phi1 < phi2 <= 2 pi");
  }
}

}  // namespace

HorizonParams::HorizonParams(double kappa, double r) : kappa_(kappa), r_(r), beta_(2.0 * kPi / kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::ConfigError, "surface gravity kappa must be positive, got " + std::to_string(kappa));
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::ConfigError, "areal radius r must be positive, got " + std::to_string(r));
  }
}

Index RadialGrid::margin() const {
  return static_cast<Index>(std::ceil(0.05 * static_cast<double>(n)));
}

double bump(double u, double a, double b) {
  const double x = (2.0 * u - a - b) / (b - a);
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

double bump_derivative(double u, double a, double b) {
  const double x = (2.0 * u - a - b) / (b - a);
  if (std::abs(x) >= 1.0) return 0.0;
  const double one_minus = 1.0 - x * x;
  return std::exp(-1.0 / one_minus) * (-2.0 * x / (one_minus * one_minus)) * (2.0 / (b - a));
}

RadialProfile::RadialProfile(RadialGrid grid, RealVector samples) : grid_(grid), samples_(std::move(samples)) {
  if (!is_power_of_two(grid_.n) || grid_.n < 64) {
    throw Error(ErrorCode::InvalidProfile, "radial grid size must be a power of two >= 64");
  }
  if (!(grid_.u_min < grid_.u_max) || !std::isfinite(grid_.u_min) || !std::isfinite(grid_.u_max)) {
    throw Error(ErrorCode::InvalidProfile, "radial grid needs finite u_min < u_max");
  }
  if (samples_.size() != grid_.n) {
    throw Error(ErrorCode::InvalidProfile, "expected " + std::to_string(grid_.n) + " samples, got " +
                                               std::to_string(samples_.size()));
  }
  if (!samples_.allFinite()) throw Error(ErrorCode::InvalidProfile, "radial samples must be finite");
  const Index m = grid_.margin();
  for (Index j = 0; j < grid_.n; ++j) {
    if (samples_(j) == 0.0) continue;
    if (j < m || j >= grid_.n - m) {
      throw Error(ErrorCode::InvalidProfile, "radial samples must vanish on the outer 5% of the grid");
    }
    if (first_ > last_) first_ = j;
    last_ = j;
  }
}

RadialProfile RadialProfile::from_function(const RadialGrid& grid, const std::function<double(double)>& h) {
  RealVector s(grid.n);
  for (Index j = 0; j < grid.n; ++j) s(j) = h(grid.node(j));
  return RadialProfile(grid, std::move(s));
}

RadialProfile RadialProfile::bump(const RadialGrid& grid, double a, double b, double amplitude) {
  if (!(a < b)) throw Error(ErrorCode::InvalidProfile, "bump needs a < b");
  return from_function(grid, [=](double u) { return amplitude * horizon::bump(u, a, b); });
}

RadialProfile RadialProfile::zero(const RadialGrid& grid) { return RadialProfile(grid, RealVector::Zero(grid.n)); }

double RadialProfile::interpolate(double u) const {
  if (is_zero()) return 0.0;
  const double d = grid_.spacing();
  if (u <= grid_.node(first_) - d || u >= grid_.node(last_) + d) return 0.0;
  double sum = 0.0;
  for (Index j = first_; j <= last_; ++j) sum += samples_(j) * sinc((u - grid_.node(j)) / d);
  return sum;
}

Complex RadialProfile::fourier(double k) const {
  const double d = grid_.spacing();
  if (is_zero() || std::abs(k) * d >= kPi) return 0.0;
  Complex sum = 0.0;
  for (Index j = first_; j <= last_; ++j) sum += samples_(j) * std::polar(1.0, -k * grid_.node(j));
  return d * sum;
}

double CapRect::solid_angle() const { return (phi2 - phi1) * (std::cos(theta1) - std::cos(theta2)); }

std::pair<RealVector, RealVector> SphereQuadrature::theta_rule() const {
  if (n_theta < 1 || n_phi < 1) throw Error(ErrorCode::ConfigError, "sphere quadrature needs positive node counts");
  const int n = static_cast<int>(n_theta);
  // Boost returns the nonnegative zeros of P_n in ascending order.
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x;
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it > 0.0) x.push_back(-*it);
  }
  for (double z : zeros) x.push_back(z);
  RealVector theta(n_theta);
  RealVector w(n_theta);
  for (Index i = 0; i < n_theta; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    const double dp = boost::math::legendre_p_prime(n, xi);
    w(i) = 2.0 / ((1.0 - xi * xi) * dp * dp);
    theta(i) = std::acos(xi);
  }
  return {theta, w};
}

double SphereQuadrature::phi_node(Index j) const {
  return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_phi);
}

bool caps_overlap(const std::vector<CapRect>& caps) {
  for (std::size_t i = 0; i < caps.size(); ++i) {
    for (std::size_t j = i + 1; j < caps.size(); ++j) {
      if (rect_intersection_area(caps[i], caps[j]) > 1e-14) return true;
    }
  }
  return false;
}

AngularWeight AngularWeight::caps(std::vector<CapRect> caps) {
  for (const auto& c : caps) validate_cap(c);
  if (caps_overlap(caps)) throw Error(ErrorCode::OverlappingCaps, "cap rectangles overlap");
  AngularWeight a;
  a.kind_ = Kind::CapUnion;
  a.caps_ = std::move(caps);
  return a;
}

AngularWeight AngularWeight::full_sphere(double value) { return caps({CapRect{0.0, kPi, 0.0, 2.0 * kPi, value}}); }

AngularWeight AngularWeight::grid(const SphereQuadrature& q, const std::function<double(double, double)>& f) {
  AngularWeight a;
  a.kind_ = Kind::Grid;
  a.quad_ = q;
  const RealVector theta = q.theta_rule().first;
  a.values_.resize(q.n_theta * q.n_phi);
  for (Index i = 0; i < q.n_theta; ++i)
    for (Index j = 0; j < q.n_phi; ++j) a.values_(i * q.n_phi + j) = f(theta(i), q.phi_node(j));
  if (!a.values_.allFinite()) throw Error(ErrorCode::InvalidProfile, "angular samples must be finite");
  return a;
}

AngularWeight AngularWeight::grid(const SphereQuadrature& q, RealVector values) {
  if (q.n_theta < 1 || q.n_phi < 1 || values.size() != q.n_theta * q.n_phi) {
    throw Error(ErrorCode::InvalidProfile, "angular samples must number n_theta * n_phi");
  }
  if (!values.allFinite()) throw Error(ErrorCode::InvalidProfile, "angular samples must be finite");
  AngularWeight a;
  a.kind_ = Kind::Grid;
  a.quad_ = q;
  a.values_ = std::move(values);
  return a;
}

double AngularWeight::value_at(double theta, double phi) const {
  if (kind_ != Kind::CapUnion) throw Error(ErrorCode::GridMismatch, "value_at is defined for cap unions only");
  double v = 0.0;
  for (const auto& c : caps_) {
    if (theta >= c.theta1 && theta < c.theta2 && phi >= c.phi1 && phi < c.phi2) v += c.value;
  }
  return v;
}

double AngularWeight::solid_angle() const {
  if (kind_ != Kind::CapUnion) throw Error(ErrorCode::GridMismatch, "solid_angle is defined for cap unions only");
  double s = 0.0;
  for (const auto& c : caps_) s += c.solid_angle();
  return s;
}

double sphere_integral(const AngularWeight& a, const AngularWeight& b) {
  using Kind = AngularWeight::Kind;
  if (a.kind() == Kind::CapUnion && b.kind() == Kind::CapUnion) {
    double s = 0.0;
    for (const auto& x : a.cap_list())
      for (const auto& y : b.cap_list()) s += x.value * y.value * rect_intersection_area(x, y);
    return s;
  }
  if (a.kind() == Kind::Grid && b.kind() == Kind::Grid && !(a.quadrature() == b.quadrature())) {
    throw Error(ErrorCode::GridMismatch, "angular weights use different quadrature rules");
  }
  const AngularWeight& g = a.kind() == Kind::Grid ? a : b;
  const AngularWeight& other = a.kind() == Kind::Grid ? b : a;
  const SphereQuadrature& q = g.quadrature();
  const auto [theta, w] = q.theta_rule();
  const double dphi = 2.0 * kPi / static_cast<double>(q.n_phi);
  double s = 0.0;
  for (Index i = 0; i < q.n_theta; ++i) {
    for (Index j = 0; j < q.n_phi; ++j) {
      const Index idx = i * q.n_phi + j;
      const double ov = other.kind() == Kind::Grid ? other.values()(idx) : other.value_at(theta(i), q.phi_node(j));
      s += w(i) * dphi * g.values()(idx) * ov;
    }
  }
  return s;
}

HorizonTestFunction::HorizonTestFunction(RadialProfile h, AngularWeight a) { add_term(std::move(h), std::move(a)); }

void HorizonTestFunction::add_term(RadialProfile h, AngularWeight a) {
  if (!terms_.empty() && terms_.front().first.grid() != h.grid()) {
    throw Error(ErrorCode::GridMismatch, "all radial profiles of a test function must share one grid");
  }
  terms_.emplace_back(std::move(h), std::move(a));
}

HorizonTestFunction HorizonTestFunction::scaled(double c) const {
  HorizonTestFunction out;
  for (const auto& [h, a] : terms_) out.add_term(RadialProfile(h.grid(), c * h.samples()), a);
  return out;
}

HorizonTestFunction HorizonTestFunction::operator+(const HorizonTestFunction& g) const {
  HorizonTestFunction out = *this;
  for (const auto& [h, a] : g.terms_) out.add_term(h, a);
  return out;
}

HorizonTestFunction HorizonTestFunction::operator-(const HorizonTestFunction& g) const {
  return *this + g.scaled(-1.0);
}

double HorizonTestFunction::support_max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& [h, a] : terms_) {
    if (!h.is_zero()) m = std::max(m, h.grid().node(h.last_nonzero()));
  }
  return m;
}

RadialProfile dilate_translate(const RadialProfile& h, double t, double a, const HorizonParams& p) {
  if (h.is_zero() || (t == 0.0 && a == 0.0)) return h;
  const RadialGrid& g = h.grid();
  const double d = g.spacing();
  const double scale = std::exp(p.kappa() * t);
  // Support of the interpolant is (U_first - d, U_last + d); its image under
  // U -> (U + a) / scale must stay inside the inner 90% of the grid.
  const double lo = (g.node(h.first_nonzero()) - d + a) / scale;
  const double hi = (g.node(h.last_nonzero()) + d + a) / scale;
  const double inner_lo = g.node(g.margin());
  const double inner_hi = g.node(g.n - 1 - g.margin());
  if (lo < inner_lo || hi > inner_hi) {
    throw Error(ErrorCode::SupportEscapesGrid, "dilated/translated support [" + std::to_string(lo) + ", " +
                                                   std::to_string(hi) + "] leaves the inner 90% of the grid");
  }
  RealVector out = RealVector::Zero(g.n);
  const auto j_lo = static_cast<Index>(std::max(0.0, std::floor((lo - g.u_min) / d)));
  const auto j_hi = static_cast<Index>(std::min(static_cast<double>(g.n - 1), std::ceil((hi - g.u_min) / d)));
  for (Index j = j_lo; j <= j_hi; ++j) out(j) = h.interpolate(scale * g.node(j) - a);
  return RadialProfile(g, std::move(out));
}

HorizonTestFunction dilate_translate(const HorizonTestFunction& f, double t, double a, const HorizonParams& p) {
  HorizonTestFunction out;
  for (const auto& [h, w] : f.terms()) out.add_term(dilate_translate(h, t, a, p), w);
  return out;
}

std::pair<double, double> compose_dilation_translation(double t1, double a1, double t2, double a2,
                                                       const HorizonParams& p) {
  return {t1 + t2, a1 + std::exp(p.kappa() * t1) * a2};
}

}  // namespace modlab::horizon
