#include "modlab/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "modlab/epsilon_oracle.hpp"
#include "modlab/error.hpp"

namespace modlab::horizon {

namespace {

constexpr double kPi = std::numbers::pi;

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_same_grid(const RadialProfile& a, const RadialProfile& b) {
  if (a.grid() != b.grid()) throw Error(ErrorCode::GridMismatch, "radial profiles live on different grids");
}

void require_right_wedge(const HorizonTestFunction& f, const char* what) {
  if (f.support_max() >= 0.0) {
    throw Error(ErrorCode::SupportNotRightWedge, std::string(what) + ": test function must be supported in U < 0");
  }
}

// 1 / (1 - e^{-beta w}) * w, continuous at w = 0.
double thermal_weight(double w, double beta) {
  if (std::abs(beta * w) < 1e-8) return 1.0 / beta + 0.5 * w;
  return w / -std::expm1(-beta * w);
}

// w / sinh(beta w / 2), continuous at w = 0.
double tunneling_weight(double w, double beta) {
  const double x = 0.5 * beta * w;
  if (std::abs(x) < 1e-8) return 2.0 / beta;
  return w / std::sinh(x);
}

double gaussian_window_integral(double w) { return w * std::sqrt(2.0 * kPi); }

}  // namespace

Complex lambda_1d(const RadialProfile& h1, const RadialProfile& h2) {
  require_same_grid(h1, h2);
  if (h1.is_zero() || h2.is_zero()) return 0.0;
  // Lattice cross-correlation c_m = sum_j h1_j h2_{j-m}. For the sinc
  // interpolants (1/pi) int_0^inf k conj(h1^) h2^ dk reduces to
  //   Re = (pi/2) c_0 + (1/pi) sum_{m != 0} c_m ((-1)^m - 1) / m^2
  //   Im = -sum_{m != 0} c_m (-1)^m / m
  // independently of the grid spacing.
  const RealVector& a = h1.samples();
  const RealVector& b = h2.samples();
  const Index m_lo = h1.first_nonzero() - h2.last_nonzero();
  const Index m_hi = h1.last_nonzero() - h2.first_nonzero();
  std::vector<double> c(static_cast<std::size_t>(m_hi - m_lo + 1), 0.0);
  for (Index i = h1.first_nonzero(); i <= h1.last_nonzero(); ++i) {
    if (a(i) == 0.0) continue;
    for (Index j = h2.first_nonzero(); j <= h2.last_nonzero(); ++j) {
      c[static_cast<std::size_t>(i - j - m_lo)] += a(i) * b(j);
    }
  }
  CompensatedSum re;
  CompensatedSum im;
  for (Index m = m_lo; m <= m_hi; ++m) {
    const double cm = c[static_cast<std::size_t>(m - m_lo)];
    if (cm == 0.0) continue;
    if (m == 0) {
      re.add(0.5 * kPi * cm);
      continue;
    }
    const double md = static_cast<double>(m);
    const bool odd = (m % 2) != 0;
    if (odd) re.add(-2.0 * cm / (kPi * md * md));
    im.add((odd ? cm : -cm) / md);
  }
  return {re.value(), im.value()};
}

Complex lambda_full(const HorizonTestFunction& f, const HorizonTestFunction& g, const HorizonParams& p) {
  Complex total = 0.0;
  for (const auto& [hf, af] : f.terms()) {
    for (const auto& [hg, ag] : g.terms()) {
      require_same_grid(hf, hg);
      const double ang = sphere_integral(af, ag);
      if (ang == 0.0) continue;
      total += ang * lambda_1d(hf, hg);
    }
  }
  return p.r() * p.r() * total;
}

double symplectic(const HorizonTestFunction& f, const HorizonTestFunction& g, const HorizonParams& p) {
  return 2.0 * lambda_full(f, g, p).imag();
}

double weyl_vacuum(const HorizonTestFunction& f, const HorizonParams& p) {
  return std::exp(-0.5 * lambda_full(f, f, p).real());
}

WeylPair weyl_two_point(const HorizonTestFunction& f, const HorizonTestFunction& g, const HorizonParams& p) {
  const double sigma = symplectic(f, g, p);
  const Complex via_relation = std::exp(Complex(0.0, -0.5 * sigma)) * weyl_vacuum(f + g, p);
  const Complex exponent = -0.5 * lambda_full(f, f, p) - 0.5 * lambda_full(g, g, p) - lambda_full(f, g, p);
  return {via_relation, std::exp(exponent)};
}

std::vector<std::pair<double, Complex>> dilation_correlation(const RadialProfile& f, const RadialProfile& g,
                                                             const HorizonParams& p, double t_max,
                                                             const DilationKmsOptions& o) {
  require_same_grid(f, g);
  // (tau_t g)^(k) = e^{-kappa t} g^(k e^{-kappa t}); with k = e^q,
  //   L(t) = (1/pi) e^{-kappa t} int e^{2q} conj(f^(e^q)) g^(e^{q - kappa t}) dq.
  // On a q-grid of step delta and t-step stride * delta / kappa, the shift
  // q - kappa t stays on the grid.
  const double delta = o.log_step;
  const double q_hi = std::log(kPi / f.grid().spacing());
  const auto nq = static_cast<Index>(std::floor((q_hi - o.log_k_min) / delta)) + 1;
  const double t_step = o.t_stride * delta / p.kappa();
  const auto jt = static_cast<Index>(std::ceil(t_max / t_step));
  const Index pad = jt * o.t_stride;

  std::vector<Complex> fq(static_cast<std::size_t>(nq));
  for (Index i = 0; i < nq; ++i) {
    const double q = o.log_k_min + delta * static_cast<double>(i);
    fq[static_cast<std::size_t>(i)] = std::exp(2.0 * q) * std::conj(f.fourier(std::exp(q))) * delta;
  }
  std::vector<Complex> gq(static_cast<std::size_t>(nq + 2 * pad));
  for (Index i = -pad; i < nq + pad; ++i) {
    const double q = o.log_k_min + delta * static_cast<double>(i);
    gq[static_cast<std::size_t>(i + pad)] = g.fourier(std::exp(q));
  }

  std::vector<std::pair<double, Complex>> out;
  out.reserve(static_cast<std::size_t>(2 * jt + 1));
  for (Index j = -jt; j <= jt; ++j) {
    const double t = t_step * static_cast<double>(j);
    const Index shift = j * o.t_stride;
    Complex sum = 0.0;
    for (Index i = 0; i < nq; ++i) sum += fq[static_cast<std::size_t>(i)] * gq[static_cast<std::size_t>(i - shift + pad)];
    out.emplace_back(t, std::exp(-p.kappa() * t) * sum / kPi);
  }
  return out;
}

DilationKmsResult kms_dilation_check(const HorizonTestFunction& f, const HorizonTestFunction& g, double beta_test,
                                     const HorizonParams& p, const DilationKmsOptions& o) {
  require_right_wedge(f, "kms_dilation_check");
  require_right_wedge(g, "kms_dilation_check");
  if (o.window_widths.empty()) throw Error(ErrorCode::ConfigError, "kms_dilation_check: no window widths");

  DilationKmsResult result;
  const double norm = std::sqrt(std::max(0.0, lambda_full(f, f, p).real() * lambda_full(g, g, p).real()));
  if (g.empty() || f.empty() || norm == 0.0) {
    result.per_window.assign(o.window_widths.size(), 0.0);
    return result;
  }
  const double w_max = *std::max_element(o.window_widths.begin(), o.window_widths.end()) / p.kappa();
  const double t_max = o.half_range_widths * w_max;

  // L(t) = sum_kl r^2 <a_k, b_l> lambda(h_k, tau_t g_l).
  std::vector<std::pair<double, Complex>> l_of_t;
  for (const auto& [hf, af] : f.terms()) {
    for (const auto& [hg, ag] : g.terms()) {
      const double weight = p.r() * p.r() * sphere_integral(af, ag);
      if (weight == 0.0 || hf.is_zero() || hg.is_zero()) continue;
      const auto part = dilation_correlation(hf, hg, p, t_max, o);
      if (l_of_t.empty()) {
        l_of_t.assign(part.size(), {0.0, 0.0});
        for (std::size_t i = 0; i < part.size(); ++i) l_of_t[i].first = part[i].first;
      }
      for (std::size_t i = 0; i < part.size(); ++i) l_of_t[i].second += weight * part[i].second;
    }
  }
  if (l_of_t.empty()) {
    result.per_window.assign(o.window_widths.size(), 0.0);
    return result;
  }
  const double dt = l_of_t.size() > 1 ? l_of_t[1].first - l_of_t[0].first : 1.0;

  for (double width_units : o.window_widths) {
    const double w = width_units / p.kappa();
    const double half = o.half_range_widths * w;
    Complex lhs = 0.0;
    Complex rhs = 0.0;
    for (const auto& [t, l] : l_of_t) {
      if (std::abs(t) > half) continue;
      // R(t) = Lambda(tau_t g, f) = conj(L(t)) for real test functions.
      const Complex shifted(t, -beta_test);
      lhs += std::exp(-t * t / (2.0 * w * w)) * l;
      rhs += std::exp(-shifted * shifted / (2.0 * w * w)) * std::conj(l);
    }
    const double dev = std::abs(lhs - rhs) * dt / (gaussian_window_integral(w) * norm);
    result.per_window.push_back(dev);
    result.deviation = std::max(result.deviation, dev);
  }
  return result;
}

Complex KodamaProfile::fourier(double w) const {
  const Index n = samples.size();
  const double ds = spacing();
  Complex sum = 0.0;
  for (Index j = 0; j < n; ++j) {
    const double weight = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    sum += weight * samples(j) * std::polar(1.0, -w * node(j));
  }
  return ds * sum;
}

namespace {

template <typename Weight>
Complex spectral_pairing(const KodamaProfile& f, const KodamaProfile& g, double w_max, Index w_nodes,
                         Weight weight) {
  if (w_nodes < 3 || !(w_max > 0.0)) throw Error(ErrorCode::ConfigError, "frequency grid must be nonempty");
  const double dw = 2.0 * w_max / static_cast<double>(w_nodes - 1);
  Complex sum = 0.0;
  for (Index j = 0; j < w_nodes; ++j) {
    const double w = -w_max + dw * static_cast<double>(j);
    const double end = (j == 0 || j == w_nodes - 1) ? 0.5 : 1.0;
    sum += end * std::conj(f.fourier(w)) * g.fourier(w) * weight(w);
  }
  return sum * dw;
}

}  // namespace

Complex kodama_lambda_same(const KodamaProfile& f, const KodamaProfile& g, const HorizonParams& p, double w_max,
                           Index w_nodes) {
  // U = -e^{kappa s} reverses orientation, which conjugates the pairing.
  const double beta = p.beta();
  return spectral_pairing(g, f, w_max, w_nodes, [beta](double w) { return thermal_weight(w, beta); }) / kPi;
}

Complex kodama_lambda_opposite(const KodamaProfile& left, const KodamaProfile& right, const HorizonParams& p,
                               double w_max, Index w_nodes) {
  const double beta = p.beta();
  return -spectral_pairing(left, right, w_max, w_nodes, [beta](double w) { return tunneling_weight(w, beta); }) /
         (2.0 * kPi);
}

TunnelingResult tunneling_overlap(double e0, int n, const HorizonParams& p, const TunnelingOptions& o) {
  if (!(e0 > 0.0) || n < 1) throw Error(ErrorCode::ConfigError, "tunneling_overlap needs E0 > 0 and n >= 1");
  const double sigma = static_cast<double>(n) / p.kappa();
  const double half = o.envelope_widths * sigma;
  if (o.envelope_widths < 8.5 || o.s_nodes < 16) {
    throw Error(ErrorCode::SupportEscapesGrid, "tunneling_overlap: envelope is not negligible at the grid edge");
  }
  KodamaProfile packet;
  packet.s_min = -half;
  packet.s_max = half;
  packet.samples.resize(o.s_nodes);
  for (Index j = 0; j < o.s_nodes; ++j) {
    const double s = packet.node(j);
    packet.samples(j) = std::exp(-s * s / (2.0 * sigma * sigma)) * std::cos(e0 * s);
  }
  const double w_max = e0 + 10.0 / sigma;
  if (w_max >= 0.5 * kPi / packet.spacing()) {
    throw Error(ErrorCode::SupportEscapesGrid, "tunneling_overlap: wavepacket frequency not resolved on the s-grid");
  }
  const double dw = o.w_step_per_width / sigma;
  const auto w_nodes = static_cast<Index>(std::ceil(2.0 * w_max / dw)) + 1;

  // The same real profile is used on both wedges (mirror images in U).
  TunnelingResult r;
  r.lambda_rr = kodama_lambda_same(packet, packet, p, w_max, w_nodes).real();
  r.lambda_ll = r.lambda_rr;
  r.lambda_lr = kodama_lambda_opposite(packet, packet, p, w_max, w_nodes);
  r.overlap = std::norm(r.lambda_lr) / (r.lambda_ll * r.lambda_rr);
  const double x = p.beta() * e0;
  const double ratio = -std::expm1(-x) / std::sinh(0.5 * x);
  r.thermal_limit = 0.25 * ratio * ratio;
  const double ch = std::cosh(0.5 * x);
  r.real_packet_limit = 1.0 / (ch * ch);
  return r;
}

namespace {

// Fourth-order central difference; samples vanish near the grid edges.
RealVector derivative(const RadialProfile& h) {
  const RealVector& s = h.samples();
  const Index n = s.size();
  const double d = h.grid().spacing();
  RealVector out = RealVector::Zero(n);
  for (Index j = 2; j + 2 < n; ++j) out(j) = (s(j - 2) - 8.0 * s(j - 1) + 8.0 * s(j + 1) - s(j + 2)) / (12.0 * d);
  return out;
}

}  // namespace

double coherent_relent_closed(const HorizonTestFunction& f, const HorizonParams& p) {
  if (f.empty()) return 0.0;
  require_right_wedge(f, "coherent_relent_closed");
  std::vector<RealVector> derivs;
  for (const auto& [h, a] : f.terms()) derivs.push_back(derivative(h));
  const RadialGrid& g = f.terms().front().first.grid();
  CompensatedSum total;
  for (std::size_t k = 0; k < derivs.size(); ++k) {
    for (std::size_t l = 0; l < derivs.size(); ++l) {
      const double ang = sphere_integral(f.terms()[k].second, f.terms()[l].second);
      if (ang == 0.0) continue;
      CompensatedSum radial;
      for (Index j = 0; j < g.n; ++j) {
        const double prod = derivs[k](j) * derivs[l](j);
        if (prod != 0.0) radial.add(g.node(j) * prod);
      }
      total.add(ang * radial.value() * g.spacing());
    }
  }
  return -2.0 * kPi * p.r() * p.r() * total.value();
}

ModularEntropy coherent_relent_modular(const HorizonTestFunction& f, const HorizonParams& p, double dt) {
  if (f.empty()) return {};
  require_right_wedge(f, "coherent_relent_modular");
  if (!(dt > 0.0)) throw Error(ErrorCode::ConfigError, "coherent_relent_modular: dt must be positive");
  // Delta^{it} acts as the dilation by beta t.
  const HorizonTestFunction plus = dilate_translate(f, p.beta() * dt, 0.0, p);
  const HorizonTestFunction minus = dilate_translate(f, -p.beta() * dt, 0.0, p);
  auto weyl_overlap = [&](const HorizonTestFunction& ft) {
    const HorizonTestFunction diff = ft - f;
    const Complex exponent(-0.5 * lambda_full(diff, diff, p).real(), 0.5 * symplectic(f, ft, p));
    return std::exp(exponent);
  };
  ModularEntropy out;
  const Complex deriv = (weyl_overlap(plus) - weyl_overlap(minus)) / (2.0 * dt);
  out.via_weyl = (Complex(0.0, 1.0) * deriv).real();
  out.via_lambda = -(lambda_full(f, plus, p) - lambda_full(f, minus, p)).imag() / (2.0 * dt);
  return out;
}

AdditivityReport area_additivity_check(const RadialProfile& h, const std::vector<CapRect>& caps,
                                       const HorizonParams& p) {
  if (caps.empty()) throw Error(ErrorCode::ConfigError, "area_additivity_check: no caps");
  if (caps_overlap(caps)) throw Error(ErrorCode::OverlappingCaps, "area_additivity_check: caps overlap");
  AdditivityReport r;
  HorizonTestFunction combined;
  double sum = 0.0;
  for (const auto& c : caps) {
    CapRect unit_cap = c;
    unit_cap.value = 1.0;
    const AngularWeight chi = AngularWeight::caps({unit_cap});
    const HorizonTestFunction fj(h, chi);
    const double s = coherent_relent_closed(fj, p);
    r.single.push_back(s);
    r.solid_angles.push_back(unit_cap.solid_angle());
    r.entropy_per_area.push_back(s / (p.r() * p.r() * unit_cap.solid_angle()));
    combined.add_term(h, chi);
    sum += s;
  }
  r.combined = coherent_relent_closed(combined, p);
  r.additivity_residual = std::abs(r.combined - sum) / std::max(std::abs(r.combined), 1e-300);
  const auto [lo, hi] = std::minmax_element(r.entropy_per_area.begin(), r.entropy_per_area.end());
  double mean = 0.0;
  for (double v : r.entropy_per_area) mean += v;
  mean /= static_cast<double>(r.entropy_per_area.size());
  r.proportionality_residual = mean != 0.0 ? (*hi - *lo) / std::abs(mean) : 0.0;
  return r;
}

SpectrumReport spectrum_condition_check(const RadialProfile& h, const HorizonParams& p, double t, double a) {
  SpectrumReport r{};
  r.positive_frequency = lambda_1d(h, h);
  if (h.is_zero()) return r;
  const double d = h.grid().spacing();
  const oracle::Support s{h.grid().node(h.first_nonzero()) - d, h.grid().node(h.last_nonzero()) + d};
  auto fn = [&h](double u) { return h.interpolate(u); };
  r.oracle = oracle::epsilon_limit(fn, s, fn, s, 1e-2, 4);
  r.negative_frequency_residual = std::abs(r.oracle - r.positive_frequency) / std::abs(r.positive_frequency);

  const RadialProfile left = dilate_translate(dilate_translate(h, t, 0.0, p), 0.0, a, p);
  const RadialProfile right = dilate_translate(dilate_translate(h, 0.0, a * std::exp(p.kappa() * t), p), t, 0.0, p);
  r.composition_residual = (left.samples() - right.samples()).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace modlab::horizon
