#include <cmath>
#include <numbers>

#include "doctest.h"
#include "modlab/epsilon_oracle.hpp"
#include "modlab/error.hpp"
#include "modlab/horizon.hpp"
#include "random_ops.hpp"

using namespace modlab;
using namespace modlab::horizon;
using modlab::testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

const RadialGrid kGrid{};
const HorizonParams kUnit(1.0, 1.0);

HorizonTestFunction sphere_bump(double a, double b, double amplitude = 1.0) {
  return HorizonTestFunction(RadialProfile::bump(kGrid, a, b, amplitude), AngularWeight::full_sphere());
}

// Random smooth profile: a few bumps with random positions and amplitudes
// inside [lo, hi].
RadialProfile random_profile(Rng& rng, double lo, double hi) {
  RealVector s = RealVector::Zero(kGrid.n);
  for (int k = 0; k < 3; ++k) {
    const double a = rng.uniform(lo, hi - 0.6);
    const double b = rng.uniform(a + 0.5, std::min(hi, a + 1.5));
    s += RadialProfile::bump(kGrid, a, b, rng.uniform(-1.0, 1.0)).samples();
  }
  return RadialProfile(kGrid, s);
}

Complex bump_oracle(double a1, double b1, double a2, double b2, int levels) {
  auto h1 = [=](double u) { return bump(u, a1, b1); };
  auto h2 = [=](double u) { return bump(u, a2, b2); };
  return oracle::epsilon_limit(h1, {a1, b1}, h2, {a2, b2}, 1e-2, levels);
}

KodamaProfile kodama_samples(const std::function<double(double)>& f, double s_min, double s_max, Index n) {
  KodamaProfile k;
  k.s_min = s_min;
  k.s_max = s_max;
  k.samples.resize(n);
  for (Index j = 0; j < n; ++j) k.samples(j) = f(k.node(j));
  return k;
}

}  // namespace

TEST_CASE("horizon parameters") {
  const HorizonParams p(0.5, 3.0);
  CHECK(p.beta() * p.kappa() == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  try {
    HorizonParams(-1.0, 1.0);
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
  CHECK_THROWS_AS(HorizonParams(1.0, 0.0), Error);
}

TEST_CASE("radial profile validation") {
  CHECK_THROWS_AS(RadialProfile(RadialGrid{-8, 8, 1000}, RealVector::Zero(1000)), Error);
  RealVector s = RealVector::Zero(kGrid.n);
  s(3) = 1.0;
  try {
    RadialProfile(kGrid, s);
    FAIL("expected InvalidProfile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidProfile);
  }
  s(3) = std::nan("");
  CHECK_THROWS_AS(RadialProfile(kGrid, s), Error);
  const auto h = RadialProfile::bump(kGrid, -2.0, -1.0);
  CHECK(h.interpolate(kGrid.node(h.first_nonzero() + 7)) ==
        doctest::Approx(h.samples()(h.first_nonzero() + 7)).epsilon(1e-13));
  CHECK(h.interpolate(-1.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("lambda_1d matches the eps-regularized kernel on reference bumps") {
  struct Case {
    double a1, b1, a2, b2;
  };
  for (const auto& c : {Case{-2, -1, -2, -1}, Case{-2, -1, -1.8, -0.6}, Case{-3, -1, -2.5, -0.5}}) {
    const Complex spectral = lambda_1d(RadialProfile::bump(kGrid, c.a1, c.b1), RadialProfile::bump(kGrid, c.a2, c.b2));
    const Complex oracle = bump_oracle(c.a1, c.b1, c.a2, c.b2, 3);
    CHECK(std::abs(spectral - oracle) <= 1e-4 * std::abs(oracle));
  }
}

TEST_CASE("lambda_1d structure") {
  Rng rng(41);
  const auto zero = RadialProfile::zero(kGrid);
  for (int trial = 0; trial < 6; ++trial) {
    const auto h1 = random_profile(rng, -5.0, 5.0);
    const auto h2 = random_profile(rng, -5.0, 5.0);
    CHECK(lambda_1d(h1, zero) == Complex(0.0));
    const Complex l12 = lambda_1d(h1, h2);
    const Complex l21 = lambda_1d(h2, h1);
    CHECK(std::abs(l12 - std::conj(l21)) <= 1e-12 * std::abs(l12));
    const Complex l11 = lambda_1d(h1, h1);
    CHECK(std::abs(l11.imag()) <= 1e-12 * l11.real());
    CHECK(l11.real() >= -1e-12);
    // Cauchy-Schwarz.
    CHECK(std::norm(l12) <= l11.real() * lambda_1d(h2, h2).real() * (1.0 + 1e-8));
  }
  // Grid spacing drops out: the same function on a finer grid.
  const RadialGrid fine{-8.0, 8.0, 8192};
  const Complex coarse = lambda_1d(RadialProfile::bump(kGrid, -2, -1), RadialProfile::bump(kGrid, -1.7, -0.2));
  const Complex refined = lambda_1d(RadialProfile::bump(fine, -2, -1), RadialProfile::bump(fine, -1.7, -0.2));
  CHECK(std::abs(coarse - refined) <= 1e-9 * std::abs(coarse));
  CHECK_THROWS_AS(lambda_1d(RadialProfile::bump(kGrid, -2, -1), RadialProfile::bump(fine, -2, -1)), Error);
}

TEST_CASE("imaginary part is the local form int h1' h2") {
  // Independent quadrature of the analytic derivative.
  const double a1 = -2, b1 = -1, a2 = -1.8, b2 = -0.6;
  const int n = 200000;
  const double du = (b1 - a1) / n;
  double ref = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double u = a1 + du * j;
    ref += (j == 0 || j == n ? 0.5 : 1.0) * bump_derivative(u, a1, b1) * bump(u, a2, b2);
  }
  ref *= du;
  const Complex l = lambda_1d(RadialProfile::bump(kGrid, a1, b1), RadialProfile::bump(kGrid, a2, b2));
  CHECK(l.imag() == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("lambda_full") {
  const auto f = sphere_bump(-2.0, -1.0);
  CHECK(std::abs(lambda_full(HorizonTestFunction(RadialProfile::zero(kGrid), AngularWeight::full_sphere()), f, kUnit)) == 0.0);
  const double base = lambda_full(f, f, HorizonParams(1.0, 1.0)).real();
  CHECK(lambda_full(f, f, HorizonParams(1.0, 2.0)).real() == doctest::Approx(4.0 * base).epsilon(1e-14));

  // Product f = h (x) a against the explicit factorization, and a split of
  // the angular weight into two hemispheres.
  const auto h = RadialProfile::bump(kGrid, -2.0, -1.0);
  const AngularWeight a = AngularWeight::caps({CapRect{0.0, 1.0, 0.0, 3.0, 2.0}});
  const HorizonTestFunction single(h, a);
  const HorizonParams p(1.0, 1.7);
  const double expected = p.r() * p.r() * sphere_integral(a, a) * lambda_1d(h, h).real();
  CHECK(lambda_full(single, single, p).real() == doctest::Approx(expected).epsilon(1e-14));

  HorizonTestFunction split(h, AngularWeight::caps({CapRect{0.0, kPi / 2, 0.0, 2 * kPi, 1.0}}));
  split.add_term(h, AngularWeight::caps({CapRect{kPi / 2, kPi, 0.0, 2 * kPi, 1.0}}));
  CHECK(lambda_full(split, split, kUnit).real() ==
        doctest::Approx(lambda_full(f, f, kUnit).real()).epsilon(1e-12));
}

TEST_CASE("sphere quadrature") {
  const SphereQuadrature q;
  const auto [theta, w] = q.theta_rule();
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  // int cos^2 theta dOmega = 4 pi / 3 and a smooth weight against its cap form.
  const auto c2 = AngularWeight::grid(q, [](double t, double) { return std::cos(t); });
  CHECK(sphere_integral(c2, c2) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
  const auto ones = AngularWeight::grid(q, [](double, double) { return 1.0; });
  CHECK(sphere_integral(ones, AngularWeight::full_sphere()) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  const auto y = AngularWeight::grid(q, [](double t, double ph) { return std::sin(t) * std::cos(ph); });
  CHECK(sphere_integral(y, y) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));

  const CapRect cap{0.2, 1.1, 0.5, 2.0, 1.0};
  CHECK(sphere_integral(AngularWeight::caps({cap}), AngularWeight::full_sphere()) ==
        doctest::Approx(1.5 * (std::cos(0.2) - std::cos(1.1))).epsilon(1e-14));
  try {
    AngularWeight::caps({CapRect{0.0, 1.0, 0.0, 1.0, 1.0}, CapRect{0.5, 1.5, 0.5, 1.5, 1.0}});
    FAIL("expected OverlappingCaps");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlappingCaps);
  }
  // Touching caps are disjoint.
  CHECK_NOTHROW(AngularWeight::caps({CapRect{0.0, 1.0, 0.0, 1.0, 1.0}, CapRect{1.0, 2.0, 0.0, 1.0, 1.0}}));

  // Symmetric and positive on nonzero weights.
  Rng rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const double c1 = rng.normal(), c2c = rng.normal();
    const auto a = AngularWeight::grid(q, [&](double t, double ph) { return c1 + std::sin(t) * std::cos(ph + c2c); });
    const auto b = AngularWeight::grid(q, [&](double t, double) { return c2c * std::cos(t); });
    CHECK(sphere_integral(a, b) == doctest::Approx(sphere_integral(b, a)));
    CHECK(sphere_integral(a, a) > 0.0);
  }
}

TEST_CASE("symplectic form") {
  Rng rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    const HorizonTestFunction f(random_profile(rng, -5, 5), AngularWeight::full_sphere());
    const HorizonTestFunction g(random_profile(rng, -5, 5), AngularWeight::caps({CapRect{0.3, 2.0, 0.0, 4.0, 1.5}}));
    CHECK(std::abs(symplectic(f, f, kUnit)) <= 1e-10);
    CHECK(std::abs(symplectic(f, g, kUnit) + symplectic(g, f, kUnit)) <= 1e-10);
    const double lff = lambda_full(f, f, kUnit).real();
    const double lgg = lambda_full(g, g, kUnit).real();
    CHECK(std::abs(symplectic(f, g, kUnit)) <= 2.0 * std::sqrt(lff * lgg) * (1.0 + 1e-8));
  }
  // Locality: disjoint radial supports.
  const auto f = sphere_bump(-2.0, -1.0);
  const auto g = sphere_bump(-0.5, -0.1);
  const double scale = std::sqrt(lambda_full(f, f, kUnit).real() * lambda_full(g, g, kUnit).real());
  CHECK(std::abs(symplectic(f, g, kUnit)) <= 1e-6 * scale);
}

TEST_CASE("Weyl vacuum functional") {
  CHECK(weyl_vacuum(HorizonTestFunction(RadialProfile::zero(kGrid), AngularWeight::full_sphere()), kUnit) == 1.0);
  Rng rng(44);
  for (int trial = 0; trial < 5; ++trial) {
    const HorizonTestFunction f(random_profile(rng, -5, 5), AngularWeight::full_sphere(0.3));
    const HorizonTestFunction g(random_profile(rng, -5, 5), AngularWeight::caps({CapRect{0.0, 1.2, 1.0, 5.0, 0.4}}));
    CHECK(weyl_vacuum(f, kUnit) <= 1.0);
    CHECK(weyl_vacuum(f, kUnit) < 1.0);
    const auto both = weyl_two_point(f, g, kUnit);
    CHECK(std::abs(both.via_relation - both.via_two_point) <= 1e-10);
    CHECK(std::abs(both.via_relation) <= 1.0);
  }
}

TEST_CASE("dilations and translations") {
  const HorizonParams p(1.0, 1.0);
  const auto h = RadialProfile::bump(kGrid, -2.0, -1.0);
  CHECK((dilate_translate(h, 0.0, 0.0, p).samples() - h.samples()).cwiseAbs().maxCoeff() == 0.0);

  // Exact values of the moved bump at the grid nodes.
  const auto moved = dilate_translate(h, 0.3, -0.2, p);
  double err = 0.0;
  for (Index j = 0; j < kGrid.n; ++j) {
    err = std::max(err, std::abs(moved.samples()(j) - bump(std::exp(0.3) * kGrid.node(j) + 0.2, -2.0, -1.0)));
  }
  CHECK(err <= 1e-9);

  // Translating by a <= 0 keeps the support in U < 0.
  for (double a : {-0.1, -0.5, -1.0}) {
    const auto shifted = dilate_translate(h, 0.0, a, p);
    CHECK(kGrid.node(shifted.last_nonzero()) < 0.0);
  }

  // Composition law.
  const auto [t12, a12] = compose_dilation_translation(0.2, 0.3, -0.4, 0.5, p);
  CHECK(t12 == doctest::Approx(-0.2));
  CHECK(a12 == doctest::Approx(0.3 + std::exp(0.2) * 0.5));
  const auto twice = dilate_translate(dilate_translate(h, 0.2, 0.3, p), -0.4, 0.5, p);
  const auto once = dilate_translate(h, t12, a12, p);
  CHECK((twice.samples() - once.samples()).cwiseAbs().maxCoeff() <= 1e-8);

  try {
    dilate_translate(h, -2.5, 0.0, p);
    FAIL("expected SupportEscapesGrid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportEscapesGrid);
  }
}

TEST_CASE("Lambda is invariant under simultaneous dilation and translation") {
  Rng rng(45);
  const HorizonTestFunction f(random_profile(rng, -3, 1), AngularWeight::full_sphere());
  const HorizonTestFunction g(random_profile(rng, -3, 1), AngularWeight::full_sphere());
  const Complex base = lambda_full(f, g, kUnit);
  for (const auto& [t, a] : std::vector<std::pair<double, double>>{{0.3, 0.2}, {-0.5, 0.5}, {0.5, -0.5}, {0.1, 0.0}}) {
    const Complex moved = lambda_full(dilate_translate(f, t, a, kUnit), dilate_translate(g, t, a, kUnit), kUnit);
    CHECK(std::abs(moved - base) <= 1e-5 * std::abs(base));
  }
}

TEST_CASE("dilation KMS condition holds at beta = 2 pi / kappa") {
  for (double kappa : {1.0, 2.0}) {
    const HorizonParams p(kappa, 1.0);
    const auto f = sphere_bump(-2.0, -1.0);
    const auto g = sphere_bump(-1.5, -0.5);
    const double at_beta = kms_dilation_check(f, g, p.beta(), p).deviation;
    const double at_half = kms_dilation_check(f, g, 0.5 * p.beta(), p).deviation;
    CHECK(at_beta <= 1e-3);
    CHECK(at_half >= 10.0 * at_beta);
  }
  const auto f = sphere_bump(-2.0, -1.0);
  const HorizonTestFunction zero(RadialProfile::zero(kGrid), AngularWeight::full_sphere());
  CHECK(kms_dilation_check(f, zero, kUnit.beta(), kUnit).deviation == 0.0);
  try {
    kms_dilation_check(f, sphere_bump(-0.5, 0.5), kUnit.beta(), kUnit);
    FAIL("expected SupportNotRightWedge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportNotRightWedge);
  }
}

TEST_CASE("dilation correlation at t = 0 is Lambda") {
  const auto h1 = RadialProfile::bump(kGrid, -2.0, -1.0);
  const auto h2 = RadialProfile::bump(kGrid, -1.5, -0.5);
  const auto corr = dilation_correlation(h1, h2, kUnit, 1.0);
  const auto mid = corr[corr.size() / 2];
  CHECK(mid.first == 0.0);
  CHECK(std::abs(mid.second - lambda_1d(h1, h2)) <= 1e-8 * std::abs(lambda_1d(h1, h2)));
  // A t-sample against explicit resampling of the dilated profile.
  const auto& sample = corr[corr.size() / 2 + 5];
  const Complex direct = lambda_1d(h1, dilate_translate(h2, sample.first, 0.0, kUnit));
  CHECK(std::abs(sample.second - direct) <= 1e-7 * std::abs(direct));
}

TEST_CASE("wedge kernels in the Kodama coordinate agree with lambda_1d") {
  const Index n = 1024;
  const double w_max = 400.0;
  const Index w_nodes = 4001;
  const auto right1 = kodama_samples([](double s) { return bump(-std::exp(s), -2.0, -1.0); }, -0.1, 1.3, n);
  const auto right2 = kodama_samples([](double s) { return bump(-std::exp(s), -3.0, -1.5); }, -0.1, 1.3, n);
  const auto left = kodama_samples([](double s) { return bump(std::exp(s), 1.0, 2.0); }, -0.1, 1.3, n);
  const Complex same = kodama_lambda_same(right1, right2, kUnit, w_max, w_nodes);
  const Complex same_ref = lambda_1d(RadialProfile::bump(kGrid, -2, -1), RadialProfile::bump(kGrid, -3, -1.5));
  CHECK(std::abs(same - same_ref) <= 1e-7 * std::abs(same_ref));

  const Complex opposite = kodama_lambda_opposite(left, right1, kUnit, w_max, w_nodes);
  // Direct quadrature of the non-singular kernel -(1/pi) / (U - U')^2.
  const int m = 2000;
  const double du = 1.0 / m;
  double direct = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double u = 1.0 + du * i;
    for (int j = 0; j <= m; ++j) {
      const double v = -2.0 + du * j;
      direct += bump(u, 1.0, 2.0) * bump(v, -2.0, -1.0) / ((u - v) * (u - v));
    }
  }
  direct *= -du * du / kPi;
  CHECK(opposite.real() == doctest::Approx(direct).epsilon(1e-9));
  CHECK(std::abs(opposite.imag()) < 1e-12);
}

TEST_CASE("tunneling overlap") {
  const auto r16 = tunneling_overlap(1.0, 16, HorizonParams(1.0, 1.0));
  CHECK(r16.thermal_limit == doctest::Approx(std::exp(-2.0 * kPi)).epsilon(1e-12));
  CHECK(r16.overlap >= 0.0);
  CHECK(r16.overlap <= 1.0);
  // Errors against the narrow-band value of a real packet shrink with n.
  double previous = 1.0;
  for (int n : {2, 4, 8, 16}) {
    const auto r = tunneling_overlap(1.0, n, HorizonParams(1.0, 1.0));
    const double err = std::abs(r.overlap - r.real_packet_limit);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous <= 0.01 * r16.real_packet_limit);
  // E0 -> 0: the limit formula tends to 1.
  CHECK(tunneling_overlap(1e-6, 4, kUnit).thermal_limit == doctest::Approx(1.0).epsilon(1e-5));
  TunnelingOptions coarse;
  coarse.s_nodes = 64;
  CHECK_THROWS_AS(tunneling_overlap(5.0, 16, kUnit, coarse), Error);
}

TEST_CASE("coherent-state relative entropy") {
  const HorizonTestFunction zero(RadialProfile::zero(kGrid), AngularWeight::full_sphere());
  CHECK(coherent_relent_closed(zero, kUnit) == 0.0);
  const auto f = sphere_bump(-2.0, -1.0);
  const double s = coherent_relent_closed(f, kUnit);
  CHECK(s > 0.0);
  CHECK(coherent_relent_closed(f.scaled(2.0), kUnit) == doctest::Approx(4.0 * s).epsilon(1e-14));
  CHECK(coherent_relent_closed(f, HorizonParams(1.0, 3.0)) == doctest::Approx(9.0 * s).epsilon(1e-14));

  const auto m = coherent_relent_modular(f, kUnit);
  CHECK(m.via_weyl == doctest::Approx(s).epsilon(1e-3));
  CHECK(m.via_lambda == doctest::Approx(s).epsilon(1e-3));

  // Central differences converge at second order.
  const double s1 = coherent_relent_modular(f, kUnit, 1e-3).via_lambda;
  const double s2 = coherent_relent_modular(f, kUnit, 5e-4).via_lambda;
  const double s3 = coherent_relent_modular(f, kUnit, 2.5e-4).via_lambda;
  CHECK((s1 - s2) / (s2 - s3) == doctest::Approx(4.0).epsilon(0.05));

  try {
    coherent_relent_closed(sphere_bump(-0.5, 0.5), kUnit);
    FAIL("expected SupportNotRightWedge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportNotRightWedge);
  }
}

TEST_CASE("entropy area additivity") {
  const auto h = RadialProfile::bump(kGrid, -2.0, -1.0);
  const HorizonParams p(1.0, 2.0);
  // Two disjoint caps of solid angle pi/4 each.
  const double t1 = std::acos(1.0 - 1.0 / 8.0);
  const std::vector<CapRect> caps{{0.0, t1, 0.0, 2 * kPi, 1.0}, {kPi - t1, kPi, 0.0, 2 * kPi, 1.0}};
  const auto report = area_additivity_check(h, caps, p);
  CHECK(report.solid_angles[0] == doctest::Approx(kPi / 4));
  CHECK(report.additivity_residual <= 1e-8);
  CHECK(report.proportionality_residual <= 1e-12);

  const auto halves = area_additivity_check(
      h, {{0.0, kPi / 2, 0.0, 2 * kPi, 1.0}, {kPi / 2, kPi, 0.0, 2 * kPi, 1.0}}, p);
  const double full = coherent_relent_closed(HorizonTestFunction(h, AngularWeight::full_sphere()), p);
  CHECK(halves.combined == doctest::Approx(full).epsilon(1e-12));

  const CapRect small{0.0, 0.5, 0.0, 1.0, 1.0};
  const CapRect doubled{0.0, 0.5, 0.0, 2.0, 1.0};
  const double s_small = coherent_relent_closed(HorizonTestFunction(h, AngularWeight::caps({small})), p);
  const double s_double = coherent_relent_closed(HorizonTestFunction(h, AngularWeight::caps({doubled})), p);
  CHECK(s_double == doctest::Approx(2.0 * s_small).epsilon(1e-12));

  try {
    area_additivity_check(h, {{0.0, 1.0, 0.0, 1.0, 1.0}, {0.5, 1.5, 0.5, 1.5, 1.0}}, p);
    FAIL("expected OverlappingCaps");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlappingCaps);
  }
}

TEST_CASE("spectrum condition check") {
  const auto report = spectrum_condition_check(RadialProfile::bump(kGrid, -2.0, -1.0), kUnit);
  CHECK(report.negative_frequency_residual <= 1e-6);
  CHECK(report.composition_residual <= 1e-8);
  const auto zero = spectrum_condition_check(RadialProfile::zero(kGrid), kUnit);
  CHECK(std::abs(zero.positive_frequency) == 0.0);
}

TEST_CASE("Richardson extrapolation is exact on polynomials") {
  const std::vector<double> eps{0.4, 0.2, 0.1};
  std::vector<Complex> values;
  for (double e : eps) values.emplace_back(3.0 - 2.0 * e + 5.0 * e * e, e);
  const Complex limit = oracle::richardson_limit(eps, values);
  CHECK(std::abs(limit - Complex(3.0, 0.0)) < 1e-13);
}
