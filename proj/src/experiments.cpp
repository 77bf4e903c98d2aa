#include "modlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "modlab/algebras.hpp"
#include "modlab/error.hpp"
#include "modlab/horizon.hpp"
#include "modlab/io.hpp"
#include "modlab/modular.hpp"

namespace modlab::experiments {

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

bool is_horizon(const std::string& name) { return name.rfind("horizon-", 0) == 0; }

bool needs_inputs(const std::string& name) { return name != "horizon-tunnel"; }

double param(const Json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  const Json& v = params.at(key);
  if (!v.is_number()) config_error(std::string("params.") + key + " must be a number");
  return v.get<double>();
}

long long int_param(const Json& params, const char* key, long long fallback) {
  if (!params.contains(key)) return fallback;
  const Json& v = params.at(key);
  if (!v.is_number_integer()) config_error(std::string("params.") + key + " must be an integer");
  return v.get<long long>();
}

// Check builder applying per-check overrides and the global scale.
class Checker {
 public:
  Checker(Report& report, const ExperimentConfig& c) : report_(report), scale_(c.tol_scale) {
    if (c.params.contains("tolerances")) overrides_ = c.params.at("tolerances");
  }

  // value <= tol
  void at_most(const std::string& name, double value, double tol, const char* provenance) {
    tol = tolerance(name, tol) * scale_;
    add({name, value, 0.0, provenance, tol, value <= tol});
  }

  // |value - reference| <= tol |reference|
  void relative(const std::string& name, double value, double reference, double tol, const char* provenance) {
    tol = tolerance(name, tol) * scale_;
    add({name, value, reference, provenance, tol, std::abs(value - reference) <= tol * std::abs(reference)});
  }

  // |value - reference| <= tol
  void absolute(const std::string& name, double value, double reference, double tol, const char* provenance) {
    tol = tolerance(name, tol) * scale_;
    add({name, value, reference, provenance, tol, std::abs(value - reference) <= tol});
  }

  // value >= bound, with the bound loosened by the scale
  void at_least(const std::string& name, double value, double bound, const char* provenance) {
    bound = tolerance(name, bound) / scale_;
    add({name, value, bound, provenance, bound, value >= bound});
  }

  // value < reference
  void below(const std::string& name, double value, double reference, const char* provenance) {
    add({name, value, reference, provenance, 0.0, value < reference});
  }

 private:
  double tolerance(const std::string& name, double fallback) const {
    if (overrides_.is_object() && overrides_.contains(name)) return overrides_.at(name).get<double>();
    return fallback;
  }
  void add(Check c) {
    if (!std::isfinite(c.value)) c.pass = false;
    report_.checks.push_back(std::move(c));
  }

  Report& report_;
  double scale_;
  Json overrides_;
};

// Deterministic random matrices for the seeded property suites.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  ComplexMatrix gaussian(Index n) {
    ComplexMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = Complex(normal_(gen_), normal_(gen_));
    return m;
  }
  ComplexMatrix unitary(Index n) {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n));
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
      const Complex d = r(j, j);
      if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
  }
  ComplexMatrix density(Index n) {
    const ComplexMatrix g = gaussian(n);
    ComplexMatrix rho = g * g.adjoint() + 0.1 * ComplexMatrix::Identity(n, n);
    return rho / rho.trace().real();
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

ComplexMatrix on_first_factor(const ComplexMatrix& a, Index n) {
  return kron(a, ComplexMatrix::Identity(n, n));
}

double umegaki(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const auto log_of = [](const ComplexMatrix& m) {
    return herm_eig(m).apply([](double x) { return Complex(std::log(x)); });
  };
  return (rho * (log_of(rho) - log_of(sigma))).trace().real();
}

OrderedJson common_params(const ExperimentConfig& c) {
  OrderedJson p = OrderedJson::object();
  p["inputs"] = c.inputs.empty() ? OrderedJson() : OrderedJson(c.inputs.filename().string());
  p["seed"] = c.seed;
  p["tol_scale"] = c.tol_scale;
  return p;
}

horizon::HorizonParams horizon_params(const ExperimentConfig& c, OrderedJson& out) {
  const double kappa = param(c.params, "kappa", 1.0);
  const double r = param(c.params, "r", 1.0);
  out["kappa"] = kappa;
  out["r"] = r;
  return horizon::HorizonParams(kappa, r);
}

std::optional<horizon::RadialGrid> grid_override(const ExperimentConfig& c) {
  if (!c.params.contains("grid")) return std::nullopt;
  return io::grid_from_json(c.params.at("grid"));
}

// Runner signature: fixture JSON (null when unused), config, report.
void run_gns(const Json& fx, const ExperimentConfig& c, Report& r) {
  const OperatorAlgebra a = io::algebra_from_json(fx.at("algebra"));
  const AlgebraState omega = io::state_from_json(fx.at("state"));
  if (omega.ambient_dim() != a.ambient_dim()) config_error("gns: state and algebra dimensions differ");
  r.params = common_params(c);
  r.params["ambient_dim"] = a.ambient_dim();
  r.params["algebra_dim"] = a.dim();
  Checker ck(r, c);
  const GnsData g = gns_construct(a, omega);
  const GnsResiduals res = gns_residuals(g, a, omega);
  ck.at_most("reconstruction", res.reconstruction, 1e-12, "identity");
  ck.at_most("multiplicativity", res.multiplicativity, 1e-9, "identity");
  ck.at_most("unit", res.unit, 1e-9, "identity");
  ck.at_most("adjoint", res.adjoint, 1e-9, "identity");
  ck.absolute("cyclic_rank", static_cast<double>(res.cyclic_rank), static_cast<double>(g.gns_dim), 0.0, "identity");
  if (fx.contains("expect_pure")) {
    ck.absolute("pure", is_pure(a, omega) ? 1.0 : 0.0, fx.at("expect_pure").get<bool>() ? 1.0 : 0.0, 0.0,
                "closed-form");
  }
}

ComplexMatrix shift(Index n) {
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) s(i, i + 1) = 1.0;
  return s;
}

void run_modular_verify(const Json& fx, const ExperimentConfig& c, Report& r) {
  const std::vector<double> ts{-0.7, 0.3, 1.1};
  r.params = common_params(c);
  const long long random_pairs = int_param(c.params, "random_pairs", 0);
  if (random_pairs < 0) config_error("params.random_pairs must be non-negative");
  Checker ck(r, c);
  if (fx.contains("hamiltonian")) {
    const ComplexMatrix h = io::matrix_from_json(fx.at("hamiltonian"));
    const double beta = fx.contains("beta") ? fx.at("beta").get<double>() : 1.0;
    r.params["fixture"] = "gibbs";
    r.params["beta"] = beta;
    r.params["random_pairs"] = random_pairs;
    const StandardPair pair = gibbs_standard_pair(h, beta);
    for (const auto& [name, v] : verify_tomita_takesaki(pair, ts).named()) ck.at_most(name, v, 1e-9, "identity");
    // Smeared KMS: the modular flow is normalized to beta = 1.
    const Index n = h.rows();
    const ComplexMatrix s = shift(n);
    RealVector d = RealVector::LinSpaced(n, 0.3, -0.2);
    const ComplexMatrix a = on_first_factor(s + s + s.transpose(), n);
    const ComplexMatrix b = on_first_factor(s.adjoint() + ComplexMatrix(d.cast<Complex>().asDiagonal()), n);
    const ModularData m = modular_objects(pair);
    const double at_one = kms_smeared_check(pair, m, a, b, 1.0);
    const double at_two = kms_smeared_check(pair, m, a, b, 2.0);
    ck.at_most("kms_smeared_beta_1", at_one, 1e-6, "identity");
    ck.at_least("kms_smeared_ratio_beta_2", at_two / at_one, 10.0, "selectivity");
  } else {
    const OperatorAlgebra alg = io::algebra_from_json(fx.at("algebra"));
    const ComplexVector psi = io::vector_from_json(fx.at("vector"));
    r.params["fixture"] = "pair";
    r.params["random_pairs"] = random_pairs;
    for (const auto& [name, v] : verify_tomita_takesaki(StandardPair{alg, psi}, ts).named()) {
      ck.at_most(name, v, 1e-9, "identity");
    }
  }
  if (random_pairs > 0) {
    Sampler rng(c.seed);
    double worst = 0.0;
    for (long long k = 0; k < random_pairs; ++k) {
      const Index n = 2 + k % 3;
      worst = std::max(worst, verify_tomita_takesaki(purified_pair(rng.density(n)), ts).max_residual());
    }
    ck.at_most("random_pairs_max_residual", worst, 1e-9, "identity");
  }
}

void run_relent_finite(const Json& fx, const ExperimentConfig& c, Report& r) {
  const ComplexMatrix rho = io::matrix_from_json(fx.at("density"));
  const ComplexMatrix u = io::matrix_from_json(fx.at("unitary"));
  if (u.rows() != rho.rows() || u.cols() != rho.cols()) config_error("relent-finite: unitary shape differs");
  r.params = common_params(c);
  const long long instances = int_param(c.params, "random_instances", 0);
  if (instances < 0) config_error("params.random_instances must be non-negative");
  r.params["dim"] = rho.rows();
  r.params["random_instances"] = instances;
  Checker ck(r, c);
  const Index n = rho.rows();
  const double s = araki_relative_entropy(purified_pair(rho), on_first_factor(u, n));
  ck.absolute("araki_vs_umegaki", s, umegaki(rho, u * rho * u.adjoint()), 1e-8, "oracle");
  if (fx.contains("reference")) ck.relative("araki_vs_reference", s, fx.at("reference").get<double>(), 1e-6, "closed-form");
  if (instances > 0) {
    Sampler rng(c.seed);
    double worst = 0.0;
    for (long long k = 0; k < instances; ++k) {
      const Index m = 2 + k % 4;
      const ComplexMatrix rk = rng.density(m);
      const ComplexMatrix uk = rng.unitary(m);
      const double sk = araki_relative_entropy(purified_pair(rk), on_first_factor(uk, m));
      worst = std::max(worst, std::abs(sk - umegaki(rk, uk * rk * uk.adjoint())));
    }
    ck.at_most("random_instances_max_error", worst, 1e-8, "oracle");
  }
}

void run_horizon_kms(const Json& fx, const ExperimentConfig& c, Report& r) {
  r.params = common_params(c);
  const horizon::HorizonParams p = horizon_params(c, r.params);
  const auto grid = grid_override(c);
  const auto f = io::test_function_from_json(fx.at("f"), grid);
  const auto g = io::test_function_from_json(fx.at("g"), grid);
  r.params["grid_n"] = f.terms().front().first.grid().n;
  r.params["beta"] = p.beta();
  Checker ck(r, c);
  const double at_beta = horizon::kms_dilation_check(f, g, p.beta(), p).deviation;
  ck.at_most("deviation_at_beta", at_beta, 1e-3, "identity");
  const std::vector<std::pair<const char*, double>> others{
      {"ratio_beta_half", 0.5}, {"ratio_beta_two_thirds", 2.0 / 3.0}, {"ratio_beta_three_halves", 1.5}, {"ratio_beta_double", 2.0}};
  for (const auto& [name, factor] : others) {
    const double dev = horizon::kms_dilation_check(f, g, factor * p.beta(), p).deviation;
    ck.at_least(name, dev / at_beta, 5.0, "selectivity");
  }
}

void run_horizon_tunnel(const Json&, const ExperimentConfig& c, Report& r) {
  r.params = common_params(c);
  const horizon::HorizonParams p = horizon_params(c, r.params);
  const double e0 = param(c.params, "e0", 1.0);
  std::vector<int> ns{2, 4, 8, 16};
  if (c.params.contains("n_values")) ns = c.params.at("n_values").get<std::vector<int>>();
  if (ns.empty() || std::any_of(ns.begin(), ns.end(), [](int n) { return n < 1; })) {
    config_error("params.n_values must be a non-empty list of positive integers");
  }
  r.params["e0"] = e0;
  r.params["n_values"] = ns;
  Checker ck(r, c);
  double previous = 0.0;
  horizon::TunnelingResult last;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    last = horizon::tunneling_overlap(e0, ns[i], p);
    const double err = std::abs(last.overlap - last.thermal_limit);
    if (i > 0) ck.below("error_decreases_n" + std::to_string(ns[i]), err, previous, "convergence");
    previous = err;
  }
  const std::string tag = "_n" + std::to_string(ns.back());
  ck.relative("overlap_vs_limit" + tag, last.overlap, last.thermal_limit, 0.02, "closed-form");
  ck.relative("overlap_vs_real_packet_limit" + tag, last.overlap, last.real_packet_limit, 0.02, "derived-limit");
}

// -2 pi r^2 A^2 int U b'(U)^2 dU * int a^2 dOmega for a single bump term,
// from the analytic derivative on a fine trapezoid rule.
std::optional<double> bump_entropy_reference(const Json& fn, const horizon::AngularWeight& a,
                                             const horizon::HorizonParams& p) {
  const Json& terms = fn.at("terms");
  if (terms.size() != 1) return std::nullopt;
  const Json& radial = terms[0].at("radial");
  if (!radial.is_object() || !radial.contains("bump")) return std::nullopt;
  const Json& b = radial.at("bump");
  const double lo = b[0].get<double>(), hi = b[1].get<double>();
  const double amp = b.size() == 3 ? b[2].get<double>() : 1.0;
  const int n = 400000;
  const double du = (hi - lo) / n;
  long double sum = 0.0L;
  for (int j = 1; j < n; ++j) {
    const double u = lo + du * j;
    const double d = horizon::bump_derivative(u, lo, hi);
    sum += static_cast<long double>(u * d * d);
  }
  const double integral = static_cast<double>(sum) * du * amp * amp;
  return -2.0 * kPi * p.r() * p.r() * integral * horizon::sphere_integral(a, a);
}

void run_horizon_entropy(const Json& fx, const ExperimentConfig& c, Report& r) {
  r.params = common_params(c);
  const horizon::HorizonParams p = horizon_params(c, r.params);
  const double dt = param(c.params, "dt", 1e-4);
  r.params["dt"] = dt;
  const auto grid = grid_override(c);
  const Json& fns = fx.at("functions");
  if (!fns.is_array() || fns.empty()) config_error("horizon-entropy: functions must be a non-empty list");
  r.params["functions"] = fns.size();
  Checker ck(r, c);
  const horizon::HorizonParams doubled(p.kappa(), 2.0 * p.r());
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const auto f = io::test_function_from_json(fns[i], grid);
    const std::string tag = "_f" + std::to_string(i + 1);
    const double closed = horizon::coherent_relent_closed(f, p);
    const auto modular = horizon::coherent_relent_modular(f, p, dt);
    ck.relative("modular_weyl_vs_closed" + tag, modular.via_weyl, closed, 1e-2, "identity");
    ck.relative("modular_lambda_vs_closed" + tag, modular.via_lambda, closed, 1e-2, "identity");
    ck.relative("radius_scaling" + tag, horizon::coherent_relent_closed(f, doubled) / closed, 4.0, 1e-12, "identity");
    if (const auto ref = bump_entropy_reference(fns[i], f.terms().front().second, p)) {
      ck.relative("closed_vs_quadrature" + tag, closed, *ref, 1e-6, "oracle");
    }
  }
}

void run_horizon_additivity(const Json& fx, const ExperimentConfig& c, Report& r) {
  r.params = common_params(c);
  const horizon::HorizonParams p = horizon_params(c, r.params);
  const auto grid = grid_override(c);
  const horizon::RadialGrid g = grid ? *grid : io::grid_from_json(fx.contains("grid") ? fx.at("grid") : Json());
  const horizon::RadialProfile h = io::radial_from_json(fx.at("radial"), g);
  const horizon::AngularWeight caps = io::angular_from_json(Json{{"kind", "caps"}, {"data", fx.at("caps")}});
  r.params["caps"] = caps.cap_list().size();
  Checker ck(r, c);
  const auto rep = horizon::area_additivity_check(h, caps.cap_list(), p);
  ck.at_most("additivity_residual", rep.additivity_residual, 1e-8, "identity");
  ck.at_most("entropy_per_area_spread", rep.proportionality_residual, 1e-12, "identity");
  // Halving the phi range of the first cap halves its area.
  horizon::CapRect whole = caps.cap_list().front();
  whole.value = 1.0;
  horizon::CapRect half = whole;
  half.phi2 = 0.5 * (whole.phi1 + whole.phi2);
  const double s_whole = horizon::coherent_relent_closed({h, horizon::AngularWeight::caps({whole})}, p);
  const double s_half = horizon::coherent_relent_closed({h, horizon::AngularWeight::caps({half})}, p);
  ck.relative("area_doubling_ratio", s_whole / s_half, 2.0, 1e-12, "identity");
}

using Runner = void (*)(const Json&, const ExperimentConfig&, Report&);

struct Entry {
  ExperimentInfo info;
  Runner run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{"gns", "GNS triple of a state on a matrix algebra", "GNS representation"}, run_gns},
      {{"modular-verify", "Tomita-Takesaki residuals and KMS identity for a standard pair",
        "Tomita-Takesaki theorem"},
       run_modular_verify},
      {{"relent-finite", "Araki relative entropy against the Umegaki formula", "Araki relative entropy"},
       run_relent_finite},
      {{"horizon-kms", "dilation KMS condition at the local Hawking temperature", "local Hawking temperature"},
       run_horizon_kms},
      {{"horizon-tunnel", "left-right wedge overlap of narrowing wavepackets", "tunneling probability"},
       run_horizon_tunnel},
      {{"horizon-entropy", "coherent-state relative entropy: closed form against modular derivative",
        "entropy-area relation"},
       run_horizon_entropy},
      {{"horizon-additivity", "additivity of coherent-state entropy over disjoint caps", "entropy-area relation"},
       run_horizon_additivity},
  };
  return entries;
}

const Entry* find(const std::string& name) {
  for (const auto& e : registry())
    if (e.info.name == name) return &e;
  return nullptr;
}

std::string number_text(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_value(std::ostringstream& out, const OrderedJson& v, int indent, bool pretty) {
  const std::string pad = pretty ? std::string(static_cast<std::size_t>(indent + 2), ' ') : "";
  const std::string close_pad = pretty ? std::string(static_cast<std::size_t>(indent), ' ') : "";
  const char* nl = pretty ? "\n" : "";
  const char* colon = pretty ? ": " : ":";
  switch (v.type()) {
    case OrderedJson::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{' << nl;
      bool first = true;
      for (const auto& [k, x] : v.items()) {
        if (!first) out << ',' << nl;
        first = false;
        out << pad << OrderedJson(k).dump() << colon;
        write_value(out, x, indent + 2, pretty);
      }
      out << nl << close_pad << '}';
      return;
    }
    case OrderedJson::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << '[' << nl;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out << ',' << nl;
        out << pad;
        write_value(out, v[i], indent + 2, pretty);
      }
      out << nl << close_pad << ']';
      return;
    }
    case OrderedJson::value_t::number_float:
      out << number_text(v.get<double>());
      return;
    default:
      out << v.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  config_error("unknown format '" + name + "' (expected json or csv)");
}

ExperimentConfig load_config(const fs::path& path) {
  const Json j = io::read_json_file(path);
  if (!j.is_object()) config_error("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key != "experiment" && key != "inputs" && key != "params" && key != "output" && key != "seed") {
      config_error("config: unknown key '" + key + "'");
    }
  }
  ExperimentConfig c;
  try {
    if (!j.contains("experiment")) config_error("config: missing 'experiment'");
    c.experiment = j.at("experiment").get<std::string>();
    if (j.contains("inputs")) {
      c.inputs = j.at("inputs").get<std::string>();
      if (c.inputs.is_relative()) c.inputs = path.parent_path() / c.inputs;
    }
    if (j.contains("params")) {
      if (!j.at("params").is_object()) config_error("config: params must be an object");
      c.params = j.at("params");
    }
    if (j.contains("output")) {
      const Json& o = j.at("output");
      if (!o.is_object()) config_error("config: output must be an object");
      if (o.contains("path")) c.output = o.at("path").get<std::string>();
      if (o.contains("format")) c.format = parse_format(o.at("format").get<std::string>());
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    config_error(std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

void validate(const ExperimentConfig& c) {
  if (!find(c.experiment)) config_error("unknown experiment '" + c.experiment + "'");
  if (!(c.tol_scale > 0.0) || !std::isfinite(c.tol_scale)) config_error("tol-scale must be positive");
  if (c.params.contains("tolerances")) {
    const Json& t = c.params.at("tolerances");
    if (!t.is_object()) config_error("params.tolerances must be an object");
    for (const auto& [name, v] : t.items()) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) config_error("tolerance '" + name + "' must be positive");
    }
  }
  if (is_horizon(c.experiment)) {
    for (const char* key : {"kappa", "r"}) {
      if (c.params.contains(key) && !(param(c.params, key, 0.0) > 0.0)) {
        config_error(std::string("params.") + key + " must be positive");
      }
    }
  }
  if (needs_inputs(c.experiment) && c.inputs.empty()) config_error(c.experiment + " needs an inputs fixture");
}

Report run_experiment(const ExperimentConfig& c) {
  validate(c);
  const Entry* e = find(c.experiment);
  const Json fixture = needs_inputs(c.experiment) ? io::read_json_file(c.inputs) : Json();
  Report r;
  r.experiment = c.experiment;
  try {
    e->run(fixture, c, r);
  } catch (const Json::exception& ex) {
    config_error(c.experiment + ": fixture schema: " + ex.what());
  } catch (const Error& ex) {
    if (ex.code() == ErrorCode::ConfigError) throw;
    throw Error(ErrorCode::ExperimentError,
                c.experiment + ": " + std::string(to_string(ex.code())) + ": " + ex.what());
  }
  return r;
}

std::string to_json(const Report& r) {
  OrderedJson doc = OrderedJson::object();
  doc["experiment"] = r.experiment;
  doc["params"] = r.params;
  OrderedJson checks = OrderedJson::array();
  for (const Check& c : r.checks) {
    OrderedJson o = OrderedJson::object();
    o["name"] = c.name;
    o["value"] = c.value;
    o["reference"] = c.reference;
    o["provenance"] = c.provenance;
    o["tolerance"] = c.tolerance;
    o["pass"] = c.pass;
    checks.push_back(std::move(o));
  }
  doc["checks"] = std::move(checks);
  std::ostringstream out;
  write_value(out, doc, 0, true);
  out << '\n';
  return out.str();
}

std::string to_csv(const Report& r) {
  std::ostringstream params;
  write_value(params, r.params, 0, false);
  const std::string p = csv_field(params.str());
  std::ostringstream out;
  out << "experiment,check,params,value,reference,relative_error,provenance,tolerance,pass\n";
  for (const Check& c : r.checks) {
    const double err = c.reference != 0.0 ? std::abs(c.value - c.reference) / std::abs(c.reference)
                                          : std::abs(c.value - c.reference);
    out << r.experiment << ',' << c.name << ',' << p << ',' << number_text(c.value) << ','
        << number_text(c.reference) << ',' << number_text(err) << ',' << c.provenance << ','
        << number_text(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string render(const Report& r, Format f) { return f == Format::Json ? to_json(r) : to_csv(r); }

}  // namespace modlab::experiments
