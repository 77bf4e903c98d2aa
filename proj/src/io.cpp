#include "modlab/io.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "modlab/error.hpp"

namespace modlab::io {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::ConfigError, "matrix fixture: " + what);
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  Json out = Json::object();
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) schema_error("expected an object");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("re")) {
    schema_error("missing rows/cols/re");
  }
  const auto rows = j.at("rows").get<long long>();
  const auto cols = j.at("cols").get<long long>();
  if (rows <= 0 || cols <= 0) schema_error("rows and cols must be positive");
  const Json& re = j.at("re");
  const Json empty = Json::array();
  const Json& im = j.contains("im") ? j.at("im") : empty;
  const auto count = static_cast<std::size_t>(rows * cols);
  if (!re.is_array() || re.size() != count) schema_error("re must hold rows*cols numbers");
  if (!im.is_array() || (!im.empty() && im.size() != count)) {
    schema_error("im must be empty or hold rows*cols numbers");
  }
  ComplexMatrix m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long k = 0; k < cols; ++k) {
      const auto idx = static_cast<std::size_t>(i * cols + k);
      const double a = re.at(idx).get<double>();
      const double b = im.empty() ? 0.0 : im.at(idx).get<double>();
      m(i, k) = Complex(a, b);
    }
  }
  if (!m.allFinite()) schema_error("non-finite entry");
  return m;
}

ComplexVector vector_from_json(const Json& j) {
  ComplexMatrix m = matrix_from_json(j);
  if (m.cols() != 1) schema_error("expected a column vector (cols == 1)");
  return m.col(0);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
}

namespace {

[[noreturn]] void fixture_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) fixture_error(std::string(where) + ": missing '" + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* where) {
  if (!j.is_number()) fixture_error(std::string(where) + ": expected a number");
  return j.get<double>();
}

// Library errors raised while building fixture objects are fixture errors.
template <class F>
auto as_fixture(const char* where, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fixture_error(std::string(where) + ": " + std::string(to_string(e.code())) + ": " + e.what());
  }
}

}  // namespace

OperatorAlgebra algebra_from_json(const Json& j) {
  const auto n = field(j, "ambient_dim", "algebra").get<long long>();
  const Json& gens = field(j, "generators", "algebra");
  if (n <= 0 || !gens.is_array()) fixture_error("algebra: need positive ambient_dim and a generator list");
  std::vector<ComplexMatrix> g;
  for (const Json& m : gens) {
    g.push_back(matrix_from_json(m));
    if (g.back().rows() != n || g.back().cols() != n) fixture_error("algebra: generator shape differs from ambient_dim");
  }
  if (g.empty()) return OperatorAlgebra::scalars(n);
  return as_fixture("algebra", [&] { return generate_algebra(g); });
}

AlgebraState state_from_json(const Json& j) {
  const ComplexMatrix rho = matrix_from_json(field(j, "density", "state"));
  return as_fixture("state", [&] { return AlgebraState(rho); });
}

horizon::RadialGrid grid_from_json(const Json& j) {
  horizon::RadialGrid g;
  if (j.is_null()) return g;
  if (!j.is_object()) fixture_error("grid: expected an object");
  if (j.contains("u_min")) g.u_min = number(j.at("u_min"), "grid.u_min");
  if (j.contains("u_max")) g.u_max = number(j.at("u_max"), "grid.u_max");
  if (j.contains("n")) g.n = j.at("n").get<Index>();
  if (!(g.u_min < g.u_max)) fixture_error("grid: u_min must be below u_max");
  return g;
}

horizon::RadialProfile radial_from_json(const Json& j, const horizon::RadialGrid& grid) {
  if (j.is_object() && j.contains("bump")) {
    const Json& b = j.at("bump");
    if (!b.is_array() || (b.size() != 2 && b.size() != 3)) fixture_error("radial.bump: expected [a, b] or [a, b, amplitude]");
    const double amp = b.size() == 3 ? number(b[2], "radial.bump") : 1.0;
    return as_fixture("radial", [&] {
      return horizon::RadialProfile::bump(grid, number(b[0], "radial.bump"), number(b[1], "radial.bump"), amp);
    });
  }
  if (!j.is_array()) fixture_error("radial: expected a sample array or {bump: [...]}");
  if (static_cast<Index>(j.size()) != grid.n) fixture_error("radial: sample count differs from grid.n");
  RealVector s(grid.n);
  for (Index i = 0; i < grid.n; ++i) s(i) = number(j.at(static_cast<std::size_t>(i)), "radial");
  return as_fixture("radial", [&] { return horizon::RadialProfile(grid, s); });
}

horizon::AngularWeight angular_from_json(const Json& j) {
  const std::string kind = field(j, "kind", "angular").get<std::string>();
  const Json empty = Json::object();
  const Json& data = j.contains("data") ? j.at("data") : empty;
  if (kind == "full-sphere") {
    const double v = data.contains("value") ? number(data.at("value"), "angular.value") : 1.0;
    return horizon::AngularWeight::full_sphere(v);
  }
  if (kind == "caps") {
    if (!data.is_array()) fixture_error("angular caps: data must be a list");
    std::vector<horizon::CapRect> caps;
    for (const Json& c : data) {
      const Json& t = field(c, "theta", "cap");
      const Json& p = field(c, "phi", "cap");
      if (!t.is_array() || t.size() != 2 || !p.is_array() || p.size() != 2) fixture_error("cap: theta and phi are [lo, hi]");
      const double v = c.contains("value") ? number(c.at("value"), "cap.value") : 1.0;
      caps.push_back({number(t[0], "cap"), number(t[1], "cap"), number(p[0], "cap"), number(p[1], "cap"), v});
    }
    return as_fixture("angular", [&] { return horizon::AngularWeight::caps(caps); });
  }
  if (kind == "grid") {
    horizon::SphereQuadrature q;
    if (data.contains("n_theta")) q.n_theta = data.at("n_theta").get<Index>();
    if (data.contains("n_phi")) q.n_phi = data.at("n_phi").get<Index>();
    const Json& vals = field(data, "values", "angular grid");
    if (!vals.is_array()) fixture_error("angular grid: values must be a list");
    RealVector v(static_cast<Index>(vals.size()));
    for (Index i = 0; i < v.size(); ++i) v(i) = number(vals.at(static_cast<std::size_t>(i)), "angular grid");
    return as_fixture("angular", [&] { return horizon::AngularWeight::grid(q, v); });
  }
  fixture_error("angular: unknown kind '" + kind + "'");
}

horizon::HorizonTestFunction test_function_from_json(const Json& j, const std::optional<horizon::RadialGrid>& grid) {
  const horizon::RadialGrid g = grid ? *grid : grid_from_json(j.contains("grid") ? j.at("grid") : Json());
  const Json& terms = field(j, "terms", "test function");
  if (!terms.is_array() || terms.empty()) fixture_error("test function: terms must be a non-empty list");
  horizon::HorizonTestFunction f;
  for (const Json& t : terms) {
    f.add_term(radial_from_json(field(t, "radial", "term"), g), angular_from_json(field(t, "angular", "term")));
  }
  return f;
}

}  // namespace modlab::io
