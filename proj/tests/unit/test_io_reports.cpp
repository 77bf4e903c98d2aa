#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "modlab/error.hpp"
#include "modlab/experiments.hpp"
#include "modlab/io.hpp"
#include "random_ops.hpp"

using namespace modlab;
using modlab::testing::Rng;
namespace ex = modlab::experiments;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ExperimentError;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "modlab_unit";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("matrix JSON round trip is exact and row-major") {
  Rng rng(61);
  const ComplexMatrix m = rng.gaussian(3, 2);
  const auto j = io::matrix_to_json(m);
  CHECK(j.at("rows") == 3);
  CHECK(j.at("re")[1].get<double>() == m(0, 1).real());
  CHECK((io::matrix_from_json(j) - m).cwiseAbs().maxCoeff() == 0.0);
  // Missing im means a real matrix.
  const auto real = io::matrix_from_json(io::Json::parse(R"({"rows":1,"cols":2,"re":[1,2]})"));
  CHECK(real(0, 1) == Complex(2.0, 0.0));
  CHECK(code_of([] { io::matrix_from_json(io::Json::parse(R"({"rows":2,"cols":2,"re":[1,2,3]})")); }) ==
        ErrorCode::ConfigError);
  CHECK(code_of([] { io::vector_from_json(io::Json::parse(R"({"rows":1,"cols":2,"re":[1,2]})")); }) ==
        ErrorCode::ConfigError);
  CHECK(code_of([] { io::read_json_file("/nonexistent/fixture.json"); }) == ErrorCode::ConfigError);
}

TEST_CASE("algebra, state and horizon fixtures") {
  const auto alg = io::algebra_from_json(io::Json::parse(
      R"({"ambient_dim":2,"generators":[{"rows":2,"cols":2,"re":[0,1,0,0]}]})"));
  CHECK(alg.dim() == 4);
  CHECK(code_of([] {
          io::state_from_json(io::Json::parse(R"({"density":{"rows":2,"cols":2,"re":[1,0,0,1]}})"));
        }) == ErrorCode::ConfigError);

  const auto f = io::test_function_from_json(io::Json::parse(R"({
    "grid": {"u_min": -8, "u_max": 8, "n": 4096},
    "terms": [{"radial": {"bump": [-2, -1, 0.5]},
               "angular": {"kind": "caps", "data": [{"theta": [0, 1], "phi": [0, 2], "value": 3}]}}]})"));
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms()[0].first.interpolate(-1.5) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-9));
  CHECK(f.terms()[0].second.cap_list()[0].value == 3.0);
  // Samples must match the grid; overlapping caps are rejected at load time.
  CHECK(code_of([] {
          io::test_function_from_json(io::Json::parse(
              R"({"grid":{"n":64},"terms":[{"radial":[0,0,0],"angular":{"kind":"full-sphere"}}]})"));
        }) == ErrorCode::ConfigError);
  CHECK(code_of([] {
          io::angular_from_json(io::Json::parse(R"({"kind":"caps","data":[
            {"theta":[0,1],"phi":[0,1]},{"theta":[0.5,1.5],"phi":[0.5,1.5]}]})"));
        }) == ErrorCode::ConfigError);
  const auto grid = io::angular_from_json(io::Json::parse(R"({"kind":"grid","data":{"n_theta":2,"n_phi":2,"values":[1,1,1,1]}})"));
  CHECK(horizon::sphere_integral(grid, horizon::AngularWeight::full_sphere()) == doctest::Approx(4.0 * M_PI));
}

TEST_CASE("experiment listing") {
  const auto& list = ex::list_experiments();
  REQUIRE(list.size() == 7);
  CHECK(list.front().name == "gns");
  CHECK(list.back().name == "horizon-additivity");
  for (const auto& e : list) CHECK_FALSE(e.anchor.empty());
  CHECK(&ex::list_experiments() == &list);
}

TEST_CASE("report serialization") {
  ex::Report r;
  r.experiment = "demo";
  r.params["kappa"] = 1.0;
  r.params["n"] = 16;
  r.params["label"] = "a\"b";
  r.checks.push_back({"first", 0.1, 1.0 / 3.0, "identity", 1e-9, true});
  r.checks.push_back({"second", NAN, 2.0, "oracle", 0.5, false});
  const std::string json = ex::to_json(r);
  const auto parsed = ex::OrderedJson::parse(json);
  std::vector<std::string> keys;
  for (const auto& [k, v] : parsed.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"experiment", "params", "checks"});
  keys.clear();
  for (const auto& [k, v] : parsed.at("checks")[0].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"name", "value", "reference", "provenance", "tolerance", "pass"});
  CHECK(json.find("0.33333333333333331") != std::string::npos);
  CHECK(json.find("0.10000000000000001") != std::string::npos);
  CHECK(parsed.at("checks")[1].at("value").is_null());
  CHECK(parsed.at("checks")[0].at("reference").get<double>() == 1.0 / 3.0);
  CHECK(ex::to_json(r) == json);
  CHECK_FALSE(r.all_pass());

  const std::string csv = ex::to_csv(r);
  CHECK(csv.rfind("experiment,check,params,value,reference,relative_error,provenance,tolerance,pass\n", 0) == 0);
  CHECK(csv.find("\"{\"\"kappa\"\":1,\"\"n\"\":16,\"\"label\"\":\"\"a\\\"\"b\"\"}\"") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("config validation") {
  const auto bad_kappa = write_temp("neg.json", R"({"experiment":"horizon-tunnel","params":{"kappa":-1}})");
  CHECK(code_of([&] { ex::load_config(bad_kappa); }) == ErrorCode::ConfigError);
  const auto unknown = write_temp("unk.json", R"({"experiment":"nope"})");
  CHECK(code_of([&] { ex::load_config(unknown); }) == ErrorCode::ConfigError);
  const auto extra = write_temp("extra.json", R"({"experiment":"horizon-tunnel","colour":"red"})");
  CHECK(code_of([&] { ex::load_config(extra); }) == ErrorCode::ConfigError);
  const auto tol = write_temp("tol.json", R"({"experiment":"horizon-tunnel","params":{"tolerances":{"x":0}}})");
  CHECK(code_of([&] { ex::load_config(tol); }) == ErrorCode::ConfigError);
  const auto missing = write_temp("missing.json", R"({"experiment":"gns"})");
  CHECK(code_of([&] { ex::load_config(missing); }) == ErrorCode::ConfigError);
  const auto fmt = write_temp("fmt.json", R"({"experiment":"horizon-tunnel","output":{"format":"xml"}})");
  CHECK(code_of([&] { ex::load_config(fmt); }) == ErrorCode::ConfigError);

  const auto rel = write_temp("rel.json", R"({"experiment":"gns","inputs":"fixture.json","seed":5})");
  const auto c = ex::load_config(rel);
  CHECK(c.inputs == rel.parent_path() / "fixture.json");
  CHECK(c.seed == 5);
  CHECK(c.format == ex::Format::Json);
}

TEST_CASE("runs: tunneling reference, overrides and error mapping") {
  ex::ExperimentConfig c;
  c.experiment = "horizon-tunnel";
  c.params = nlohmann::json::parse(R"({"n_values":[2,4]})");
  const auto r = ex::run_experiment(c);
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [](const ex::Check& k) { return k.name == "overlap_vs_limit_n4"; });
  REQUIRE(it != r.checks.end());
  CHECK(it->reference == doctest::Approx(std::exp(-2.0 * M_PI)).epsilon(1e-14));
  CHECK(it->provenance == "closed-form");
  CHECK_FALSE(it->pass);

  // Per-check override and global scale.
  c.params = nlohmann::json::parse(R"({"n_values":[2,4],"tolerances":{"overlap_vs_limit_n4":10}})");
  c.tol_scale = 2.0;
  const auto loose = ex::run_experiment(c);
  const auto it2 = std::find_if(loose.checks.begin(), loose.checks.end(),
                                [](const ex::Check& k) { return k.name == "overlap_vs_limit_n4"; });
  CHECK(it2->tolerance == 20.0);
  CHECK(it2->pass);

  // A fixture that loads but is not standard fails during the computation.
  const auto fixture = write_temp("pure.json", R"({"density":{"rows":2,"cols":2,"re":[1,0,0,0]},
                                                  "unitary":{"rows":2,"cols":2,"re":[0,1,1,0]}})");
  ex::ExperimentConfig rc;
  rc.experiment = "relent-finite";
  rc.inputs = fixture;
  CHECK(code_of([&] { ex::run_experiment(rc); }) == ErrorCode::ExperimentError);
  rc.inputs = write_temp("broken.json", R"({"density": 3})");
  CHECK(code_of([&] { ex::run_experiment(rc); }) == ErrorCode::ConfigError);
}
