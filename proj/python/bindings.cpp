#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modlab/algebras.hpp"
#include "modlab/error.hpp"
#include "modlab/experiments.hpp"
#include "modlab/horizon.hpp"
#include "modlab/modular.hpp"

namespace py = pybind11;
using namespace modlab;

namespace {

horizon::RadialProfile profile(const RealVector& samples, double u_min, double u_max) {
  return horizon::RadialProfile(horizon::RadialGrid{u_min, u_max, samples.size()}, samples);
}

horizon::HorizonTestFunction on_sphere(const RealVector& samples, double u_min, double u_max) {
  return {profile(samples, u_min, u_max), horizon::AngularWeight::full_sphere()};
}

py::dict report_dict(const TomitaTakesakiReport& r) {
  py::dict d;
  for (const auto& [name, v] : r.named()) d[py::str(name)] = v;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-dimensional modular theory and horizon quasifree-state numerics";

  static py::exception<Error> error(m, "ModlabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "gns",
      [](const std::vector<ComplexMatrix>& generators, const ComplexMatrix& density) {
        const OperatorAlgebra a = generate_algebra(generators);
        const AlgebraState omega(density);
        const GnsData g = gns_construct(a, omega);
        const GnsResiduals r = gns_residuals(g, a, omega);
        py::dict d;
        d["gns_dim"] = g.gns_dim;
        d["null_rank"] = g.null_rank;
        d["gram"] = g.gram;
        d["cyclic_vector"] = g.cyclic_vector;
        d["reconstruction"] = r.reconstruction;
        d["multiplicativity"] = r.multiplicativity;
        d["pure"] = is_pure(a, omega);
        return d;
      },
      py::arg("generators"), py::arg("density"), "GNS construction for the algebra generated by the matrices.");

  m.def(
      "verify_tomita_takesaki",
      [](const ComplexMatrix& density, const std::vector<double>& t_samples) {
        return report_dict(verify_tomita_takesaki(purified_pair(density), t_samples));
      },
      py::arg("density"), py::arg("t_samples") = std::vector<double>{-0.7, 0.3, 1.1},
      "Named Tomita-Takesaki residuals for M_n (x) 1 and the purification of a faithful density.");

  m.def(
      "araki_relative_entropy",
      [](const ComplexMatrix& density, const ComplexMatrix& u) {
        const Index n = density.rows();
        return araki_relative_entropy(purified_pair(density), kron(u, ComplexMatrix::Identity(n, n)));
      },
      py::arg("density"), py::arg("unitary"), "Araki relative entropy for the vector (U (x) 1) psi.");

  m.def(
      "kms_smeared_check",
      [](const ComplexMatrix& h, double gibbs_beta, const ComplexMatrix& a, const ComplexMatrix& b, double beta) {
        const StandardPair pair = gibbs_standard_pair(h, gibbs_beta);
        const Index n = h.rows();
        const ComplexMatrix id = ComplexMatrix::Identity(n, n);
        return kms_smeared_check(pair, modular_objects(pair), kron(a, id), kron(b, id), beta);
      },
      py::arg("hamiltonian"), py::arg("gibbs_beta"), py::arg("a"), py::arg("b"), py::arg("beta"),
      "Smeared KMS deviation for the Gibbs pair of H; zero at beta = 1.");

  m.def("bump", py::vectorize(&horizon::bump), py::arg("u"), py::arg("a"), py::arg("b"));

  m.def(
      "lambda_1d",
      [](const RealVector& h1, const RealVector& h2, double u_min, double u_max) {
        return horizon::lambda_1d(profile(h1, u_min, u_max), profile(h2, u_min, u_max));
      },
      py::arg("h1"), py::arg("h2"), py::arg("u_min") = -8.0, py::arg("u_max") = 8.0,
      "Vacuum two-point form of two radial profiles sampled on a uniform grid.");

  m.def(
      "kms_dilation_check",
      [](const RealVector& f, const RealVector& g, double beta, double kappa, double u_min, double u_max) {
        return horizon::kms_dilation_check(on_sphere(f, u_min, u_max), on_sphere(g, u_min, u_max), beta,
                                           horizon::HorizonParams(kappa, 1.0))
            .deviation;
      },
      py::arg("f"), py::arg("g"), py::arg("beta"), py::arg("kappa") = 1.0, py::arg("u_min") = -8.0,
      py::arg("u_max") = 8.0);

  m.def(
      "coherent_relent",
      [](const RealVector& h, double kappa, double r, double u_min, double u_max) {
        const auto f = on_sphere(h, u_min, u_max);
        const horizon::HorizonParams p(kappa, r);
        const auto mod = horizon::coherent_relent_modular(f, p);
        py::dict d;
        d["closed"] = horizon::coherent_relent_closed(f, p);
        d["via_weyl"] = mod.via_weyl;
        d["via_lambda"] = mod.via_lambda;
        return d;
      },
      py::arg("h"), py::arg("kappa") = 1.0, py::arg("r") = 1.0, py::arg("u_min") = -8.0, py::arg("u_max") = 8.0,
      "Coherent-state relative entropy for h times the unit full-sphere weight.");

  m.def(
      "tunneling_overlap",
      [](double e0, int n, double kappa) {
        const auto t = horizon::tunneling_overlap(e0, n, horizon::HorizonParams(kappa, 1.0));
        py::dict d;
        d["overlap"] = t.overlap;
        d["thermal_limit"] = t.thermal_limit;
        d["real_packet_limit"] = t.real_packet_limit;
        return d;
      },
      py::arg("e0"), py::arg("n"), py::arg("kappa") = 1.0);

  m.def("list_experiments", [] {
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& e : experiments::list_experiments()) out.emplace_back(e.name, e.anchor, e.description);
    return out;
  });

  m.def(
      "run_experiment",
      [](const std::string& config, const std::string& format) {
        experiments::ExperimentConfig c = experiments::load_config(config);
        const auto report = experiments::run_experiment(c);
        return py::make_tuple(experiments::render(report, experiments::parse_format(format)), report.all_pass());
      },
      py::arg("config"), py::arg("format") = "json", "Runs a config file; returns (report text, all checks pass).");
}
