#pragma once

// JSON fixture formats. Matrices are {rows, cols, re: [...], im: [...]}
// in row-major order; vectors use the same object with cols == 1.
// Every schema violation raises ConfigError.

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "modlab/algebras.hpp"
#include "modlab/horizon.hpp"
#include "modlab/numerics.hpp"

namespace modlab::io {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

ComplexVector vector_from_json(const Json& j);

/// Reads and parses a JSON file; ConfigError on I/O or syntax failure.
Json read_json_file(const std::filesystem::path& path);

/// {ambient_dim, generators: [matrix...]}; the algebra generated by them.
OperatorAlgebra algebra_from_json(const Json& j);

/// {density: matrix}.
AlgebraState state_from_json(const Json& j);

/// {u_min, u_max, n}; missing fields keep the defaults.
horizon::RadialGrid grid_from_json(const Json& j);

/// Radial samples [...] on the grid, or {bump: [a, b]} / {bump: [a, b, amplitude]}.
horizon::RadialProfile radial_from_json(const Json& j, const horizon::RadialGrid& grid);

/// {kind: "full-sphere", data: {value}}, {kind: "caps", data: [{theta: [t1, t2],
/// phi: [p1, p2], value}]} or {kind: "grid", data: {n_theta, n_phi, values}}.
horizon::AngularWeight angular_from_json(const Json& j);

/// {grid, terms: [{radial, angular}]}. A grid override replaces the fixture grid.
horizon::HorizonTestFunction test_function_from_json(const Json& j,
                                                     const std::optional<horizon::RadialGrid>& grid = {});

}  // namespace modlab::io
