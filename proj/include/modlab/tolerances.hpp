#pragma once

namespace modlab::tol {

// Relative to the operator norm of the input.
inline constexpr double herm = 1e-10;
inline constexpr double eig = 1e-10;
inline constexpr double polar = 1e-10;

// Eigenvalue cut for log / inverse, relative to the largest eigenvalue.
inline constexpr double logcut = 1e-12;

// Span membership and closure residuals for matrix algebras.
inline constexpr double alg = 1e-9;

// Gram-matrix null space cut, relative to the largest Gram eigenvalue.
inline constexpr double gram = 1e-10;

inline constexpr double gns = 1e-10;
inline constexpr double mod = 1e-9;

}  // namespace modlab::tol
