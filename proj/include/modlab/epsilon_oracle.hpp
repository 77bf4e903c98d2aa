#pragma once

// Direct quadrature of the regularized two-point kernel
//   -(1/pi) int int h1(U) h2(U') / (U - U' + i eps)^2 dU dU'
// and its Richardson extrapolation to eps -> 0. Used to certify the
// positive-frequency formula; never called by lambda_1d itself.

#include <functional>
#include <vector>

#include "modlab/numerics.hpp"

namespace modlab::oracle {

struct Support {
  double lo;
  double hi;
};

/// Trapezoid double sum on a lattice of step eps * step_fraction.
Complex regularized_kernel(const std::function<double(double)>& h1, Support s1,
                           const std::function<double(double)>& h2, Support s2, double eps,
                           double step_fraction = 0.125);

/// Polynomial (Neville) extrapolation of the values at the given eps to 0.
Complex richardson_limit(const std::vector<double>& eps, const std::vector<Complex>& values);

/// Regularized kernel at eps_0, eps_0/2, ... (levels values), extrapolated.
Complex epsilon_limit(const std::function<double(double)>& h1, Support s1,
                      const std::function<double(double)>& h2, Support s2, double eps0 = 1e-2,
                      int levels = 3);

}  // namespace modlab::oracle
