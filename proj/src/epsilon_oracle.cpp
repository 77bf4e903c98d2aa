#include "modlab/epsilon_oracle.hpp"

#include <cmath>
#include <numbers>

#include "modlab/error.hpp"

namespace modlab::oracle {

Complex regularized_kernel(const std::function<double(double)>& h1, Support s1,
                           const std::function<double(double)>& h2, Support s2, double eps,
                           double step_fraction) {
  if (!(eps > 0.0) || !(step_fraction > 0.0)) {
    throw Error(ErrorCode::ConfigError, "regularized_kernel: eps and step must be positive");
  }
  const double step = eps * step_fraction;
  // Sample both functions on the common lattice U = m * step so the kernel
  // only depends on the index difference.
  const auto i_lo1 = static_cast<long>(std::floor(s1.lo / step));
  const auto i_hi1 = static_cast<long>(std::ceil(s1.hi / step));
  const auto i_lo2 = static_cast<long>(std::floor(s2.lo / step));
  const auto i_hi2 = static_cast<long>(std::ceil(s2.hi / step));
  std::vector<double> a(static_cast<std::size_t>(i_hi1 - i_lo1 + 1));
  std::vector<double> b(static_cast<std::size_t>(i_hi2 - i_lo2 + 1));
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = h1(step * static_cast<double>(i_lo1 + static_cast<long>(i)));
  for (std::size_t j = 0; j < b.size(); ++j) b[j] = h2(step * static_cast<double>(i_lo2 + static_cast<long>(j)));

  // corr[d] = sum_i a_i b_j over pairs with (i + i_lo1) - (j + i_lo2) = d + d_min.
  const long d_min = i_lo1 - i_hi2;
  const long d_max = i_hi1 - i_lo2;
  std::vector<double> corr(static_cast<std::size_t>(d_max - d_min + 1), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const long d = (i_lo1 + static_cast<long>(i)) - (i_lo2 + static_cast<long>(j));
      corr[static_cast<std::size_t>(d - d_min)] += a[i] * b[j];
    }
  }
  Complex sum = 0.0;
  for (std::size_t k = 0; k < corr.size(); ++k) {
    if (corr[k] == 0.0) continue;
    const Complex x(step * static_cast<double>(d_min + static_cast<long>(k)), eps);
    sum += corr[k] / (x * x);
  }
  return -sum * step * step / std::numbers::pi;
}

Complex richardson_limit(const std::vector<double>& eps, const std::vector<Complex>& values) {
  if (eps.empty() || eps.size() != values.size()) {
    throw Error(ErrorCode::ConfigError, "richardson_limit: need matching nonempty inputs");
  }
  // Neville's scheme evaluated at 0.
  std::vector<Complex> p = values;
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double xi = eps[i];
      const double xj = eps[i + level];
      p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
    }
  }
  return p[0];
}

Complex epsilon_limit(const std::function<double(double)>& h1, Support s1,
                      const std::function<double(double)>& h2, Support s2, double eps0, int levels) {
  std::vector<double> eps;
  std::vector<Complex> values;
  double e = eps0;
  for (int l = 0; l < levels; ++l, e *= 0.5) {
    eps.push_back(e);
    values.push_back(regularized_kernel(h1, s1, h2, s2, e));
  }
  return richardson_limit(eps, values);
}

}  // namespace modlab::oracle
