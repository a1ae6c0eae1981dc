#pragma once

#include <cmath>
#include <vector>

#include "noether/lagrangian.hpp"

namespace noether::fixtures {

/// L = kappa_0.
inline InvariantLagrangian kappa0() { return InvariantLagrangian::polynomial({Monomial{1.0, {{0, 1}}, {}}}); }

/// Period-6 orbit of u_{k+2} = u_{k+1} - u_k through (1,0), (0,2): kappa = 1, tau = 2.
inline LatticePath<double> period6(std::size_t n = 12) {
  const double xs[6] = {1, 0, -1, -1, 0, 1};
  const double ys[6] = {0, 2, 2, 0, -2, -2};
  std::vector<double> x, y;
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(xs[i % 6]);
    y.push_back(ys[i % 6]);
  }
  return LatticePath<double>(ActionKind::SL2Linear, 0, x, y);
}

/// x_j = r^j on the line; kappa = -2/7 for r = 1/2.
inline LatticePath<double> geometric(std::size_t n, double r = 0.5) {
  std::vector<double> x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(std::pow(r, static_cast<double>(i)));
  return LatticePath<double>(ActionKind::SL2Projective, 0, x);
}

inline InvariantSequence<double> constant_invariants(ActionKind kind, std::size_t n, double kappa, double tau = 0.0) {
  InvariantSequence<double> inv;
  inv.kind = kind;
  inv.kappa = Series<double>(0, std::vector<double>(n, kappa));
  if (kind != ActionKind::SL2Projective) inv.tau = Series<double>(0, std::vector<double>(n, tau));
  return inv;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = a.size() == b.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace noether::fixtures
