#include "noether/variational.hpp"

#include <algorithm>
#include <cmath>

namespace noether {

double el_residual_max(const InvariantLagrangian& L, const InvariantSequence<double>& inv) {
  const EulerLagrangeSystem<double> sys(L, inv);
  const auto [first, last] = sys.residual_sites();
  double worst = 0.0;
  for (long n = first; n <= last; ++n)
    for (double r : sys.residual(n)) worst = std::max(worst, std::abs(r));
  return worst;
}

double pairing_check(const InvariantLagrangian& L, const LatticePath<double>& path) {
  const auto lifted = lift_along_velocities(path);
  const double lhs = action_sum(L, invariants_of(lifted)).tangent();

  const EulerLagrangeSystem<double> sys(L, invariants_of(path));
  double rhs = 0.0;
  for (long k = path.first(); k < path.end(); ++k) {
    const auto v = path.velocity(k);
    if (v.x == 0.0 && v.y == 0.0) continue;
    std::vector<double> r;
    try {
      r = sys.residual(k);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowOutOfRange) throw;
      throw Error(ErrorCode::InvalidArgument, "velocity support reaches sites without a computable residual", k);
    }
    const auto s = sigma_at(path, k);
    for (std::size_t a = 0; a < r.size(); ++a) rhs += r[a] * s[a];
  }
  return std::abs(lhs - rhs);
}

}  // namespace noether
