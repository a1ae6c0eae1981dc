#include "noether/conservation.hpp"

#include <algorithm>
#include <cmath>

namespace noether {

namespace {

std::optional<std::vector<double>> try_v(const EulerLagrangeSystem<double>& sys, const InvariantSequence<double>& inv,
                                         long n) {
  try {
    return v_of_i(sys, inv, n);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::WindowOutOfRange) throw;
    return std::nullopt;
  }
}

double inf_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

Series<std::vector<double>> v_series(const InvariantLagrangian& L, const InvariantSequence<double>& inv) {
  const EulerLagrangeSystem<double> sys(L, inv);
  Series<std::vector<double>> out;
  bool started = false;
  for (long n = inv.kappa.first(); n <= inv.kappa.end() + 3; ++n) {
    auto v = try_v(sys, inv, n);
    if (!v) {
      if (started) break;
      continue;
    }
    if (!started) out.offset = n;
    started = true;
    out.values.push_back(std::move(*v));
  }
  return out;
}

ConservationRecord noether_constant(const InvariantLagrangian& L, const LatticePath<double>& path) {
  const auto inv = invariants_of(path);
  const auto V = v_series(L, inv);
  ConservationRecord rec;
  rec.kind = path.kind();
  const long last_frame = path.end() - frame_window(path.kind());
  bool started = false;
  for (long n = V.first(); n < V.end() && n <= last_frame; ++n) {
    if (n < path.first()) continue;
    if (!started) rec.offset = n;
    started = true;
    const auto ad = adjoint_matrix(frame_at(path, n));
    rec.V.push_back(V.at(n));
    rec.ad_rho.push_back(ad);
    rec.k_n.push_back(row_times(V.at(n), ad));
  }
  if (rec.k_n.empty()) throw Error(ErrorCode::WindowOutOfRange, "path too short for any conservation site");
  rec.k = rec.k_n.front();
  for (const auto& kn : rec.k_n) rec.drift = std::max(rec.drift, inf_norm_diff(kn, rec.k));
  return rec;
}

double structure_check(const Series<std::vector<double>>& V, const InvariantSequence<double>& inv) {
  double worst = 0.0;
  for (long n = V.first(); n + 1 < V.end(); ++n) {
    const auto lhs = row_times(V.at(n + 1), adjoint_matrix(maurer_cartan(inv, n)));
    worst = std::max(worst, inf_norm_diff(lhs, V.at(n)));
  }
  return worst;
}

}  // namespace noether
