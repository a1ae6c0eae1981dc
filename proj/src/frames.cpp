#include "noether/frames.hpp"

#include <algorithm>
#include <cmath>

namespace noether {

GroupElement<double> random_group_element(ActionKind kind, std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng);
    if (std::abs(a) < 0.25) continue;
    const double d = (1.0 + b * c) / a;
    if (std::abs(d) > 4.0 * spread) continue;
    if (kind == ActionKind::SA2Linear) return GroupElement<double>::make(kind, a, b, c, d, u(rng), u(rng));
    return GroupElement<double>::make(kind, a, b, c, d);
  }
}

LatticePath<double> transform_path(const LatticePath<double>& path, const GroupElement<double>& g) {
  auto out = path.map_points<double>([&](const Point<double>& p) { return act(g, p); });
  if (path.has_velocities()) {
    std::vector<double> vx, vy;
    for (long k = path.first(); k < path.end(); ++k) {
      const auto v = act_velocity(g, path.point(k), path.velocity(k));
      vx.push_back(v.x);
      if (point_dim(path.kind()) == 2) vy.push_back(v.y);
    }
    out.set_velocities(std::move(vx), std::move(vy));
  }
  return out;
}

namespace {

double normalization_deviation(const LatticePath<double>& path, long k, const GroupElement<double>& rho) {
  const ActionKind kind = path.kind();
  auto img = [&](long j) { return act(rho, path.point(k + j)); };
  switch (kind) {
    case ActionKind::SL2Linear: {
      const auto p0 = img(0), p1 = img(1);
      return std::max({std::abs(p0.x - 1.0), std::abs(p0.y), std::abs(p1.x)});
    }
    case ActionKind::SA2Linear: {
      const auto p0 = img(0), p1 = img(1), p2 = img(2);
      return std::max({std::abs(p0.x), std::abs(p0.y), std::abs(p1.x - 1.0), std::abs(p1.y), std::abs(p2.x)});
    }
    case ActionKind::SL2Projective: {
      const auto p0 = img(0), p1 = img(1), p2 = img(2);
      return std::max({std::abs(p0.x - 0.5), std::abs(p1.x), std::abs(p2.x + 0.5)});
    }
  }
  return 0.0;
}

double relative_series_deviation(const Series<double>& a, const Series<double>& b) {
  double dev = 0.0;
  for (long n = a.first(); n < a.end(); ++n)
    dev = std::max(dev, std::abs(a.at(n) - b.at(n)) / std::max(1.0, std::abs(a.at(n))));
  return dev;
}

// Frame identities that need no group sample.
void check_intrinsic(const LatticePath<double>& path, FrameIdentityReport& report) {
  const auto inv = invariants_of(path);
  const long last_frame = path.end() - frame_window(path.kind());
  std::vector<GroupElement<double>> frames;
  for (long k = path.first(); k <= last_frame; ++k) frames.push_back(frame_at(path, k));
  for (long k = path.first(); k <= last_frame; ++k) {
    const auto& rho = frames[static_cast<std::size_t>(k - path.first())];
    report.normalization = std::max(report.normalization, normalization_deviation(path, k, rho));
    report.determinant = std::max(report.determinant, std::abs(determinant(rho.linear()) - 1.0));
    if (k < last_frame && detail::has_maurer_cartan(inv, k)) {
      const auto& next = frames[static_cast<std::size_t>(k + 1 - path.first())];
      const auto mc = maurer_cartan(inv, k);
      const auto ratio = compose(next, inverse(rho));
      double dev = max_abs_diff(ratio.standard_rep(), mc.standard_rep());
      // Projective elements are defined up to sign.
      if (path.kind() == ActionKind::SL2Projective)
        dev = std::min(dev, max_abs_diff(ratio.standard_rep(), -mc.standard_rep()));
      report.maurer_cartan = std::max(report.maurer_cartan, dev);
      report.determinant = std::max(report.determinant, std::abs(determinant(mc.linear()) - 1.0));
    }
  }
}

// For the projective action g and -g act identically while the positive-root
// frame only sees one of them; pick the sign with c x + d > 0 along the path.
std::optional<GroupElement<double>> admissible_sample(const LatticePath<double>& path, std::mt19937_64& rng) {
  auto g = random_group_element(path.kind(), rng);
  if (path.kind() != ActionKind::SL2Projective) return g;
  int positive = 0, negative = 0;
  for (long k = path.first(); k < path.end(); ++k) {
    const double den = g.c() * path.point(k).x + g.d();
    (den > 0 ? positive : negative)++;
  }
  if (positive && negative) return std::nullopt;
  if (negative) g = GroupElement<double>::from_parts(g.kind(), -g.linear());
  return g;
}

}  // namespace

FrameIdentityReport verify_frame_identities(const LatticePath<double>& path, int trials, std::mt19937_64& rng) {
  FrameIdentityReport report;
  check_intrinsic(path, report);
  const auto inv = invariants_of(path);
  const long last_frame = path.end() - frame_window(path.kind());
  for (int t = 0; t < trials; ++t) {
    bool done = false;
    for (int attempt = 0; attempt < 200 && !done; ++attempt) {
      const auto g = admissible_sample(path, rng);
      if (!g) continue;
      try {
        const auto moved = transform_path(path, *g);
        const auto moved_inv = invariants_of(moved);
        double eq = 0.0;
        for (long k = path.first(); k <= last_frame; ++k) {
          const auto lhs = compose(frame_at(moved, k), *g);
          eq = std::max(eq, max_abs_diff(lhs.standard_rep(), frame_at(path, k).standard_rep()));
        }
        double iv = relative_series_deviation(inv.kappa, moved_inv.kappa);
        if (!inv.tau.empty()) iv = std::max(iv, relative_series_deviation(inv.tau, moved_inv.tau));
        check_intrinsic(moved, report);
        report.equivariance = std::max(report.equivariance, eq);
        report.invariance = std::max(report.invariance, iv);
        done = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateWindow && e.code() != ErrorCode::NegativeRadicand &&
            e.code() != ErrorCode::ProjectivePole)
          throw;
      }
    }
    if (!done) throw Error(ErrorCode::NonConvergence, "no admissible group sample keeps the path nondegenerate");
    ++report.trials;
  }
  return report;
}

}  // namespace noether
