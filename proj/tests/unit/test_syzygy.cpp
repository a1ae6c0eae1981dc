#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "noether/properties.hpp"
#include "noether/syzygy.hpp"

using namespace noether;

namespace {

using Op = LinearDifferenceOperator<double>;
const ActionKind kAll[] = {ActionKind::SL2Linear, ActionKind::SA2Linear, ActionKind::SL2Projective};

Sequence<double> random_sequence(std::mt19937_64& rng, long first, long end) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v;
  for (long n = first; n < end; ++n) v.push_back(u(rng));
  return as_sequence(Series<double>(first, std::move(v)));
}

/// Velocity of the one-parameter subgroup exp(t xi) at every point.
LatticePath<double> with_orbit_velocity(LatticePath<double> path, const std::vector<double>& xi) {
  std::vector<double> vx, vy;
  for (long k = path.first(); k < path.end(); ++k) {
    const auto phi = characteristics(path.kind(), path.point(k));
    double a = 0.0, b = 0.0;
    for (int r = 0; r < phi.cols(); ++r) {
      a += phi(0, r) * xi[static_cast<std::size_t>(r)];
      if (phi.rows() > 1) b += phi(1, r) * xi[static_cast<std::size_t>(r)];
    }
    vx.push_back(a);
    if (point_dim(path.kind()) == 2) vy.push_back(b);
  }
  path.set_velocities(vx, vy);
  return path;
}

LatticePath<double> with_random_velocity(LatticePath<double> path, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> vx, vy;
  for (std::size_t i = 0; i < path.size(); ++i) {
    vx.push_back(u(rng));
    if (point_dim(path.kind()) == 2) vy.push_back(u(rng));
  }
  path.set_velocities(vx, vy);
  return path;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("adjoint of the identity is the identity") {
  std::mt19937_64 rng(1);
  const auto F = random_sequence(rng, 0, 10);
  const auto Hs = adjoint_of(Op::identity());
  for (long n = 0; n < 10; ++n) CHECK(Hs.apply(F, n) == F(n));
}

TEST_CASE("adjoint of a weighted shift") {
  std::mt19937_64 rng(2);
  const auto c = random_sequence(rng, 0, 10);
  const auto F = random_sequence(rng, 0, 10);
  Op H;
  H.add(1, c);
  const auto Hs = adjoint_of(H);
  for (long n = 1; n < 10; ++n) CHECK(Hs.apply(F, n) == c(n - 1) * F(n - 1));
}

TEST_CASE("adjoint of the linear H11 and involution") {
  std::mt19937_64 rng(3);
  const auto kap = random_sequence(rng, 0, 12);
  Op H;
  H.add(0, kap).add(1, [kap](long n) { return -kap(n); });
  const auto Hs = adjoint_of(H);
  CHECK(Hs.min_shift() == -1);
  CHECK(Hs.max_shift() == 0);
  for (long n = 1; n < 12; ++n) {
    CHECK(Hs.coefficient(0, n) == kap(n));
    CHECK(Hs.coefficient(-1, n) == -kap(n - 1));
  }
  const auto Hss = adjoint_of(Hs);
  const auto G = random_sequence(rng, 0, 12);
  for (long n = 2; n < 10; ++n) CHECK(Hss.apply(G, n) == doctest::Approx(H.apply(G, n)).epsilon(1e-15));
}

TEST_CASE("boundary form of simple operators") {
  std::mt19937_64 rng(4);
  const auto F = random_sequence(rng, 0, 10);
  const auto G = random_sequence(rng, 0, 10);
  for (long n = 1; n < 9; ++n) CHECK(boundary_form(Op::identity(), F, G, n) == 0.0);
  Op S;
  S.add(1, [](long) { return 1.0; });
  for (long n = 1; n < 9; ++n) CHECK(boundary_form(S, F, G, n) == F(n - 1) * G(n));
}

TEST_CASE("boundary form needs forward shifts") {
  Op back;
  back.add(-1, [](long) { return 1.0; });
  std::mt19937_64 rng(5);
  const auto F = random_sequence(rng, 0, 6);
  try {
    (void)boundary_form(back, F, F, 3);
    FAIL("expected SupportViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportViolation);
  }
}

TEST_CASE("telescoping identity for every syzygy entry") {
  for (const auto kind : kAll) {
    CAPTURE(to_string(kind));
    auto rng = trial_rng(6, "telescoping", static_cast<std::uint64_t>(kind));
    const auto path = random_path(kind, 16, rng);
    const auto H = build_syzygy(invariants_of(path));
    const auto F = random_sequence(rng, -4, 20);
    const auto G = random_sequence(rng, -4, 20);
    const int G_count = generator_count(kind);
    for (int r = 0; r < G_count; ++r)
      for (int c = 0; c < G_count; ++c) {
        const auto& op = H(r, c);
        const auto Hs = adjoint_of(op);
        double worst = 0.0;
        for (long n = 3; n < 8; ++n) {
          const double lhs = F(n) * op.apply(G, n) - Hs.apply(F, n) * G(n);
          const double rhs = boundary_form(op, F, G, n + 1) - boundary_form(op, F, G, n);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
        CHECK(worst < 1e-12 * (1 + max_abs(std::vector<double>{op.coefficient(0, 5), op.coefficient(1, 5)})));
      }
  }
}

TEST_CASE("summed pairing vanishes for compactly supported G") {
  auto rng = trial_rng(7, "summed-pairing", 0);
  const auto path = random_path(ActionKind::SA2Linear, 18, rng);
  const auto H = build_syzygy(invariants_of(path));
  const auto F = random_sequence(rng, -4, 20);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> g(20, 0.0);
  for (int i = 6; i < 10; ++i) g[static_cast<std::size_t>(i)] = u(rng);
  const auto G = as_sequence(Series<double>(0, g));
  const auto& op = H(0, 1);
  const auto Hs = adjoint_of(op);
  double sum = 0.0, scale = 0.0;
  for (long n = 3; n < 11; ++n) {
    const double term = F(n) * op.apply(G, n) - Hs.apply(F, n) * G(n);
    sum += term;
    scale += std::abs(term);
  }
  CHECK(std::abs(sum) < 1e-13 * (1 + scale));
}

TEST_CASE("syzygy coefficients at constant invariants") {
  const auto H = build_syzygy(fixtures::constant_invariants(ActionKind::SL2Linear, 8, 1.0, 2.0));
  CHECK(H(0, 0).coefficient(0, 2) == 1.0);
  CHECK(H(0, 0).coefficient(1, 2) == -1.0);
  CHECK(H(0, 1).coefficient(0, 2) == 0.5);
  CHECK(H(0, 1).coefficient(2, 2) == -0.5);
  CHECK(H(1, 0).coefficient(0, 2) == 2.0);
  CHECK(H(1, 1).coefficient(1, 2) == 1.0);

  const auto P = build_syzygy(fixtures::constant_invariants(ActionKind::SL2Projective, 8, 2.0));
  CHECK(P(0, 0).coefficient(3, 2) == doctest::Approx(2.0));
  CHECK(P(0, 0).coefficient(2, 2) == doctest::Approx(1.0));
  CHECK(P(0, 0).coefficient(1, 2) == doctest::Approx(-1.0));
  CHECK(P(0, 0).coefficient(0, 2) == doctest::Approx(-2.0));
}

TEST_CASE("syzygy applied to zero is zero") {
  for (const auto kind : kAll) {
    auto rng = trial_rng(8, "zero", static_cast<std::uint64_t>(kind));
    const auto H = build_syzygy(invariants_of(random_path(kind, 12, rng)));
    const Sequence<double> zero = [](long) { return 0.0; };
    const auto out = H.apply(std::vector<Sequence<double>>(static_cast<std::size_t>(generator_count(kind)), zero), 2);
    for (double v : out) CHECK(v == 0.0);
  }
}

TEST_CASE("syzygy coefficients beyond the sampled invariants throw") {
  const auto H = build_syzygy(fixtures::constant_invariants(ActionKind::SL2Linear, 4, 1.0, 2.0));
  CHECK_THROWS_AS((void)H(0, 1).coefficient(2, 3), Error);
}

TEST_CASE("syzygy residual with zero velocity") {
  for (const auto kind : kAll) {
    auto rng = trial_rng(9, "zero-velocity", static_cast<std::uint64_t>(kind));
    auto path = random_path(kind, 10, rng);
    path = with_orbit_velocity(path, std::vector<double>(5, 0.0));
    const auto [first, last] = syzygy_sites(path);
    for (long k = first; k <= last; ++k)
      for (double v : syzygy_residual(path, k)) CHECK(v == 0.0);
  }
}

TEST_CASE("orbit velocities leave the invariants fixed") {
  const std::vector<double> xi{0.3, -0.2, 0.5, 0.1, -0.4};
  for (const auto kind : kAll) {
    CAPTURE(to_string(kind));
    auto rng = trial_rng(10, "orbit", static_cast<std::uint64_t>(kind));
    const auto path = with_orbit_velocity(random_path(kind, 10, rng), xi);
    const auto lifted = invariants_of(lift_along_velocities(path));
    for (long k = lifted.kappa.first(); k < lifted.kappa.end(); ++k) CHECK(std::abs(lifted.k(k).tangent()) < 1e-10);
    const auto [first, last] = syzygy_sites(path);
    for (long k = first; k <= last; ++k) CHECK(max_abs(syzygy_residual(path, k)) < 1e-10);
  }
}

TEST_CASE("syzygy residual on the four-point parabola") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto path = with_random_velocity(LatticePath<double>(ActionKind::SL2Linear, 0, {1, 2, 3, 5}, {1, 4, 9, 20}), rng);
    const auto [first, last] = syzygy_sites(path);
    REQUIRE(first == 0);
    REQUIRE(last == 0);
    CHECK(max_abs(syzygy_residual(path, 0)) < 1e-9);
  }
}

TEST_CASE("syzygy and curvature identities on random paths") {
  for (const auto kind : kAll) {
    CAPTURE(to_string(kind));
    double syz = 0.0, curv = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      auto rng = trial_rng(13, "syzygy-unit", t);
      const auto path = random_path(kind, 12, rng, true);
      const auto [s0, s1] = syzygy_sites(path);
      for (long k = s0; k <= s1; ++k) syz = std::max(syz, max_abs(syzygy_residual(path, k)));
      const auto [c0, c1] = curvature_sites(path);
      for (long k = c0; k <= c1; ++k) curv = std::max(curv, curvature_residual(path, k));
    }
    CHECK(syz < 1e-9);
    CHECK(curv < 1e-9);
  }
}

TEST_CASE("literal projective curvature entry fails the structure equation") {
  double literal = 0.0, corrected = 0.0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    auto rng = trial_rng(14, "literal-entry", t);
    const auto path = random_path(ActionKind::SL2Projective, 10, rng, true);
    const auto [c0, c1] = curvature_sites(path);
    for (long k = c0; k <= c1; ++k) {
      literal = std::max(literal, curvature_residual(path, k, true));
      corrected = std::max(corrected, curvature_residual(path, k, false));
    }
  }
  CHECK(literal > 1e-3);
  CHECK(corrected < 1e-9);
}
