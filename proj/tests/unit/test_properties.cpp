#include "doctest.h"
#include "noether/properties.hpp"

using namespace noether;

TEST_CASE("property suite passes on a short run") {
  for (const auto kind : {ActionKind::SL2Linear, ActionKind::SA2Linear, ActionKind::SL2Projective}) {
    CAPTURE(to_string(kind));
    const auto report = run_property_suite(kind, 6, 42);
    CHECK_FALSE(report.results.empty());
    for (const auto& r : report.results) {
      CAPTURE(r.name);
      CAPTURE(r.value);
      CHECK(r.pass);
    }
    CHECK(report.all_pass());
  }
}

TEST_CASE("property suite is deterministic") {
  const auto a = run_property_suite(ActionKind::SA2Linear, 4, 7);
  const auto b = run_property_suite(ActionKind::SA2Linear, 4, 7);
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    CHECK(a.results[i].name == b.results[i].name);
    CHECK(a.results[i].value == b.results[i].value);
    CHECK(a.results[i].trials == b.results[i].trials);
  }
}

TEST_CASE("zero trials is a vacuous pass") {
  const auto report = run_property_suite(ActionKind::SL2Projective, 0, 1);
  CHECK(report.all_pass());
}

TEST_CASE("trial generators depend only on their labels") {
  auto a = trial_rng(1, "x", 3), b = trial_rng(1, "x", 3), c = trial_rng(1, "y", 3), d = trial_rng(1, "x", 4);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
  CHECK(va != d());
}

TEST_CASE("random paths stay in the frame domain") {
  for (const auto kind : {ActionKind::SL2Linear, ActionKind::SA2Linear, ActionKind::SL2Projective}) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      auto rng = trial_rng(2, "domain", t);
      const auto p = random_path(kind, 12, rng, true);
      CHECK(p.size() == 12);
      CHECK(p.has_velocities());
      const auto inv = invariants_of(p);
      for (long k = p.first(); k + frame_window(kind) <= p.end(); ++k) CHECK_NOTHROW(frame_at(p, k));
      for (double x : inv.kappa.values) {
        CHECK(std::abs(x) >= 0.05);
        CHECK(std::abs(x) <= 20.0);
      }
    }
  }
}

TEST_CASE("path distance") {
  const LatticePath<double> p(ActionKind::SL2Projective, 0, {1, 2, 3});
  const LatticePath<double> q(ActionKind::SL2Projective, 0, {1, 2.5, 3});
  const LatticePath<double> r(ActionKind::SL2Projective, 1, {2, 3});
  const LatticePath<double> s(ActionKind::SL2Projective, 3, {1});
  CHECK(path_distance(p, q) == 0.5);
  CHECK(path_distance(p, r) == 0.0);
  CHECK(std::isinf(path_distance(p, s)));
}
