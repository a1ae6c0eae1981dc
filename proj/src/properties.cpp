#include "noether/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noether/syzygy.hpp"

namespace noether {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Monomial mono(double c, std::map<int, int> k, std::map<int, int> t = {}) { return Monomial{c, std::move(k), std::move(t)}; }

InvariantLagrangian poly(std::vector<Monomial> terms) { return InvariantLagrangian::polynomial(std::move(terms)); }

bool well_conditioned(const LatticePath<double>& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    double big = std::abs(p.xs()[i]);
    if (!p.ys().empty()) big = std::max(big, std::abs(p.ys()[i]));
    if (!(big <= 1e3)) return false;
    if (i + 1 < p.size()) {
      double gap = std::abs(p.xs()[i + 1] - p.xs()[i]);
      if (!p.ys().empty()) gap = std::max(gap, std::abs(p.ys()[i + 1] - p.ys()[i]));
      if (gap < 1e-2 * std::max(1.0, big)) return false;
    }
  }
  return true;
}

bool moderate(const Series<double>& s) {
  for (double v : s.values)
    if (!(std::abs(v) >= 0.05 && std::abs(v) <= 20.0)) return false;
  return true;
}

bool recoverable(const Error& e) {
  switch (e.code()) {
    case ErrorCode::DegenerateWindow:
    case ErrorCode::NegativeRadicand:
    case ErrorCode::ProjectivePole:
    case ErrorCode::DegenerateInvariants:
    case ErrorCode::BranchPoint:
    case ErrorCode::NewtonDivergence:
    case ErrorCode::SingularJacobian:
    case ErrorCode::NonConvergence:
    case ErrorCode::SingularMatrix:
      return true;
    default:
      return false;
  }
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Tally {
  PropertyResult r;
  Tally(std::string name, ActionKind kind, double threshold, bool lower = false) {
    r.name = std::move(name);
    r.kind = kind;
    r.threshold = threshold;
    r.lower_bound = lower;
    r.value = lower ? kInf : 0.0;
  }
  void add(double v) {
    ++r.trials;
    if (std::isnan(v)) v = kInf;
    r.value = r.lower_bound ? std::min(r.value, v) : std::max(r.value, v);
  }
  PropertyResult done() {
    if (r.trials == 0) r.value = 0.0;
    r.pass = r.trials == 0 || (r.lower_bound ? r.value > r.threshold : r.value < r.threshold);
    return r;
  }
};

}  // namespace

double min_gap(const LatticePath<double>& p) {
  double gap = kInf;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    double g = std::abs(p.xs()[i + 1] - p.xs()[i]);
    if (!p.ys().empty()) g = std::max(g, std::abs(p.ys()[i + 1] - p.ys()[i]));
    gap = std::min(gap, g);
  }
  return gap;
}

LatticePath<double> perturb_interior(const LatticePath<double>& p, double amplitude, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  auto xs = p.xs();
  auto ys = p.ys();
  const auto W = static_cast<std::size_t>(frame_window(p.kind()));
  for (std::size_t i = W; i + W < xs.size(); ++i) {
    xs[i] += u(rng);
    if (!ys.empty()) ys[i] += u(rng);
  }
  return LatticePath<double>(p.kind(), p.offset(), std::move(xs), std::move(ys));
}

LatticePath<double> with_interior_velocities(const InvariantLagrangian& L, const LatticePath<double>& p,
                                             std::mt19937_64& rng) {
  const EulerLagrangeSystem<double> sys(L, invariants_of(p));
  const auto [lo, hi] = sys.residual_sites();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> vx(p.size(), 0.0), vy;
  if (point_dim(p.kind()) == 2) vy.assign(p.size(), 0.0);
  for (long n = lo; n <= hi; ++n) {
    const auto i = static_cast<std::size_t>(n - p.first());
    vx[i] = u(rng);
    if (!vy.empty()) vy[i] = u(rng);
  }
  auto out = p;
  out.set_velocities(std::move(vx), std::move(vy));
  return out;
}

double relative_drift(const ConservationRecord& rec) { return rec.drift / (1.0 + inf_norm(rec.k)); }

std::mt19937_64 trial_rng(std::uint64_t seed, std::string_view property, std::uint64_t trial) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : property) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return std::mt19937_64(splitmix(splitmix(seed) ^ splitmix(h) ^ splitmix(trial + 0x51ed27ULL)));
}

LatticePath<double> random_path(ActionKind kind, std::size_t length, std::mt19937_64& rng, bool velocities) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<double> xs, ys;
    if (kind == ActionKind::SL2Projective) {
      // Mostly decreasing walk: uniform points rarely admit frames at every site.
      std::uniform_real_distribution<double> step(0.2, 1.5), coin(0.0, 1.0);
      xs.push_back(u(rng));
      while (xs.size() < length) xs.push_back(xs.back() + (coin(rng) < 0.9 ? -1.0 : 1.0) * step(rng));
    } else {
      for (std::size_t i = 0; i < length; ++i) {
        xs.push_back(u(rng));
        ys.push_back(u(rng));
      }
    }
    LatticePath<double> p(kind, 0, std::move(xs), std::move(ys));
    try {
      const auto inv = invariants_of(p);
      if (!moderate(inv.kappa) || (!inv.tau.empty() && !moderate(inv.tau))) continue;
      // kappa = 1 is the coincidence locus of the cross ratio.
      if (kind == ActionKind::SL2Projective &&
          std::any_of(inv.kappa.values.begin(), inv.kappa.values.end(), [](double k) { return std::abs(k - 1.0) < 0.05; }))
        continue;
      for (long k = p.first(); k + frame_window(kind) <= p.end(); ++k) frame_at(p, k);
    } catch (const Error& e) {
      if (!recoverable(e)) throw;
      continue;
    }
    if (velocities) {
      std::vector<double> vx, vy;
      for (std::size_t i = 0; i < length; ++i) {
        vx.push_back(u(rng));
        if (point_dim(kind) == 2) vy.push_back(u(rng));
      }
      p.set_velocities(std::move(vx), std::move(vy));
    }
    return p;
  }
  throw Error(ErrorCode::NonConvergence, "no nondegenerate random path found");
}

std::vector<InvariantLagrangian> lagrangian_family(ActionKind kind) {
  if (kind == ActionKind::SL2Projective)
    return {poly({mono(1.0, {{0, 1}})}), poly({mono(1.0, {{0, 2}})}), poly({mono(1.0, {{0, 1}, {1, 1}})}),
            poly({mono(0.5, {{0, 3}}), mono(-1.0, {{2, 1}})}), poly({mono(1.0, {{0, 1}, {2, 1}}), mono(0.5, {{1, 2}})})};
  return {poly({mono(1.0, {{0, 1}})}),
          poly({mono(1.0, {{0, 2}}), mono(1.0, {}, {{0, 1}})}),
          poly({mono(1.0, {{0, 1}, {1, 1}}), mono(0.5, {}, {{0, 1}})}),
          poly({mono(1.0, {}, {{0, 1}, {1, 1}}), mono(-1.0, {{0, 1}})}),
          poly({mono(0.3, {{0, 3}}), mono(1.0, {{1, 1}}, {{0, 2}})})};
}

std::vector<InvariantLagrangian> stepping_family(ActionKind kind) {
  switch (kind) {
    case ActionKind::SL2Linear:
      return {poly({mono(1.0, {{0, 1}})}), poly({mono(1.0, {{0, 1}}), mono(0.1, {{0, 2}})}),
              poly({mono(1.0, {{0, 1}}), mono(0.1, {}, {{0, 1}})})};
    case ActionKind::SA2Linear:
      return {poly({mono(1.0, {{0, 1}})}), poly({mono(1.0, {{0, 1}}), mono(0.1, {{0, 2}})})};
    case ActionKind::SL2Projective:
      return {poly({mono(1.0, {{0, 1}})}), poly({mono(1.0, {{0, 1}}), mono(0.1, {{0, 2}})})};
  }
  return {};
}

InvariantSequence<double> constant_extremal(ActionKind kind, std::size_t length) {
  InvariantSequence<double> inv;
  inv.kind = kind;
  switch (kind) {
    case ActionKind::SL2Linear:
      inv.kappa = {0, std::vector<double>(length, 1.0)};
      inv.tau = {0, std::vector<double>(length, 2.0)};
      break;
    case ActionKind::SA2Linear:
      inv.kappa = {0, std::vector<double>(length, 1.0)};
      inv.tau = {0, std::vector<double>(length, 3.0)};
      break;
    case ActionKind::SL2Projective:
      inv.kappa = {0, std::vector<double>(length, -2.0 / 7.0)};
      break;
  }
  return inv;
}

std::optional<ExtremalFixture> solver_extremal(const InvariantLagrangian& L, ActionKind kind, std::size_t length,
                                               std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  const auto st = el_structure(L, kind);
  const auto M = static_cast<std::size_t>(st.minimal_leading());
  auto lead = constant_extremal(kind, M);
  for (auto& v : lead.kappa.values) v += u(rng);
  for (auto& v : lead.tau.values) v += u(rng);
  SolveConfig cfg;
  cfg.length = std::max(length, M);
  try {
    auto inv = step_el_forward(L, lead, cfg);
    if (el_residual_max(L, inv) > 1e-9) return std::nullopt;
    const auto seed = kind == ActionKind::SL2Projective ? GroupElement<double>::identity(kind) : random_group_element(kind, rng, 1.0);
    auto path = path_from_invariants(inv, seed, 0);
    if (!well_conditioned(path)) return std::nullopt;
    return ExtremalFixture{L, std::move(inv), std::move(path)};
  } catch (const Error& e) {
    if (!recoverable(e)) throw;
    return std::nullopt;
  }
}

std::vector<ExtremalFixture> extremal_fixtures(ActionKind kind, std::size_t count, std::size_t length, std::uint64_t seed) {
  const auto family = stepping_family(kind);
  std::vector<ExtremalFixture> out;
  for (std::uint64_t draw = 0; out.size() < count; ++draw) {
    if (draw > 50 * count + 50) throw Error(ErrorCode::NonConvergence, "too few extremal fixtures could be generated");
    auto rng = trial_rng(seed, "extremal_fixture", draw);
    if (auto f = solver_extremal(family[draw % family.size()], kind, length, rng)) out.push_back(std::move(*f));
  }
  return out;
}

double path_distance(const LatticePath<double>& p, const LatticePath<double>& q) {
  const long lo = std::max(p.first(), q.first()), hi = std::min(p.end(), q.end());
  if (hi <= lo) return kInf;
  double d = 0.0;
  for (long n = lo; n < hi; ++n) {
    const auto a = p.point(n), b = q.point(n);
    d = std::max({d, std::abs(a.x - b.x), std::abs(a.y - b.y)});
  }
  return d;
}

bool PropertyReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.pass; });
}

PropertyReport run_property_suite(ActionKind kind, int trials, std::uint64_t seed) {
  PropertyReport report;
  const auto family = lagrangian_family(kind);
  const auto stepping = stepping_family(kind);

  {
    Tally eq("frame_equivariance", kind, 1e-9), mc("maurer_cartan", kind, 1e-10);
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, "frames", static_cast<std::uint64_t>(t));
      const auto p = random_path(kind, 8, rng);
      const auto r = verify_frame_identities(p, 1, rng);
      eq.add(std::max({r.equivariance, r.invariance, r.normalization, r.determinant}));
      mc.add(r.maurer_cartan);
    }
    report.results.push_back(eq.done());
    report.results.push_back(mc.done());
  }

  {
    Tally syz("syzygy", kind, 1e-9), curv("curvature_syzygy", kind, 1e-9);
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, "syzygy", static_cast<std::uint64_t>(t));
      const auto p = random_path(kind, 12, rng, true);
      double worst = 0.0;
      const auto [lo, hi] = syzygy_sites(p);
      for (long k = lo; k <= hi; ++k)
        for (double r : syzygy_residual(p, k)) worst = std::max(worst, std::abs(r));
      syz.add(worst);
      double cw = 0.0;
      const auto [clo, chi] = curvature_sites(p);
      for (long k = clo; k <= chi; ++k) cw = std::max(cw, curvature_residual(p, k));
      curv.add(cw);
    }
    report.results.push_back(syz.done());
    report.results.push_back(curv.done());
  }

  {
    Tally pair("variational_pairing", kind, 1e-9), oracle("oracle_classification", kind, 1.0);
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, "pairing", static_cast<std::uint64_t>(t));
      const auto& L = family[static_cast<std::size_t>(t) % family.size()];
      const auto p = random_path(kind, 14, rng);
      pair.add(pairing_check(L, with_interior_velocities(L, p, rng)));
      const auto rep = oracle_compare(L, p);
      oracle.add(static_cast<double>(std::count_if(rep.sites.begin(), rep.sites.end(), [](const OracleSite& s) { return s.flagged; })));
    }
    report.results.push_back(pair.done());
    report.results.push_back(oracle.done());
  }

  {
    Tally drift("conservation_drift", kind, 1e-8), perturbed("perturbed_drift", kind, 1e-3, true);
    Tally fi("first_integral", kind, 1e-8), rec("reconstruction_roundtrip", kind, 1e-7);
    Tally cycle("step_reconstruct_invariants", kind, 1e-7), oracle("extremal_oracle", kind, 1e-7);
    Tally grad("gradient_extremal_drift", kind, 1e-8);
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, "extremal", static_cast<std::uint64_t>(t));
      std::optional<ExtremalFixture> f;
      for (int attempt = 0; attempt < 50 && !f; ++attempt)
        f = solver_extremal(stepping[static_cast<std::size_t>(t + attempt) % stepping.size()], kind, 12, rng);
      if (!f) {
        for (Tally* x : {&drift, &fi, &rec, &cycle, &oracle, &grad}) x->add(kInf);
        perturbed.add(0.0);
        continue;
      }
      const auto cons = noether_constant(f->L, f->path);
      drift.add(relative_drift(cons));
      double lo = kInf, hi = -kInf;
      for (const auto& kn : cons.k_n) {
        const double v = first_integral(kind, kn);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      fi.add((hi - lo) / (1.0 + std::abs(hi)));
      try {
        perturbed.add(noether_constant(f->L, perturb_interior(f->path, 1e-1, rng)).drift);
      } catch (const Error& e) {
        if (!recoverable(e)) throw;
      }

      const auto in = reconstruction_input_from_path(f->L, f->path);
      const auto len = max_reconstruction_length(in);
      if (reconstruction_conditioning(in, len) >= kReconstructionConditioning) {
        const auto out = reconstruct(in, len);
        rec.add(path_distance(out.path, f->path));
        const auto back = invariants_of(out.path);
        double cd = 0.0;
        for (long n = back.kappa.first(); n < back.kappa.end(); ++n)
          cd = std::max(cd, std::abs(back.kappa.at(n) - f->inv.kappa.at(n)));
        for (long n = back.tau.first(); n < back.tau.end(); ++n) cd = std::max(cd, std::abs(back.tau.at(n) - f->inv.tau.at(n)));
        cycle.add(cd);
      }

      const auto orc = oracle_compare(f->L, f->path);
      oracle.add(orc.any_flagged ? kInf : orc.max_invariant);

      try {
        // 1e-2 relative to the closest pair of neighbouring points.
        const auto seeded = perturb_interior(f->path, 1e-2 * std::min(1.0, min_gap(f->path)), rng);
        const auto ex = extremal_path_by_gradient(f->L, seeded);
        grad.add(relative_drift(noether_constant(f->L, ex)));
      } catch (const Error& e) {
        if (!recoverable(e)) throw;
        grad.add(kInf);
      }
    }
    for (Tally* x : {&drift, &perturbed, &fi, &rec, &cycle, &oracle, &grad}) report.results.push_back(x->done());
  }
  return report;
}

}  // namespace noether
