#include "noether/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace noether {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

double inf_norm(const Vec& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

// One EL equation: component c of the residual at site n.
struct Equation {
  int component;
  long site;
};

// One unknown: generator g at site n.
struct Unknown {
  int generator;
  long site;
};

// Invariant values stored per generator from site `first` on.
struct Table {
  ActionKind kind;
  long first;
  std::array<std::vector<double>, 2> vals;

  long end() const { return first + static_cast<long>(vals[0].size()); }
  double& at(int g, long n) { return vals[static_cast<std::size_t>(g)][static_cast<std::size_t>(n - first)]; }
  double at(int g, long n) const { return vals[static_cast<std::size_t>(g)][static_cast<std::size_t>(n - first)]; }

  // Sites lo..hi as an invariant sequence; sites past end() repeat the last value.
  template <class T>
  InvariantSequence<T> slice(long lo, long hi, const Unknown* seeded = nullptr) const {
    InvariantSequence<T> inv;
    inv.kind = kind;
    const int G = generator_count(kind);
    for (int g = 0; g < G; ++g) {
      Series<T>& s = inv.generator(g);
      s.offset = lo;
      for (long n = lo; n <= hi; ++n) {
        const double v = at(g, std::min(n, end() - 1));
        if (seeded && seeded->generator == g && seeded->site == n)
          s.values.push_back(T::variable(v));
        else
          s.values.push_back(T(v));
      }
    }
    return inv;
  }
};

template <>
InvariantSequence<double> Table::slice<double>(long lo, long hi, const Unknown*) const {
  InvariantSequence<double> inv;
  inv.kind = kind;
  for (int g = 0; g < generator_count(kind); ++g) {
    Series<double>& s = inv.generator(g);
    s.offset = lo;
    for (long n = lo; n <= hi; ++n) s.values.push_back(at(g, std::min(n, end() - 1)));
  }
  return inv;
}

struct Window {
  long lo, hi;
};

Window equation_window(const ElStructure& st, const std::vector<Equation>& eqs, long first) {
  long lo = eqs.front().site, hi = eqs.front().site;
  for (const auto& e : eqs) {
    lo = std::min(lo, e.site);
    hi = std::max(hi, e.site);
  }
  return {std::max(first, lo + st.window_lo), hi + st.window_hi};
}

Vec residuals(const InvariantLagrangian& L, const ElStructure& st, const Table& t, const std::vector<Equation>& eqs) {
  const auto w = equation_window(st, eqs, t.first);
  const EulerLagrangeSystem<double> sys(L, t.slice<double>(w.lo, w.hi));
  Vec F(static_cast<Eigen::Index>(eqs.size()));
  for (std::size_t i = 0; i < eqs.size(); ++i)
    F(static_cast<Eigen::Index>(i)) = sys.residual(eqs[i].site)[static_cast<std::size_t>(eqs[i].component)];
  return F;
}

Mat jacobian(const InvariantLagrangian& L, const ElStructure& st, const Table& t, const std::vector<Equation>& eqs,
             const std::vector<Unknown>& unknowns) {
  const auto w = equation_window(st, eqs, t.first);
  Mat J(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(unknowns.size()));
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    const EulerLagrangeSystem<D1> sys(L, t.slice<D1>(w.lo, w.hi, &unknowns[j]));
    for (std::size_t i = 0; i < eqs.size(); ++i)
      J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          sys.residual(eqs[i].site)[static_cast<std::size_t>(eqs[i].component)].tangent();
  }
  return J;
}

double table_scale(const Table& t) {
  double s = 1.0;
  for (const auto& v : t.vals)
    for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

// Damped minimum-norm Gauss-Newton on `unknowns` until `eqs` vanish.
void newton(const InvariantLagrangian& L, const ElStructure& st, Table& t, const std::vector<Equation>& eqs,
            const std::vector<Unknown>& unknowns, const SolveConfig& cfg, long site) {
  const double tol = cfg.tolerance * table_scale(t);
  Vec F = residuals(L, st, t, eqs);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const double norm = inf_norm(F);
    if (norm <= tol) return;
    const Mat J = jacobian(L, st, t, eqs, unknowns);
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(J);
    cod.setThreshold(1e-10);
    if (cod.rank() < J.rows()) throw Error(ErrorCode::SingularJacobian, "EL Jacobian is rank deficient", site);
    const Vec delta = cod.solve(-F);
    std::vector<double> saved;
    for (const auto& u : unknowns) saved.push_back(t.at(u.generator, u.site));
    double step = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40 && !accepted; ++h, step *= cfg.damping) {
      for (std::size_t j = 0; j < unknowns.size(); ++j)
        t.at(unknowns[j].generator, unknowns[j].site) = saved[j] + step * delta(static_cast<Eigen::Index>(j));
      try {
        const Vec trial = residuals(L, st, t, eqs);
        if (inf_norm(trial) < norm) {
          F = trial;
          accepted = true;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateInvariants && e.code() != ErrorCode::BranchPoint) throw;
      }
    }
    if (!accepted) {
      for (std::size_t j = 0; j < unknowns.size(); ++j) t.at(unknowns[j].generator, unknowns[j].site) = saved[j];
      // Roundoff floor: no step reduces the residual any further.
      if (norm <= 1e3 * tol) return;
      throw Error(ErrorCode::NewtonDivergence, "no damped Newton step reduces the EL residual", site);
    }
  }
  if (inf_norm(F) <= 1e3 * tol) return;
  throw Error(ErrorCode::NewtonDivergence, "EL residual did not converge", site);
}

}  // namespace

int ElStructure::minimal_leading() const {
  int m = -1;
  for (const auto& t : top)
    if (t) m = m < 0 ? *t - window_lo : std::min(m, *t - window_lo);
  return std::max(m, 1);
}

ElStructure el_structure(const InvariantLagrangian& L, ActionKind kind) {
  constexpr int W = 12;
  constexpr int N = 2 * W + 1;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(1.2, 2.2);
  Table t{kind, 0, {}};
  const int G = generator_count(kind);
  for (int g = 0; g < G; ++g)
    for (int i = 0; i < N; ++i) t.vals[static_cast<std::size_t>(g)].push_back(kind == ActionKind::SL2Projective ? -0.5 * u(rng) : u(rng));

  ElStructure st;
  const EulerLagrangeSystem<double> sys(L, t.slice<double>(0, N - 1));
  const auto [first, last] = sys.residual_sites();
  if (first > last) throw Error(ErrorCode::WindowOutOfRange, "Lagrangian window too wide for structure probe");
  st.window_lo = static_cast<int>(-first);
  st.window_hi = static_cast<int>((N - 1) - last);
  st.reach.assign(static_cast<std::size_t>(G), std::vector<std::optional<int>>(static_cast<std::size_t>(G)));
  st.top.assign(static_cast<std::size_t>(G), std::nullopt);
  st.lag.assign(static_cast<std::size_t>(G), std::nullopt);
  auto raise = [](std::optional<int>& slot, int v) { slot = slot ? std::max(*slot, v) : v; };
  for (int g = 0; g < G; ++g)
    for (int s = st.window_lo; s <= st.window_hi; ++s) {
      const Unknown seed{g, W + s};
      const EulerLagrangeSystem<D1> dsys(L, t.slice<D1>(0, N - 1, &seed));
      const auto r = dsys.residual(W);
      for (int c = 0; c < G; ++c)
        if (std::abs(r[static_cast<std::size_t>(c)].tangent()) > 1e-12) {
          raise(st.reach[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)], s);
          raise(st.top[static_cast<std::size_t>(c)], s);
        }
    }
  for (int c = 0; c < G; ++c)
    for (int g = 0; g < G; ++g) {
      const auto& r = st.reach[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)];
      if (r) raise(st.lag[static_cast<std::size_t>(g)], *r - *st.top[static_cast<std::size_t>(c)]);
    }
  return st;
}

InvariantSequence<double> step_el_forward(const InvariantLagrangian& L, const InvariantSequence<double>& leading,
                                          const SolveConfig& config) {
  if (!(config.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const ActionKind kind = leading.kind;
  const int G = generator_count(kind);
  Table t{kind, leading.kappa.first(), {}};
  for (int g = 0; g < G; ++g) {
    const auto& s = leading.generator(g);
    if (s.first() != t.first || s.size() != leading.kappa.size())
      throw Error(ErrorCode::DimensionMismatch, "leading kappa and tau must cover the same sites");
    t.vals[static_cast<std::size_t>(g)] = s.values;
  }
  const long M = static_cast<long>(leading.kappa.size());
  if (M == 0) throw Error(ErrorCode::InvalidArgument, "leading data is empty");
  if (config.length < leading.kappa.size()) throw Error(ErrorCode::InvalidArgument, "length shorter than leading data");

  const ElStructure st = el_structure(L, kind);

  // Equations that lie inside the leading data constrain it directly.
  std::vector<Equation> inside;
  for (int c = 0; c < G; ++c) {
    const auto& top = st.top[static_cast<std::size_t>(c)];
    if (!top) continue;
    for (long n = t.first - st.window_lo; n + *top <= t.first + M - 1; ++n) inside.push_back({c, n});
  }
  if (!inside.empty()) {
    std::vector<Unknown> all;
    for (int g = 0; g < G; ++g)
      for (long n = t.first; n < t.first + M; ++n) all.push_back({g, n});
    newton(L, st, t, inside, all, config, t.first);
  }

  // Step until every solved generator covers config.length sites.
  int deepest = 0;
  for (const auto& a : st.lag)
    if (a) deepest = std::min(deepest, *a);
  const long stop = t.first + static_cast<long>(config.length) - deepest;
  for (long m = t.first + M; m < stop; ++m) {
    for (auto& v : t.vals)
      if (!v.empty()) v.push_back(v.back());
    std::vector<Equation> eqs;
    for (int c = 0; c < G; ++c) {
      const auto& top = st.top[static_cast<std::size_t>(c)];
      if (top && m - *top + st.window_lo >= t.first) eqs.push_back({c, m - *top});
    }
    if (eqs.empty()) continue;
    std::vector<Unknown> unknowns;
    for (int g = 0; g < G; ++g)
      if (const auto& a = st.lag[static_cast<std::size_t>(g)]; a && m + *a >= t.first) unknowns.push_back({g, m + *a});
    const auto guess = [&](const Unknown& u) { return t.at(u.generator, u.site); };
    std::vector<double> start;
    for (const auto& u : unknowns) start.push_back(guess(u));
    // Start from the current values, then from a linear extrapolation.
    try {
      newton(L, st, t, eqs, unknowns, config, m);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NewtonDivergence && e.code() != ErrorCode::SingularJacobian) throw;
      bool extrapolated = false;
      for (std::size_t j = 0; j < unknowns.size(); ++j) {
        const auto& u = unknowns[j];
        t.at(u.generator, u.site) = start[j];
        if (u.site - 2 >= t.first) {
          t.at(u.generator, u.site) = 2.0 * t.at(u.generator, u.site - 1) - t.at(u.generator, u.site - 2);
          extrapolated = true;
        }
      }
      if (!extrapolated) throw;
      try {
        newton(L, st, t, eqs, unknowns, config, m);
      } catch (const Error&) {
        throw e;
      }
    }
  }
  for (auto& v : t.vals)
    if (v.size() > config.length) v.resize(config.length);
  return t.slice<double>(t.first, t.end() - 1);
}

namespace {

template <class T>
LatticePath<T> lift_path(const LatticePath<double>& path, const std::function<T(std::size_t coord, double v)>& make) {
  const int dim = point_dim(path.kind());
  std::vector<T> xs, ys;
  for (std::size_t i = 0; i < path.size(); ++i) {
    xs.push_back(make(i * static_cast<std::size_t>(dim), path.xs()[i]));
    if (dim == 2) ys.push_back(make(i * 2 + 1, path.ys()[i]));
  }
  return LatticePath<T>(path.kind(), path.offset(), std::move(xs), std::move(ys));
}

std::vector<double> flatten(const LatticePath<double>& p) {
  std::vector<double> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.push_back(p.xs()[i]);
    if (point_dim(p.kind()) == 2) out.push_back(p.ys()[i]);
  }
  return out;
}

LatticePath<double> unflatten(const LatticePath<double>& like, const std::vector<double>& u) {
  std::vector<double> xs, ys;
  const int dim = point_dim(like.kind());
  for (std::size_t i = 0; i < like.size(); ++i) {
    xs.push_back(u[i * static_cast<std::size_t>(dim)]);
    if (dim == 2) ys.push_back(u[i * 2 + 1]);
  }
  return LatticePath<double>(like.kind(), like.offset(), std::move(xs), std::move(ys));
}

double action_tangent(const InvariantLagrangian& L, const LatticePath<double>& path, std::size_t coord) {
  const auto lifted = lift_path<D1>(path, [&](std::size_t c, double v) { return c == coord ? D1::variable(v) : D1(v); });
  return action_sum(L, invariants_of(lifted)).tangent();
}

Vec free_gradient(const InvariantLagrangian& L, const LatticePath<double>& path, const std::vector<std::size_t>& free) {
  Vec g(static_cast<Eigen::Index>(free.size()));
  for (std::size_t i = 0; i < free.size(); ++i) g(static_cast<Eigen::Index>(i)) = action_tangent(L, path, free[i]);
  return g;
}

Mat free_hessian(const InvariantLagrangian& L, const LatticePath<double>& path, const std::vector<std::size_t>& free) {
  const auto n = static_cast<Eigen::Index>(free.size());
  Mat H(n, n);
  try {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) {
        const auto ci = free[static_cast<std::size_t>(i)], cj = free[static_cast<std::size_t>(j)];
        const auto lifted = lift_path<D2>(path, [&](std::size_t c, double v) {
          return D2(D1(v, c == ci ? 1.0 : 0.0), D1(c == cj ? 1.0 : 0.0, 0.0));
        });
        H(i, j) = H(j, i) = action_sum(L, invariants_of(lifted)).tangent().tangent();
      }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidArgument) throw;
    // No second-order evaluator: difference the dual gradient instead.
    auto u = flatten(path);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto cj = free[static_cast<std::size_t>(j)];
      const double h = 1e-6 * std::max(1.0, std::abs(u[cj]));
      const double keep = u[cj];
      u[cj] = keep + h;
      const Vec up = free_gradient(L, unflatten(path, u), free);
      u[cj] = keep - h;
      const Vec down = free_gradient(L, unflatten(path, u), free);
      u[cj] = keep;
      H.col(j) = (up - down) / (2.0 * h);
    }
    H = 0.5 * (H + H.transpose()).eval();
  }
  return H;
}

}  // namespace

std::vector<std::vector<double>> action_gradient(const InvariantLagrangian& L, const LatticePath<double>& path) {
  const int dim = point_dim(path.kind());
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    std::vector<double> row;
    for (int c = 0; c < dim; ++c) row.push_back(action_tangent(L, path, i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c)));
    out.push_back(std::move(row));
  }
  return out;
}

LatticePath<double> extremal_path_by_gradient(const InvariantLagrangian& L, const LatticePath<double>& seed,
                                              const SolveConfig& config) {
  const int dim = point_dim(seed.kind());
  const auto W = static_cast<std::size_t>(frame_window(seed.kind()));
  std::vector<std::size_t> free;
  for (std::size_t i = W; i + W < seed.size(); ++i)
    for (int c = 0; c < dim; ++c) free.push_back(i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c));
  invariants_of(seed);  // degenerate seeds fail here
  if (free.empty()) return seed;

  LatticePath<double> path = seed;
  Vec g = free_gradient(L, path, free);
  constexpr double kGradientTol = 1e-10;
  for (int it = 0; it < config.max_iterations; ++it) {
    const double norm = inf_norm(g);
    if (norm < kGradientTol) return path;
    const Mat H = free_hessian(L, path, free);
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(H);
    const Vec delta = cod.solve(-g);
    const auto u0 = flatten(path);
    double step = 1.0;
    bool accepted = false;
    std::optional<Error> degenerate;
    for (int h = 0; h < 40 && !accepted; ++h, step *= config.damping) {
      auto u = u0;
      for (std::size_t i = 0; i < free.size(); ++i) u[free[i]] += step * delta(static_cast<Eigen::Index>(i));
      try {
        const auto trial = unflatten(path, u);
        const Vec gt = free_gradient(L, trial, free);
        if (inf_norm(gt) < norm) {
          path = trial;
          g = gt;
          accepted = true;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateWindow && e.code() != ErrorCode::NegativeRadicand) throw;
        degenerate = e;
      }
    }
    if (!accepted) {
      if (norm < 1e-8) return path;
      if (degenerate) throw *degenerate;
      throw Error(ErrorCode::NonConvergence, "no damped Newton step reduces the action gradient");
    }
  }
  if (inf_norm(g) < kGradientTol) return path;
  throw Error(ErrorCode::NonConvergence, "action gradient did not converge");
}

OracleReport oracle_compare(const InvariantLagrangian& L, const LatticePath<double>& path) {
  OracleReport report;
  const int dim = point_dim(path.kind());
  const EulerLagrangeSystem<double> sys(L, invariants_of(path));
  const auto [first, last] = sys.residual_sites();
  auto u = flatten(path);
  auto total = [&](const std::vector<double>& v) { return action_sum(L, invariants_of(unflatten(path, v))); };
  for (long n = first; n <= last; ++n) {
    OracleSite site;
    site.site = n;
    const auto idx = static_cast<std::size_t>(n - path.first());
    for (int c = 0; c < dim; ++c) {
      const auto coord = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c);
      const double keep = u[coord];
      const double h = 1e-6 * std::max(1.0, std::abs(keep));
      u[coord] = keep + h;
      const double up = total(u);
      u[coord] = keep - h;
      const double down = total(u);
      u[coord] = keep;
      site.euler_u.push_back((up - down) / (2.0 * h));
    }
    site.invariant = sys.residual(n);
    const auto rho = frame_at(path, n);
    std::vector<double> expected;
    if (path.kind() == ActionKind::SL2Projective) {
      const double den = rho.c() * path.point(n).x + rho.d();
      expected.push_back(site.invariant[0] / (den * den));
    } else {
      const auto& A = rho.linear();
      expected.push_back(site.invariant[0] * A(0, 0) + site.invariant[1] * A(1, 0));
      expected.push_back(site.invariant[0] * A(0, 1) + site.invariant[1] * A(1, 1));
    }
    double eu = 0.0, iv = 0.0;
    for (std::size_t c = 0; c < expected.size(); ++c) {
      site.pairing = std::max(site.pairing, std::abs(site.euler_u[c] - expected[c]));
      eu = std::max(eu, std::abs(site.euler_u[c]));
    }
    for (double r : site.invariant) iv = std::max(iv, std::abs(r));
    site.flagged = (eu < 1e-7 && iv >= 1e-3) || (iv < 1e-7 && eu >= 1e-3);
    report.max_euler_u = std::max(report.max_euler_u, eu);
    report.max_invariant = std::max(report.max_invariant, iv);
    report.max_pairing = std::max(report.max_pairing, site.pairing);
    report.any_flagged = report.any_flagged || site.flagged;
    report.sites.push_back(std::move(site));
  }
  return report;
}

}  // namespace noether
