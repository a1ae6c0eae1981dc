#pragma once

// Template definitions for frames.hpp.

namespace noether {

namespace detail {

template <class T>
bool has_maurer_cartan(const InvariantSequence<T>& inv, long k) {
  if (!inv.kappa.has(k)) return false;
  return inv.kind == ActionKind::SL2Projective || inv.tau.has(k);
}

}  // namespace detail

template <class T>
LatticePath<T> path_from_invariants(const InvariantSequence<T>& inv, const GroupElement<T>& seed, long first) {
  if (seed.kind() != inv.kind) throw Error(ErrorCode::KindMismatch, "seed frame and invariants disagree on the action");
  const ActionKind kind = inv.kind;
  std::vector<Point<T>> pts;
  GroupElement<T> rho = seed;
  long k = first;
  for (;; ++k) {
    pts.push_back(act(inverse(rho), normalization_point<T>(kind)));
    if (!detail::has_maurer_cartan(inv, k)) break;
    rho = compose(maurer_cartan(inv, k), rho);
  }
  const auto rho_inv = inverse(rho);
  switch (kind) {
    case ActionKind::SL2Linear:
      if (inv.tau.has(k)) pts.push_back(act(rho_inv, Point<T>{T(0.0), inv.t(k)}));
      break;
    case ActionKind::SA2Linear:
      pts.push_back(act(rho_inv, Point<T>{T(1.0), T(0.0)}));
      if (inv.kappa.has(k)) pts.push_back(act(rho_inv, Point<T>{T(0.0), inv.k(k)}));
      break;
    case ActionKind::SL2Projective:
      pts.push_back(act(rho_inv, Point<T>{T(0.0), T(0.0)}));
      pts.push_back(act(rho_inv, Point<T>{T(-0.5), T(0.0)}));
      break;
  }
  std::vector<T> xs, ys;
  for (const auto& p : pts) {
    xs.push_back(p.x);
    if (point_dim(kind) == 2) ys.push_back(p.y);
  }
  return LatticePath<T>(kind, first, std::move(xs), std::move(ys));
}

}  // namespace noether
