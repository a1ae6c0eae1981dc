#pragma once

// Difference moving frames, generating invariants and Maurer-Cartan matrices.
// Invariants kappa_k, tau_k are anchored at the left end of their window, so
// kappa_k uses points k..k+2 (k..k+3 for the cross ratio) and rho_k uses
// points k..k+frame_window-1.

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "noether/group.hpp"
#include "noether/series.hpp"

namespace noether {

template <class T>
class LatticePath {
 public:
  LatticePath() = default;

  LatticePath(ActionKind kind, long offset, std::vector<T> xs, std::vector<T> ys = {})
      : kind_(kind), offset_(offset), xs_(std::move(xs)), ys_(std::move(ys)) {
    if (point_dim(kind) == 2 && ys_.size() != xs_.size())
      throw Error(ErrorCode::DimensionMismatch, "planar path needs matching x and y coordinates");
    if (point_dim(kind) == 1 && !ys_.empty())
      throw Error(ErrorCode::DimensionMismatch, "projective path has a single coordinate");
  }

  ActionKind kind() const { return kind_; }
  long offset() const { return offset_; }
  std::size_t size() const { return xs_.size(); }
  long first() const { return offset_; }
  long end() const { return offset_ + static_cast<long>(xs_.size()); }
  bool has(long k) const { return k >= first() && k < end(); }

  const std::vector<T>& xs() const { return xs_; }
  const std::vector<T>& ys() const { return ys_; }
  const std::vector<T>& vxs() const { return vxs_; }
  const std::vector<T>& vys() const { return vys_; }

  Point<T> point(long k) const {
    const auto i = index(k);
    return {xs_[i], point_dim(kind_) == 2 ? ys_[i] : T(0.0)};
  }

  bool has_velocities() const { return !vxs_.empty(); }

  Point<T> velocity(long k) const {
    if (!has_velocities()) throw Error(ErrorCode::InvalidArgument, "path carries no velocities");
    const auto i = index(k);
    return {vxs_[i], point_dim(kind_) == 2 ? vys_[i] : T(0.0)};
  }

  LatticePath& set_velocities(std::vector<T> vx, std::vector<T> vy = {}) {
    if (vx.size() != xs_.size() || (point_dim(kind_) == 2 && vy.size() != xs_.size()))
      throw Error(ErrorCode::DimensionMismatch, "velocity count must match point count");
    vxs_ = std::move(vx);
    vys_ = std::move(vy);
    return *this;
  }

  template <class U, class F>
  LatticePath<U> map_points(F&& f) const {
    std::vector<U> x, y;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      const Point<U> p = f(Point<T>{xs_[i], point_dim(kind_) == 2 ? ys_[i] : T(0.0)});
      x.push_back(p.x);
      if (point_dim(kind_) == 2) y.push_back(p.y);
    }
    return LatticePath<U>(kind_, offset_, std::move(x), std::move(y));
  }

 private:
  std::size_t index(long k) const {
    if (!has(k)) throw Error(ErrorCode::WindowOutOfRange, "point index outside path", k);
    return static_cast<std::size_t>(k - offset_);
  }

  ActionKind kind_ = ActionKind::SL2Linear;
  long offset_ = 0;
  std::vector<T> xs_, ys_;
  std::vector<T> vxs_, vys_;
};

/// Path deformed to first order along its velocities: u + t u' as duals.
template <class T>
LatticePath<Dual<T>> lift_along_velocities(const LatticePath<T>& path) {
  std::vector<Dual<T>> x, y;
  for (long k = path.first(); k < path.end(); ++k) {
    const auto p = path.point(k);
    const auto v = path.velocity(k);
    x.emplace_back(p.x, v.x);
    if (point_dim(path.kind()) == 2) y.emplace_back(p.y, v.y);
  }
  return LatticePath<Dual<T>>(path.kind(), path.offset(), std::move(x), std::move(y));
}

/// Generating invariants: kappa (and tau for the planar actions).
template <class T>
struct InvariantSequence {
  ActionKind kind = ActionKind::SL2Linear;
  Series<T> kappa;
  Series<T> tau;  // empty for SL2Projective

  const T& k(long n) const { return kappa.at(n); }
  const T& t(long n) const { return tau.at(n); }

  /// Generator g in the order used by the syzygy rows: (kappa, tau) for
  /// SL2Linear, (tau, kappa) for SA2, (kappa) for the projective action.
  const Series<T>& generator(int g) const {
    if (kind == ActionKind::SA2Linear) return g == 0 ? tau : kappa;
    return g == 0 ? kappa : tau;
  }
  Series<T>& generator(int g) {
    if (kind == ActionKind::SA2Linear) return g == 0 ? tau : kappa;
    return g == 0 ? kappa : tau;
  }
};

namespace detail {

template <class T>
T cross_ratio(const T& x0, const T& x1, const T& x2, const T& x3) {
  return ((x0 - x1) * (x2 - x3)) / ((x0 - x3) * (x2 - x1));
}

template <class T>
T sa2_area(const Point<T>& p0, const Point<T>& p1, const Point<T>& p2) {
  return (p1.y - p2.y) * p0.x + (p2.y - p0.y) * p1.x + (p0.y - p1.y) * p2.x;
}

template <class T>
void require_real_positive(const T& radicand, ErrorCode code, const char* what, std::optional<long> site) {
  if constexpr (!is_complex_v<T>) {
    if (!(real_part(radicand) > 0.0)) throw Error(code, std::string(what) + " is not positive", site);
  }
}

}  // namespace detail

template <class T>
InvariantSequence<T> invariants_of(const LatticePath<T>& path) {
  InvariantSequence<T> inv;
  inv.kind = path.kind();
  const long first = path.first();
  const long end = path.end();
  inv.kappa.offset = first;
  inv.tau.offset = first;
  switch (path.kind()) {
    case ActionKind::SL2Linear: {
      for (long k = first; k + 1 < end; ++k) {
        const auto p0 = path.point(k), p1 = path.point(k + 1);
        const T tau = p0.x * p1.y - p1.x * p0.y;
        require_nonzero(tau, ErrorCode::DegenerateWindow, "tau", k);
        inv.tau.values.push_back(tau);
      }
      for (long k = first; k + 2 < end; ++k) {
        const auto p0 = path.point(k), p2 = path.point(k + 2);
        inv.kappa.values.push_back((p0.x * p2.y - p2.x * p0.y) / inv.tau.at(k + 1));
      }
      break;
    }
    case ActionKind::SA2Linear: {
      for (long k = first; k + 2 < end; ++k) {
        const T kappa = detail::sa2_area(path.point(k), path.point(k + 1), path.point(k + 2));
        require_nonzero(kappa, ErrorCode::DegenerateWindow, "kappa (collinear triple)", k);
        inv.kappa.values.push_back(kappa);
      }
      for (long k = first; k + 3 < end; ++k) {
        const auto p0 = path.point(k), p1 = path.point(k + 1), p3 = path.point(k + 3);
        const T num = p0.x * (p1.y - p3.y) + p1.x * (p3.y - p0.y) + p3.x * (p0.y - p1.y);
        inv.tau.values.push_back(num / inv.kappa.at(k + 1));
      }
      break;
    }
    case ActionKind::SL2Projective: {
      for (long k = first; k + 2 < end; ++k) {
        const T x0 = path.point(k).x, x1 = path.point(k + 1).x, x2 = path.point(k + 2).x;
        require_nonzero(T(x0 - x1), ErrorCode::DegenerateWindow, "x_k - x_{k+1}", k);
        require_nonzero(T(x1 - x2), ErrorCode::DegenerateWindow, "x_{k+1} - x_{k+2}", k);
        require_nonzero(T(x0 - x2), ErrorCode::DegenerateWindow, "x_k - x_{k+2}", k);
      }
      for (long k = first; k + 3 < end; ++k) {
        const T x0 = path.point(k).x, x1 = path.point(k + 1).x, x2 = path.point(k + 2).x, x3 = path.point(k + 3).x;
        require_nonzero(T(x0 - x3), ErrorCode::DegenerateWindow, "x_k - x_{k+3}", k);
        inv.kappa.values.push_back(detail::cross_ratio(x0, x1, x2, x3));
      }
      break;
    }
  }
  return inv;
}

/// Right moving frame rho_k mapping the window at k to its normal form:
/// SL2Linear: u_k -> (1,0), x-part of u_{k+1} -> 0;
/// SA2: u_k -> (0,0), u_{k+1} -> (1,0), x-part of u_{k+2} -> 0;
/// projective: (x_k, x_{k+1}, x_{k+2}) -> (1/2, 0, -1/2).
/// In real arithmetic the projective frame takes the positive root and
/// requires (x0-x2)/((x0-x1)(x1-x2)) > 0; complex arithmetic uses the principal root.
template <class T>
GroupElement<T> frame_at(const LatticePath<T>& path, long k) {
  using std::sqrt;
  const ActionKind kind = path.kind();
  switch (kind) {
    case ActionKind::SL2Linear: {
      const auto p0 = path.point(k), p1 = path.point(k + 1);
      const T tau = p0.x * p1.y - p1.x * p0.y;
      require_nonzero(tau, ErrorCode::DegenerateWindow, "tau", k);
      Matrix<T> g(2, 2);
      g(0, 0) = p1.y / tau;
      g(0, 1) = -p1.x / tau;
      g(1, 0) = -p0.y;
      g(1, 1) = p0.x;
      return GroupElement<T>::from_parts(kind, g);
    }
    case ActionKind::SA2Linear: {
      const auto p0 = path.point(k), p1 = path.point(k + 1), p2 = path.point(k + 2);
      const T kappa = detail::sa2_area(p0, p1, p2);
      require_nonzero(kappa, ErrorCode::DegenerateWindow, "kappa (collinear triple)", k);
      Matrix<T> g(2, 2);
      g(0, 0) = (p2.y - p0.y) / kappa;
      g(0, 1) = (p0.x - p2.x) / kappa;
      g(1, 0) = p0.y - p1.y;
      g(1, 1) = p1.x - p0.x;
      const T alpha = (p2.x * p0.y - p0.x * p2.y) / kappa;
      const T beta = p0.x * p1.y - p1.x * p0.y;
      return GroupElement<T>::from_parts(kind, g, alpha, beta);
    }
    case ActionKind::SL2Projective: {
      const T x0 = path.point(k).x, x1 = path.point(k + 1).x, x2 = path.point(k + 2).x;
      const T d01 = x0 - x1, d12 = x1 - x2, d02 = x0 - x2;
      require_nonzero(d01, ErrorCode::DegenerateWindow, "x_k - x_{k+1}", k);
      require_nonzero(d12, ErrorCode::DegenerateWindow, "x_{k+1} - x_{k+2}", k);
      require_nonzero(d02, ErrorCode::DegenerateWindow, "x_k - x_{k+2}", k);
      const T radicand = d02 / (d01 * d12);
      detail::require_real_positive(radicand, ErrorCode::NegativeRadicand, "frame radicand", k);
      const T s = sqrt(radicand);
      Matrix<T> g(2, 2);
      g(0, 0) = s * T(0.5);
      g(0, 1) = -s * x1 * T(0.5);
      g(1, 0) = s * (x2 - T(2.0) * x1 + x0) / d02;
      g(1, 1) = s * (x0 * x1 - T(2.0) * x0 * x2 + x1 * x2) / d02;
      return GroupElement<T>::from_parts(kind, g);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown action");
}

/// K_k = rho_{k+1} rho_k^{-1} written in terms of the invariants at k.
template <class T>
GroupElement<T> maurer_cartan(const InvariantSequence<T>& inv, long k) {
  using std::sqrt;
  switch (inv.kind) {
    case ActionKind::SL2Linear: {
      const T& kappa = inv.k(k);
      const T& tau = inv.t(k);
      require_nonzero(tau, ErrorCode::DegenerateInvariants, "tau", k);
      Matrix<T> g(2, 2);
      g(0, 0) = kappa;
      g(0, 1) = T(1.0) / tau;
      g(1, 0) = -tau;
      g(1, 1) = T(0.0);
      return GroupElement<T>::from_parts(inv.kind, g);
    }
    case ActionKind::SA2Linear: {
      const T& kappa = inv.k(k);
      const T& tau = inv.t(k);
      require_nonzero(kappa, ErrorCode::DegenerateInvariants, "kappa", k);
      Matrix<T> g(2, 2);
      g(0, 0) = tau;
      g(0, 1) = (T(1.0) + tau) / kappa;
      g(1, 0) = -kappa;
      g(1, 1) = T(-1.0);
      return GroupElement<T>::from_parts(inv.kind, g, -tau, kappa);
    }
    case ActionKind::SL2Projective: {
      const T& kappa = inv.k(k);
      require_nonzero(kappa, ErrorCode::DegenerateInvariants, "kappa", k);
      const T km1 = kappa - T(1.0);
      require_nonzero(km1, ErrorCode::DegenerateInvariants, "kappa - 1", k);
      const T radicand = km1 / (T(4.0) * kappa);
      detail::require_real_positive(radicand, ErrorCode::DegenerateInvariants, "(kappa-1)/(4 kappa)", k);
      const T r = sqrt(radicand);
      Matrix<T> g(2, 2);
      g(0, 0) = r;
      g(0, 1) = r * T(0.5);
      g(1, 0) = -r * (T(6.0) * kappa + T(2.0)) / km1;
      g(1, 1) = r;
      return GroupElement<T>::from_parts(inv.kind, g);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown action");
}

/// First-order differential invariants at site k. Planar actions return
/// (sigma^x, sigma^y) = linear part of rho_k applied to u_k'. The projective
/// action returns sigma^x_j = x'_{k+j} / (c_k x_{k+j} + d_k)^2 for j = 0, 1, 2.
template <class T>
std::vector<T> sigma_at(const LatticePath<T>& path, long k) {
  const auto rho = frame_at(path, k);
  if (path.kind() == ActionKind::SL2Projective) {
    std::vector<T> out;
    for (long j = 0; j < 3; ++j) {
      const auto v = act_velocity(rho, path.point(k + j), path.velocity(k + j));
      out.push_back(v.x);
    }
    return out;
  }
  const auto v = act_velocity(rho, path.point(k), path.velocity(k));
  return {v.x, v.y};
}

/// Inverse of the frame construction: given rho_first and the Maurer-Cartan
/// matrices, rebuild the path points p_k = rho_k^{-1} applied to the normal form.
/// Produces one point per frame plus the trailing points fixed by the last frame.
template <class T>
LatticePath<T> path_from_invariants(const InvariantSequence<T>& inv, const GroupElement<T>& seed, long first);

/// Samples a group element with entries of moderate size for property checks.
GroupElement<double> random_group_element(ActionKind kind, std::mt19937_64& rng, double spread = 2.0);

struct FrameIdentityReport {
  int trials = 0;
  double equivariance = 0.0;    // max |rho(g.z) g - rho(z)|
  double invariance = 0.0;      // max relative change of kappa, tau
  double maurer_cartan = 0.0;   // max |rho_{k+1} rho_k^{-1} - K_k|
  double normalization = 0.0;   // max deviation from the normal form
  double determinant = 0.0;     // max |det - 1| over frames and K
};

/// Runs the frame identities on `path` under `trials` random group elements.
/// Elements whose image leaves the frame domain are resampled; for the
/// projective action g is sign-normalized so c x + d > 0 along the path.
FrameIdentityReport verify_frame_identities(const LatticePath<double>& path, int trials, std::mt19937_64& rng);

LatticePath<double> transform_path(const LatticePath<double>& path, const GroupElement<double>& g);

}  // namespace noether

#include "noether/frames_impl.hpp"
