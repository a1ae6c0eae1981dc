#pragma once

// The three group actions: linear SL(2) on the plane, equi-affine SA(2) on the
// plane, and SL(2) acting on the line by Moebius transformations.

#include <string_view>

#include "noether/dual.hpp"
#include "noether/matrix.hpp"

namespace noether {

enum class ActionKind { SL2Linear, SA2Linear, SL2Projective };

std::string_view to_string(ActionKind kind);
ActionKind action_from_string(std::string_view tag);

constexpr int point_dim(ActionKind k) { return k == ActionKind::SL2Projective ? 1 : 2; }
constexpr int group_dim(ActionKind k) { return k == ActionKind::SA2Linear ? 5 : 3; }
/// Points needed to pin down one frame.
constexpr int frame_window(ActionKind k) { return k == ActionKind::SL2Linear ? 2 : 3; }
/// Number of generating difference invariants (and of sigma components).
constexpr int generator_count(ActionKind k) { return k == ActionKind::SL2Projective ? 1 : 2; }

template <class T>
struct Point {
  T x{};
  T y{};  // unused by the projective action
};

/// An SL(2) element, optionally extended by a translation for SA(2). The SL(2)
/// part is stored separately so ad - bc = 1 is checked once at construction.
template <class T>
class GroupElement {
 public:
  static GroupElement identity(ActionKind kind) {
    return GroupElement(kind, Matrix<T>::identity(2), T(0.0), T(0.0));
  }

  /// Validates ad - bc = 1 within 1e-10.
  static GroupElement make(ActionKind kind, const T& a, const T& b, const T& c, const T& d, const T& alpha = T(0.0),
                           const T& beta = T(0.0)) {
    Matrix<T> g(2, 2);
    g(0, 0) = a;
    g(0, 1) = b;
    g(1, 0) = c;
    g(1, 1) = d;
    if (magnitude(determinant(g) - T(1.0)) > 1e-10)
      throw Error(ErrorCode::InvalidArgument, "SL(2) part must have unit determinant");
    if (kind != ActionKind::SA2Linear && (magnitude(alpha) != 0.0 || magnitude(beta) != 0.0))
      throw Error(ErrorCode::KindMismatch, "translation supplied for an SL(2) action");
    return GroupElement(kind, g, alpha, beta);
  }

  /// Builds from a trusted closed form without the determinant check; used by
  /// frame formulas whose determinant is identically one.
  static GroupElement from_parts(ActionKind kind, Matrix<T> g, T alpha = T(0.0), T beta = T(0.0)) {
    return GroupElement(kind, std::move(g), std::move(alpha), std::move(beta));
  }

  ActionKind kind() const { return kind_; }
  const Matrix<T>& linear() const { return g_; }
  const T& a() const { return g_(0, 0); }
  const T& b() const { return g_(0, 1); }
  const T& c() const { return g_(1, 0); }
  const T& d() const { return g_(1, 1); }
  const T& alpha() const { return alpha_; }
  const T& beta() const { return beta_; }

  /// 2x2 for the SL(2) actions, 3x3 [[a,b,alpha],[c,d,beta],[0,0,1]] for SA(2).
  Matrix<T> standard_rep() const {
    if (kind_ != ActionKind::SA2Linear) return g_;
    Matrix<T> m = Matrix<T>::identity(3);
    m.set_block(0, 0, g_);
    m(0, 2) = alpha_;
    m(1, 2) = beta_;
    return m;
  }

  static GroupElement from_standard_rep(ActionKind kind, const Matrix<T>& m) {
    if (kind == ActionKind::SA2Linear) return GroupElement(kind, m.block(0, 0, 2, 2), m(0, 2), m(1, 2));
    return GroupElement(kind, m, T(0.0), T(0.0));
  }

 private:
  GroupElement(ActionKind kind, Matrix<T> g, T alpha, T beta)
      : kind_(kind), g_(std::move(g)), alpha_(std::move(alpha)), beta_(std::move(beta)) {}

  ActionKind kind_;
  Matrix<T> g_;
  T alpha_;
  T beta_;
};

template <class T>
GroupElement<T> compose(const GroupElement<T>& g, const GroupElement<T>& h) {
  if (g.kind() != h.kind()) throw Error(ErrorCode::KindMismatch, "compose across action kinds");
  return GroupElement<T>::from_standard_rep(g.kind(), g.standard_rep() * h.standard_rep());
}

template <class T>
GroupElement<T> inverse(const GroupElement<T>& g) {
  Matrix<T> inv(2, 2);
  inv(0, 0) = g.d();
  inv(0, 1) = -g.b();
  inv(1, 0) = -g.c();
  inv(1, 1) = g.a();
  if (g.kind() != ActionKind::SA2Linear) return GroupElement<T>::from_parts(g.kind(), inv);
  const T alpha = -(inv(0, 0) * g.alpha() + inv(0, 1) * g.beta());
  const T beta = -(inv(1, 0) * g.alpha() + inv(1, 1) * g.beta());
  return GroupElement<T>::from_parts(g.kind(), inv, alpha, beta);
}

template <class T>
Point<T> act(const GroupElement<T>& g, const Point<T>& p) {
  switch (g.kind()) {
    case ActionKind::SL2Linear:
      return {g.a() * p.x + g.b() * p.y, g.c() * p.x + g.d() * p.y};
    case ActionKind::SA2Linear:
      return {g.a() * p.x + g.b() * p.y + g.alpha(), g.c() * p.x + g.d() * p.y + g.beta()};
    case ActionKind::SL2Projective: {
      const T den = g.c() * p.x + g.d();
      require_nonzero(den, ErrorCode::ProjectivePole, "c*x + d");
      return {(g.a() * p.x + g.b()) / den, T(0.0)};
    }
  }
  return p;
}

/// Induced action on a tangent vector at p. Translations drop out; the
/// projective action scales by (c x + d)^-2.
template <class T>
Point<T> act_velocity(const GroupElement<T>& g, const Point<T>& p, const Point<T>& v) {
  switch (g.kind()) {
    case ActionKind::SL2Linear:
    case ActionKind::SA2Linear:
      return {g.a() * v.x + g.b() * v.y, g.c() * v.x + g.d() * v.y};
    case ActionKind::SL2Projective: {
      const T den = g.c() * p.x + g.d();
      require_nonzero(den, ErrorCode::ProjectivePole, "c*x + d");
      return {v.x / (den * den), T(0.0)};
    }
  }
  return v;
}

/// Adjoint representation acting on row vectors from the right, columns
/// ordered (a, b, c[, alpha, beta]). Ad(g h) = Ad(g) Ad(h).
template <class T>
Matrix<T> adjoint_matrix(const GroupElement<T>& g) {
  const T &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d();
  Matrix<T> sl(3, 3);
  sl(0, 0) = a * d + b * c;
  sl(0, 1) = -(a * c);
  sl(0, 2) = b * d;
  sl(1, 0) = T(-2.0) * a * b;
  sl(1, 1) = a * a;
  sl(1, 2) = -(b * b);
  sl(2, 0) = T(2.0) * c * d;
  sl(2, 1) = -(c * c);
  sl(2, 2) = d * d;
  if (g.kind() != ActionKind::SA2Linear) return sl;

  const T &al = g.alpha(), &be = g.beta();
  Matrix<T> ad(5, 5);
  ad.set_block(0, 0, sl);
  ad(3, 0) = -al * (a * d + b * c) + T(2.0) * a * b * be;
  ad(3, 1) = a * (c * al - a * be);
  ad(3, 2) = b * (b * be - d * al);
  ad(3, 3) = a;
  ad(3, 4) = b;
  ad(4, 0) = be * (a * d + b * c) - T(2.0) * c * d * al;
  ad(4, 1) = c * (c * al - a * be);
  ad(4, 2) = d * (b * be - d * al);
  ad(4, 3) = c;
  ad(4, 4) = d;
  return ad;
}

/// Matrix of infinitesimals: entry (alpha, r) is the coefficient of the
/// alpha-th coordinate field in the r-th infinitesimal generator at p.
template <class T>
Matrix<T> characteristics(ActionKind kind, const Point<T>& p) {
  switch (kind) {
    case ActionKind::SL2Linear: {
      Matrix<T> m(2, 3);
      m(0, 0) = p.x;
      m(0, 1) = p.y;
      m(1, 0) = -p.y;
      m(1, 2) = p.x;
      return m;
    }
    case ActionKind::SA2Linear: {
      Matrix<T> m(2, 5);
      m(0, 0) = p.x;
      m(0, 1) = p.y;
      m(0, 3) = T(1.0);
      m(1, 0) = -p.y;
      m(1, 2) = p.x;
      m(1, 4) = T(1.0);
      return m;
    }
    case ActionKind::SL2Projective: {
      Matrix<T> m(1, 3);
      m(0, 0) = T(2.0) * p.x;
      m(0, 1) = T(1.0);
      m(0, 2) = -(p.x * p.x);
      return m;
    }
  }
  return {};
}

/// Image of the first point of a window under its own frame.
template <class T>
Point<T> normalization_point(ActionKind kind) {
  switch (kind) {
    case ActionKind::SL2Linear: return {T(1.0), T(0.0)};
    case ActionKind::SA2Linear: return {T(0.0), T(0.0)};
    case ActionKind::SL2Projective: return {T(0.5), T(0.0)};
  }
  return {};
}

template <class T>
Matrix<T> characteristics_invariantized(ActionKind kind) {
  return characteristics(kind, normalization_point<T>(kind));
}

}  // namespace noether
