#pragma once

// Forward-mode dual numbers a + b*eps with eps^2 = 0. Nesting (Dual<Dual<double>>)
// gives mixed second derivatives; the base field may be real or complex.

#include <cmath>
#include <complex>
#include <concepts>
#include <ostream>
#include <type_traits>

#include "noether/error.hpp"
#include "noether/scalar.hpp"

namespace noether {

template <class T>
class Dual {
 public:
  using value_type = T;

  constexpr Dual() : primal_(), tangent_() {}
  constexpr Dual(const T& primal, const T& tangent) : primal_(primal), tangent_(tangent) {}

  // Lifts constants of any lower level (double, complex, inner duals).
  template <class U>
    requires(std::is_constructible_v<T, const U&> && !std::is_same_v<std::remove_cvref_t<U>, Dual>)
  constexpr Dual(const U& value) : primal_(T(value)), tangent_() {}  // NOLINT(implicit)

  static constexpr Dual variable(const T& x) { return Dual(x, T(1.0)); }

  constexpr const T& primal() const { return primal_; }
  constexpr const T& tangent() const { return tangent_; }

  friend constexpr Dual operator+(const Dual& a, const Dual& b) {
    return {a.primal_ + b.primal_, a.tangent_ + b.tangent_};
  }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) {
    return {a.primal_ - b.primal_, a.tangent_ - b.tangent_};
  }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.primal_ * b.primal_, a.primal_ * b.tangent_ + a.tangent_ * b.primal_};
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    const T inv = T(1.0) / b.primal_;
    const T q = a.primal_ * inv;
    return {q, (a.tangent_ - q * b.tangent_) * inv};
  }
  friend constexpr Dual operator-(const Dual& a) { return {-a.primal_, -a.tangent_}; }
  friend constexpr Dual operator+(const Dual& a) { return a; }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  // Equality compares primal parts only; used by guards, not by algebra.
  friend constexpr bool operator==(const Dual& a, const Dual& b) { return a.primal_ == b.primal_; }

  friend std::ostream& operator<<(std::ostream& os, const Dual& d) {
    return os << d.primal_ << " + " << d.tangent_ << "e";
  }

 private:
  T primal_;
  T tangent_;
};

template <class T>
struct scalar_traits<Dual<T>> {
  using base_type = typename scalar_traits<T>::base_type;
  static constexpr bool is_dual = true;
  static base_type base(const Dual<T>& x) { return scalar_traits<T>::base(x.primal()); }
};

/// sqrt(a + b eps) = sqrt(a) + b / (2 sqrt(a)) eps. Undefined at a = 0 when b != 0.
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  if (magnitude(x.primal()) == 0.0) {
    if (magnitude(x.tangent()) != 0.0) throw Error(ErrorCode::BranchPoint, "sqrt evaluated at zero with nonzero tangent");
    return Dual<T>(T(0.0), T(0.0));
  }
  const T r = sqrt(x.primal());
  return Dual<T>(r, x.tangent() / (T(2.0) * r));
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  const T e = exp(x.primal());
  return Dual<T>(e, e * x.tangent());
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return Dual<T>(log(x.primal()), x.tangent() / x.primal());
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return Dual<T>(sin(x.primal()), cos(x.primal()) * x.tangent());
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return Dual<T>(cos(x.primal()), -sin(x.primal()) * x.tangent());
}

/// Integer power by repeated multiplication, exact on duals.
template <class T>
T ipow(const T& x, int n) {
  if (n < 0) return T(1.0) / ipow(x, -n);
  T result(1.0);
  T b = x;
  while (n > 0) {
    if (n & 1) result = result * b;
    b = b * b;
    n >>= 1;
  }
  return result;
}

/// Tangent of f(x + eps). `f` must be generic over the scalar type.
template <class F, class S>
S derivative_of(F&& f, const S& x) {
  return f(Dual<S>::variable(x)).tangent();
}

}  // namespace noether
