#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <type_traits>

#include "noether/error.hpp"

namespace noether {

using Complex = std::complex<double>;

/// Global singularity threshold shared by every guarded division.
double epsilon() noexcept;
void set_epsilon(double eps);

/// Maps a scalar (double, complex, or nested dual) to the field element at its
/// bottom level. Specialized for duals in dual.hpp.
template <class T>
struct scalar_traits {
  using base_type = T;
  static constexpr bool is_dual = false;
  static T base(const T& x) { return x; }
};

template <class T>
using base_scalar_t = typename scalar_traits<T>::base_type;

template <class T>
inline constexpr bool is_complex_v = std::is_same_v<base_scalar_t<T>, Complex>;

template <class T>
auto base_value(const T& x) {
  return scalar_traits<T>::base(x);
}

template <class T>
double magnitude(const T& x) {
  return std::abs(base_value(x));
}

/// Real part of the base value; for real scalars this is the value itself.
template <class T>
double real_part(const T& x) {
  if constexpr (is_complex_v<T>) {
    return base_value(x).real();
  } else {
    return base_value(x);
  }
}

/// Throws `code` unless |x| exceeds the global epsilon.
template <class T>
const T& require_nonzero(const T& x, ErrorCode code, const char* what, std::optional<long> site = std::nullopt) {
  if (!(magnitude(x) > epsilon())) throw Error(code, std::string(what) + " vanishes", site);
  return x;
}

}  // namespace noether
