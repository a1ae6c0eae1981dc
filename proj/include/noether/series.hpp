#pragma once

#include <string>
#include <utility>
#include <vector>

#include "noether/error.hpp"

namespace noether {

/// Values indexed by absolute lattice site n in [offset, offset + size).
template <class T>
struct Series {
  long offset = 0;
  std::vector<T> values;

  Series() = default;
  Series(long off, std::vector<T> v) : offset(off), values(std::move(v)) {}

  long first() const { return offset; }
  /// One past the last site.
  long end() const { return offset + static_cast<long>(values.size()); }
  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  bool has(long n) const { return n >= first() && n < end(); }

  const T& at(long n) const {
    if (!has(n))
      throw Error(ErrorCode::WindowOutOfRange,
                  "site outside [" + std::to_string(first()) + ", " + std::to_string(end()) + ")", n);
    return values[static_cast<std::size_t>(n - offset)];
  }
  T& at(long n) {
    if (!has(n))
      throw Error(ErrorCode::WindowOutOfRange,
                  "site outside [" + std::to_string(first()) + ", " + std::to_string(end()) + ")", n);
    return values[static_cast<std::size_t>(n - offset)];
  }

  template <class U, class F>
  Series<U> map(F&& f) const {
    std::vector<U> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(f(v));
    return Series<U>(offset, std::move(out));
  }
};

}  // namespace noether
