#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>

#include "noether/error.hpp"
#include "noether/scalar.hpp"

namespace noether {

/// Dense row-major matrix of at most 5x5 entries, stored inline. Row vectors
/// are 1xN matrices; all group and Adjoint matrices in the library fit.
template <class T>
class Matrix {
 public:
  static constexpr int kMaxDim = 5;

  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0 || rows > kMaxDim || cols > kMaxDim)
      throw Error(ErrorCode::DimensionMismatch, "matrix dimensions exceed 5x5");
    data_.fill(T(0.0));
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : Matrix(static_cast<int>(rows.size()), rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
      int j = 0;
      for (const auto& v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

  static Matrix row(std::initializer_list<T> values) {
    Matrix m(1, static_cast<int>(values.size()));
    int j = 0;
    for (const auto& v : values) m(0, j++) = v;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * kMaxDim + j)]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * kMaxDim + j)]; }

  /// Flat access for row vectors.
  T& operator[](int j) { return (*this)(0, j); }
  const T& operator[](int j) const { return (*this)(0, j); }

  template <class U, class F>
  Matrix<U> map(F&& f) const {
    Matrix<U> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix out(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  void set_block(int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix out(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix out(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix out(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) out(i, j) = -a(i, j);
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        T s(0.0);
        for (int k = 0; k < a.cols_; ++k) s = s + a(i, k) * b(k, j);
        out(i, j) = s;
      }
    return out;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix out(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) out(i, j) = s * a(i, j);
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (int i = 0; i < m.rows_; ++i) {
      os << (i ? "; " : "");
      for (int j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
    }
    return os << ']';
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::array<T, kMaxDim * kMaxDim> data_{};
};

template <class T>
T determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return T(1.0);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (n == 3) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
  // Gaussian elimination with partial pivoting on the base magnitude.
  Matrix<T> a = m;
  T det(1.0);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (magnitude(a(r, col)) > magnitude(a(pivot, col))) pivot = r;
    if (magnitude(a(pivot, col)) == 0.0) return T(0.0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det = det * a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const T f = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) = a(r, j) - f * a(col, j);
    }
  }
  return det;
}

/// Inverse via adjugate for n <= 3 and Gauss-Jordan otherwise.
/// Throws SingularMatrix when |det| <= epsilon().
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  const T det = determinant(m);
  if (!(magnitude(det) > epsilon())) throw Error(ErrorCode::SingularMatrix, "determinant magnitude below epsilon");
  const int n = m.rows();
  Matrix<T> out(n, n);
  if (n == 1) {
    out(0, 0) = T(1.0) / det;
    return out;
  }
  if (n == 2) {
    out(0, 0) = m(1, 1) / det;
    out(0, 1) = -m(0, 1) / det;
    out(1, 0) = -m(1, 0) / det;
    out(1, 1) = m(0, 0) / det;
    return out;
  }
  if (n == 3) {
    auto cof = [&](int r0, int r1, int c0, int c1) { return m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0); };
    out(0, 0) = cof(1, 2, 1, 2) / det;
    out(0, 1) = -cof(0, 2, 1, 2) / det;
    out(0, 2) = cof(0, 1, 1, 2) / det;
    out(1, 0) = -cof(1, 2, 0, 2) / det;
    out(1, 1) = cof(0, 2, 0, 2) / det;
    out(1, 2) = -cof(0, 1, 0, 2) / det;
    out(2, 0) = cof(1, 2, 0, 1) / det;
    out(2, 1) = -cof(0, 2, 0, 1) / det;
    out(2, 2) = cof(0, 1, 0, 1) / det;
    return out;
  }
  Matrix<T> a = m;
  out = Matrix<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (magnitude(a(r, col)) > magnitude(a(pivot, col))) pivot = r;
    for (int j = 0; j < n; ++j) {
      std::swap(a(pivot, j), a(col, j));
      std::swap(out(pivot, j), out(col, j));
    }
    const T inv = T(1.0) / a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * inv;
      out(col, j) = out(col, j) * inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        out(r, j) = out(r, j) - f * out(col, j);
      }
    }
  }
  return out;
}

/// Max-entry norm of the base values.
template <class T>
double max_abs(const Matrix<T>& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s = std::max(s, magnitude(m(i, j)));
  return s;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  return max_abs(a - b);
}

/// Strips dual parts, keeping the base field values.
template <class T>
auto base_matrix(const Matrix<T>& m) {
  using B = base_scalar_t<T>;
  return m.template map<B>([](const T& x) { return base_value(x); });
}

}  // namespace noether
