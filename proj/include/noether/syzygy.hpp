#pragma once

// Linear difference operators with invariant coefficients, their adjoints and
// boundary forms, and the syzygy operators H with d/dt (generators) = H sigma.

#include <algorithm>
#include <functional>
#include <memory>
#include <vector>

#include "noether/frames.hpp"

namespace noether {

/// A lattice sequence n -> value. Evaluation outside its domain throws
/// WindowOutOfRange.
template <class T>
using Sequence = std::function<T(long)>;

template <class T>
Sequence<T> as_sequence(Series<T> s) {
  return [s = std::move(s)](long n) { return s.at(n); };
}

/// sum_j c_j(n) S_j with coefficients sampled per site.
template <class T>
class LinearDifferenceOperator {
 public:
  struct Term {
    int shift;
    Sequence<T> coeff;
  };

  LinearDifferenceOperator() = default;

  static LinearDifferenceOperator identity() {
    LinearDifferenceOperator op;
    op.add(0, [](long) { return T(1.0); });
    return op;
  }

  LinearDifferenceOperator& add(int shift, Sequence<T> coeff) {
    terms_.push_back({shift, std::move(coeff)});
    return *this;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  int min_shift() const {
    int m = 0;
    for (const auto& t : terms_) m = std::min(m, t.shift);
    return m;
  }
  int max_shift() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.shift);
    return m;
  }

  /// Combined coefficient of S_shift at site n.
  T coefficient(int shift, long n) const {
    T sum(0.0);
    for (const auto& t : terms_)
      if (t.shift == shift) sum = sum + t.coeff(n);
    return sum;
  }

  template <class U>
  U apply(const Sequence<U>& seq, long n) const {
    U sum(0.0);
    for (const auto& t : terms_) sum = sum + U(t.coeff(n)) * seq(n + t.shift);
    return sum;
  }

 private:
  std::vector<Term> terms_;
};

/// H* = sum_j S_{-j} c_j: the term (j, c_j) maps to (-j, n -> c_j(n - j)).
template <class T>
LinearDifferenceOperator<T> adjoint_of(const LinearDifferenceOperator<T>& op) {
  LinearDifferenceOperator<T> out;
  for (const auto& t : op.terms()) {
    const int j = t.shift;
    out.add(-j, [c = t.coeff, j](long n) { return c(n - j); });
  }
  return out;
}

namespace detail {

template <class T>
void require_forward(const LinearDifferenceOperator<T>& op) {
  if (op.min_shift() < 0) throw Error(ErrorCode::SupportViolation, "boundary form needs nonnegative shifts only");
}

}  // namespace detail

/// Coefficients C_j(n), j = 0..m-1, of S_j G in A_H(F, G)(n):
/// C_j(n) = sum_{k=j+1..m} c_k(n+j-k) F(n+j-k).
template <class T, class U>
std::vector<U> boundary_coefficients(const LinearDifferenceOperator<T>& op, const Sequence<U>& F, long n) {
  detail::require_forward(op);
  const int m = op.max_shift();
  std::vector<U> out(static_cast<std::size_t>(std::max(m, 0)), U(0.0));
  for (const auto& t : op.terms()) {
    const int k = t.shift;
    for (int j = 0; j < k; ++j) {
      const long site = n + j - k;
      out[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j)] + U(t.coeff(site)) * F(site);
    }
  }
  return out;
}

/// A_H(F, G)(n) with F H(G) - H*(F) G = (S - id) A_H(F, G).
template <class T, class U>
U boundary_form(const LinearDifferenceOperator<T>& op, const Sequence<U>& F, const Sequence<U>& G, long n) {
  const auto C = boundary_coefficients(op, F, n);
  U sum(0.0);
  for (std::size_t j = 0; j < C.size(); ++j) sum = sum + C[j] * G(n + static_cast<long>(j));
  return sum;
}

/// Grid of operators; row g is the g-th generating invariant, column alpha the
/// alpha-th sigma component.
template <class T>
class OperatorMatrix {
 public:
  OperatorMatrix(int rows, int cols) : rows_(rows), cols_(cols), ops_(static_cast<std::size_t>(rows * cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  LinearDifferenceOperator<T>& operator()(int r, int c) { return ops_[static_cast<std::size_t>(r * cols_ + c)]; }
  const LinearDifferenceOperator<T>& operator()(int r, int c) const {
    return ops_[static_cast<std::size_t>(r * cols_ + c)];
  }

  template <class U>
  std::vector<U> apply(const std::vector<Sequence<U>>& seqs, long n) const {
    if (static_cast<int>(seqs.size()) != cols_)
      throw Error(ErrorCode::DimensionMismatch, "operator matrix applied to wrong number of sequences");
    std::vector<U> out(static_cast<std::size_t>(rows_), U(0.0));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        out[static_cast<std::size_t>(r)] = out[static_cast<std::size_t>(r)] + (*this)(r, c).apply(seqs[static_cast<std::size_t>(c)], n);
    return out;
  }

  /// Entrywise adjoint of the transpose.
  OperatorMatrix adjoint() const {
    OperatorMatrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out(c, r) = adjoint_of((*this)(r, c));
    return out;
  }

 private:
  int rows_, cols_;
  std::vector<LinearDifferenceOperator<T>> ops_;
};

/// The syzygy operator for the action. Coefficients capture an immutable copy
/// of the invariants; evaluating a coefficient beyond the sampled range throws.
template <class T>
OperatorMatrix<T> build_syzygy(const InvariantSequence<T>& inv_in) {
  const auto inv = std::make_shared<const InvariantSequence<T>>(inv_in);
  auto kap = [inv](long n) -> const T& { return inv->k(n); };
  auto tau = [inv](long n) -> const T& { return inv->t(n); };
  auto nz = [](const T& x, const char* what, long n) -> const T& {
    return require_nonzero(x, ErrorCode::DegenerateInvariants, what, n);
  };
  const T one(1.0);

  switch (inv->kind) {
    case ActionKind::SL2Linear: {
      OperatorMatrix<T> H(2, 2);
      // d kappa / dt
      H(0, 0).add(0, [=](long n) { return kap(n); }).add(1, [=](long n) { return -kap(n); });
      H(0, 1)
          .add(0, [=](long n) { return one / nz(tau(n), "tau", n); })
          .add(2, [=](long n) {
            const T& t1 = nz(tau(n + 1), "tau_1", n);
            return -tau(n) / (t1 * t1);
          });
      // d tau / dt
      H(1, 0).add(0, [=](long n) { return tau(n); }).add(1, [=](long n) { return tau(n); });
      H(1, 1).add(1, [=](long n) { return kap(n); });
      return H;
    }
    case ActionKind::SA2Linear: {
      OperatorMatrix<T> H(2, 2);
      // d tau / dt
      H(0, 0)
          .add(0, [=](long n) { return -tau(n); })
          .add(1, [=](long n) { return one + tau(n) - kap(n) / nz(kap(n + 1), "kappa_1", n); })
          .add(2, [=](long n) { return tau(n); })
          .add(3, [=](long n) {
            const T& k1 = nz(kap(n + 1), "kappa_1", n);
            return -kap(n) / (k1 * k1) * (kap(n + 2) * (one + tau(n + 1)) - k1);
          });
      H(0, 1)
          .add(0, [=](long n) { return -(one + tau(n)) / nz(kap(n), "kappa", n); })
          .add(2, [=](long n) { return tau(n) * (one + tau(n + 1)) / nz(kap(n + 1), "kappa_1", n); })
          .add(3, [=](long n) {
            const T& k1 = nz(kap(n + 1), "kappa_1", n);
            const T& k2 = nz(kap(n + 2), "kappa_2", n);
            return -kap(n) / (k1 * k1 * k2) * (k2 * tau(n + 2) * (one + tau(n + 1)) - k1 * (one + tau(n + 2)));
          });
      // d kappa / dt
      H(1, 0)
          .add(0, [=](long n) { return -kap(n); })
          .add(1, [=](long n) { return -kap(n); })
          .add(2, [=](long n) { return tau(n) * kap(n + 1) - kap(n); });
      H(1, 1)
          .add(0, [=](long) { return -one; })
          .add(1, [=](long n) { return -(one + tau(n)); })
          .add(2, [=](long n) {
            return tau(n) * tau(n + 1) - kap(n) * (one + tau(n + 1)) / nz(kap(n + 1), "kappa_1", n);
          });
      return H;
    }
    case ActionKind::SL2Projective: {
      OperatorMatrix<T> H(1, 1);
      H(0, 0)
          .add(3, [=](long n) {
            const T& k = kap(n);
            const T& k1 = kap(n + 1);
            const T& k2 = nz(kap(n + 2), "kappa_2", n);
            const T k1m = nz(T(k1 - one), "kappa_1 - 1", n);
            return k * (k - one) * k1 * (k2 - one) / (k2 * k1m);
          })
          .add(2, [=](long n) { return kap(n) * (kap(n + 1) - one) / nz(kap(n + 1), "kappa_1", n); })
          .add(1, [=](long n) { return -(kap(n) - one); })
          .add(0, [=](long n) { return -kap(n) * (kap(n) - one); });
      return H;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown action");
}

/// sigma sequences indexed by component: (sigma^x, sigma^y) for the planar
/// actions, (sigma^x_0) for the projective action.
template <class T>
std::vector<Sequence<T>> sigma_sequences(const LatticePath<T>& path) {
  const auto p = std::make_shared<const LatticePath<T>>(path);
  std::vector<Sequence<T>> out;
  for (int a = 0; a < generator_count(path.kind()); ++a)
    out.push_back([p, a](long n) { return sigma_at(*p, n)[static_cast<std::size_t>(a)]; });
  return out;
}

/// d/dt of each generating invariant at site k (via duals along the
/// velocities) minus (H sigma)(k).
template <class T>
std::vector<T> syzygy_residual(const LatticePath<T>& path, long k) {
  const auto lifted = invariants_of(lift_along_velocities(path));
  const auto inv = invariants_of(path);
  const auto H = build_syzygy(inv);
  const auto Hs = H.apply(sigma_sequences(path), k);
  std::vector<T> out;
  for (int g = 0; g < generator_count(path.kind()); ++g)
    out.push_back(lifted.generator(g).at(k).tangent() - Hs[static_cast<std::size_t>(g)]);
  return out;
}

/// Sites [first, last] where syzygy_residual is computable on this path.
template <class T>
std::pair<long, long> syzygy_sites(const LatticePath<T>& path) {
  // H reaches two (SL2Linear) or three shifts ahead and sigma there needs a
  // full frame window.
  const int span = path.kind() == ActionKind::SL2Linear ? 2 : 3;
  return {path.first(), path.end() - frame_window(path.kind()) - span};
}

/// Sites [first, last] where curvature_residual is computable on this path.
template <class T>
std::pair<long, long> curvature_sites(const LatticePath<T>& path) {
  const int reach = path.kind() == ActionKind::SA2Linear ? 6 : 4;
  return {path.first(), path.end() - reach};
}

/// Curvature matrix N_k = (d rho_k/dt) rho_k^{-1} in the standard
/// representation, from the closed forms in sigma and the invariants.
/// `literal_projective_entry` swaps in the lower-left projective entry
/// 2 sigma_0 - 4 sigma_1 + 2 sigma_1 (instead of 2 sigma_2) for comparison.
template <class T>
Matrix<T> curvature_matrix(const LatticePath<T>& path, long k, bool literal_projective_entry = false) {
  const auto inv = invariants_of(path);
  switch (path.kind()) {
    case ActionKind::SL2Linear: {
      const auto s = sigma_at(path, k);
      const auto s1 = sigma_at(path, k + 1);
      const T& tau = inv.t(k);
      // I^x_{0,1} = -S sigma^y / tau
      const T ix01 = -s1[1] / tau;
      return Matrix<T>{{-s[0], -ix01 / tau}, {-s[1], s[0]}};
    }
    case ActionKind::SA2Linear: {
      const auto s = sigma_at(path, k);
      const auto s1 = sigma_at(path, k + 1);
      const auto s2 = sigma_at(path, k + 2);
      const auto K0 = maurer_cartan(inv, k).linear();
      const auto K1 = maurer_cartan(inv, k + 1).linear();
      const auto K0i = inverse(K0);
      const auto K1i = inverse(K1);
      Matrix<T> v1(2, 1), v2(2, 1);
      v1(0, 0) = s1[0];
      v1(1, 0) = s1[1];
      v2(0, 0) = s2[0];
      v2(1, 0) = s2[1];
      const auto I1 = K0i * v1;
      const auto I2 = K0i * (K1i * v2);
      const T& kap = inv.k(k);
      return Matrix<T>{{s[0] - I1(0, 0), (s[0] - I2(0, 0)) / kap, -s[0]},
                       {s[1] - I1(1, 0), I1(0, 0) - s[0], -s[1]},
                       {T(0.0), T(0.0), T(0.0)}};
    }
    case ActionKind::SL2Projective: {
      const auto s = sigma_at(path, k);
      const T half(0.5);
      const T lower = literal_projective_entry ? T(2.0) * s[0] - T(4.0) * s[1] + T(2.0) * s[1]
                                               : T(2.0) * s[0] - T(4.0) * s[1] + T(2.0) * s[2];
      return Matrix<T>{{half * s[2] - half * s[0], -s[1]}, {lower, -half * s[2] + half * s[0]}};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown action");
}

/// max entry of dK_k/dt - (S N_k) K_k + K_k N_k, with dK_k/dt from duals.
template <class T>
double curvature_residual(const LatticePath<T>& path, long k, bool literal_projective_entry = false) {
  const auto lifted = invariants_of(lift_along_velocities(path));
  const auto dK = maurer_cartan(lifted, k).standard_rep().template map<T>([](const Dual<T>& x) { return x.tangent(); });
  const auto inv = invariants_of(path);
  const auto K = maurer_cartan(inv, k).standard_rep();
  const auto N0 = curvature_matrix(path, k, literal_projective_entry);
  const auto N1 = curvature_matrix(path, k + 1, literal_projective_entry);
  return max_abs(dK - (N1 * K - K * N0));
}

}  // namespace noether
