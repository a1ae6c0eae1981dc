#pragma once

// Difference Euler operator and the invariantized Euler-Lagrange system
// H^* E(L) = 0, assembled from build_syzygy and adjoint_of.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "noether/lagrangian.hpp"
#include "noether/syzygy.hpp"

namespace noether {

/// E_kappa(L) and E_tau(L) at one site.
template <class T>
struct EulerValues {
  T kappa{};
  T tau{};
};

/// E(L) at site n: E_kappa(n) = sum_j dL/dkappa_j (n - j), likewise for tau.
template <class T>
EulerValues<T> euler_operator(const InvariantLagrangian& L, const InvariantSequence<T>& inv, long n) {
  EulerValues<T> out{T(0.0), T(0.0)};
  const int J = std::max(L.kappa_count(), L.tau_count());
  for (int j = 0; j < J; ++j) {
    const auto [gk, gt] = L.gradient(inv, n - j);
    if (j < static_cast<int>(gk.size())) out.kappa = out.kappa + gk[static_cast<std::size_t>(j)];
    if (j < static_cast<int>(gt.size())) out.tau = out.tau + gt[static_cast<std::size_t>(j)];
  }
  return out;
}

/// Invariantized Euler-Lagrange system over one invariant sequence. Euler
/// values are tabulated once over every site where the full sum exists; the
/// residual at n is (H^* E)(n), one component per sigma component.
template <class T>
class EulerLagrangeSystem {
 public:
  EulerLagrangeSystem(const InvariantLagrangian& L, const InvariantSequence<T>& inv)
      : kind_(inv.kind), H_(build_syzygy(inv)), Hstar_(H_.adjoint()) {
    const auto [lfirst, lend] = L.sites(inv);
    const int J = std::max({L.kappa_count(), L.tau_count(), 1});
    const int G = generator_count(kind_);
    // Gradients of L at each site, then the shifted sums.
    std::vector<std::pair<std::vector<T>, std::vector<T>>> grads;
    for (long m = lfirst; m < lend; ++m) grads.push_back(L.gradient(inv, m));
    for (int g = 0; g < G; ++g) euler_[static_cast<std::size_t>(g)].offset = lfirst + J - 1;
    for (long n = lfirst + J - 1; n < lend; ++n) {
      EulerValues<T> e{T(0.0), T(0.0)};
      for (int j = 0; j < J; ++j) {
        const auto& [gk, gt] = grads[static_cast<std::size_t>(n - j - lfirst)];
        if (j < static_cast<int>(gk.size())) e.kappa = e.kappa + gk[static_cast<std::size_t>(j)];
        if (j < static_cast<int>(gt.size())) e.tau = e.tau + gt[static_cast<std::size_t>(j)];
      }
      for (int g = 0; g < G; ++g) euler_[static_cast<std::size_t>(g)].values.push_back(by_generator(e, g));
    }
    for (int g = 0; g < G; ++g) euler_seq_.push_back(as_sequence(euler_[static_cast<std::size_t>(g)]));
  }

  ActionKind kind() const { return kind_; }
  const OperatorMatrix<T>& syzygy() const { return H_; }
  const OperatorMatrix<T>& adjoint() const { return Hstar_; }

  /// E for generator g in syzygy row order.
  const Series<T>& euler(int g) const { return euler_[static_cast<std::size_t>(g)]; }
  const std::vector<Sequence<T>>& euler_sequences() const { return euler_seq_; }

  /// (H^* E)(n); throws WindowOutOfRange when any needed value is missing.
  std::vector<T> residual(long n) const { return Hstar_.apply(euler_seq_, n); }

  /// Sites [first, last] (inclusive) with a computable residual.
  std::pair<long, long> residual_sites() const {
    long first = euler_[0].first(), last = euler_[0].end() - 1;
    while (first <= last && !computable(first)) ++first;
    while (last >= first && !computable(last)) --last;
    return {first, last};
  }

  /// C^alpha_j(n): coefficient of S_j sigma^alpha in the boundary form A_H(E, sigma).
  std::vector<T> boundary_coefficients(int alpha, long n) const {
    std::vector<T> out;
    for (int g = 0; g < H_.rows(); ++g) {
      const auto c = noether::boundary_coefficients(H_(g, alpha), euler_seq_[static_cast<std::size_t>(g)], n);
      if (out.size() < c.size()) out.resize(c.size(), T(0.0));
      for (std::size_t j = 0; j < c.size(); ++j) out[j] = out[j] + c[j];
    }
    return out;
  }

 private:
  // Syzygy rows are (kappa, tau) except for SA2, which orders them (tau, kappa).
  T by_generator(const EulerValues<T>& e, int g) const {
    if (kind_ == ActionKind::SA2Linear) return g == 0 ? e.tau : e.kappa;
    return g == 0 ? e.kappa : e.tau;
  }

  bool computable(long n) const {
    try {
      residual(n);
      return true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowOutOfRange) throw;
      return false;
    }
  }

  ActionKind kind_;
  OperatorMatrix<T> H_;
  OperatorMatrix<T> Hstar_;
  std::array<Series<T>, 2> euler_;
  std::vector<Sequence<T>> euler_seq_;
};

template <class T>
std::vector<T> el_residual(const InvariantLagrangian& L, const InvariantSequence<T>& inv, long n) {
  return EulerLagrangeSystem<T>(L, inv).residual(n);
}

/// Max |H^* E(L)| over every computable site.
double el_residual_max(const InvariantLagrangian& L, const InvariantSequence<double>& inv);

/// |d/dt sum_n L - sum_n (H^* E)(n) . sigma(n)| for a path carrying
/// velocities. Velocities must vanish near both ends so that every site with a
/// nonzero velocity has a computable residual.
double pairing_check(const InvariantLagrangian& L, const LatticePath<double>& path);

/// Total action sum_n L over every site with a full window.
template <class T>
T action_sum(const InvariantLagrangian& L, const InvariantSequence<T>& inv) {
  const auto [first, end] = L.sites(inv);
  T sum(0.0);
  for (long n = first; n < end; ++n) sum = sum + L.value(inv, n);
  return sum;
}

}  // namespace noether
