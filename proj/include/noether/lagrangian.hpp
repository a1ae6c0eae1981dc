#pragma once

// Invariant Lagrangians L(kappa, ..., kappa_J1, tau, ..., tau_J2) evaluated at a
// lattice site. Evaluators exist per scalar level so that first and second
// derivatives come from (nested) dual numbers.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "noether/frames.hpp"

namespace noether {

using D1 = Dual<double>;
using D2 = Dual<Dual<double>>;

/// One term coeff * prod kappa_s^e * prod tau_s^e.
struct Monomial {
  double coeff = 1.0;
  std::map<int, int> kappa;  // shift -> exponent
  std::map<int, int> tau;
};

class InvariantLagrangian {
 public:
  template <class T>
  using Evaluator = std::function<T(long n, const std::vector<T>& kappa, const std::vector<T>& tau)>;

  /// `kappa_count` and `tau_count` are the window widths (J + 1); zero means
  /// no dependence. Missing dual evaluators fall back to finite differences
  /// for first derivatives; second derivatives then are unavailable.
  InvariantLagrangian(int kappa_count, int tau_count, Evaluator<double> f, std::optional<Evaluator<D1>> f1 = std::nullopt,
                      std::optional<Evaluator<D2>> f2 = std::nullopt);

  /// Builds all evaluator levels from one generic callable `f(n, kappa, tau)`.
  template <class F>
  static InvariantLagrangian from_generic(int kappa_count, int tau_count, F f) {
    return InvariantLagrangian(
        kappa_count, tau_count, [f](long n, const std::vector<double>& k, const std::vector<double>& t) { return f(n, k, t); },
        Evaluator<D1>([f](long n, const std::vector<D1>& k, const std::vector<D1>& t) { return f(n, k, t); }),
        Evaluator<D2>([f](long n, const std::vector<D2>& k, const std::vector<D2>& t) { return f(n, k, t); }));
  }

  static InvariantLagrangian polynomial(std::vector<Monomial> terms);
  static InvariantLagrangian constant(double value);

  int kappa_count() const { return kappa_count_; }
  int tau_count() const { return tau_count_; }
  bool has_dual() const { return f1_.has_value(); }
  /// Set for Lagrangians built by polynomial(); used by serialization.
  const std::vector<Monomial>* monomials() const { return monomials_ ? monomials_.get() : nullptr; }

  template <class T>
  T evaluate(long n, const std::vector<T>& kappa, const std::vector<T>& tau) const;

  /// L at site n reading its window from `inv`; tau is ignored for the
  /// projective action.
  template <class T>
  T value(const InvariantSequence<T>& inv, long n) const {
    std::vector<T> k, t;
    window(inv, n, k, t);
    return evaluate<T>(n, k, t);
  }

  /// First site and one-past-last site where the full window exists.
  template <class T>
  std::pair<long, long> sites(const InvariantSequence<T>& inv) const {
    long first = inv.kappa.first(), end = inv.kappa.end() - std::max(kappa_count_ - 1, 0);
    if (kappa_count_ == 0) end = inv.kappa.end();
    if (tau_count_ > 0 && inv.kind != ActionKind::SL2Projective) {
      first = std::max(first, inv.tau.first());
      end = std::min(end, inv.tau.end() - (tau_count_ - 1));
    }
    return {first, std::max(first, end)};
  }

  /// Gradient of L at site n with respect to (kappa_0.., tau_0..).
  template <class T>
  std::pair<std::vector<T>, std::vector<T>> gradient(const InvariantSequence<T>& inv, long n) const;

 private:
  template <class T>
  void window(const InvariantSequence<T>& inv, long n, std::vector<T>& k, std::vector<T>& t) const {
    if (inv.kind == ActionKind::SL2Projective && tau_count_ > 0)
      throw Error(ErrorCode::InvalidArgument, "the projective action has no tau invariant");
    for (int j = 0; j < kappa_count_; ++j) k.push_back(inv.k(n + j));
    if (inv.kind != ActionKind::SL2Projective)
      for (int j = 0; j < tau_count_; ++j) t.push_back(inv.t(n + j));
  }

  D1 finite_difference_lift(long n, const std::vector<D1>& k, const std::vector<D1>& t) const;

  int kappa_count_;
  int tau_count_;
  Evaluator<double> f0_;
  std::optional<Evaluator<D1>> f1_;
  std::optional<Evaluator<D2>> f2_;
  std::shared_ptr<const std::vector<Monomial>> monomials_;
};

template <class T>
T InvariantLagrangian::evaluate(long n, const std::vector<T>& kappa, const std::vector<T>& tau) const {
  if constexpr (std::is_same_v<T, double>) {
    return f0_(n, kappa, tau);
  } else if constexpr (std::is_same_v<T, D1>) {
    if (f1_) return (*f1_)(n, kappa, tau);
    return finite_difference_lift(n, kappa, tau);
  } else if constexpr (std::is_same_v<T, D2>) {
    if (!f2_) throw Error(ErrorCode::InvalidArgument, "Lagrangian has no second-order dual evaluator");
    return (*f2_)(n, kappa, tau);
  } else {
    static_assert(sizeof(T) == 0, "unsupported scalar level for Lagrangian evaluation");
  }
}

template <class T>
std::pair<std::vector<T>, std::vector<T>> InvariantLagrangian::gradient(const InvariantSequence<T>& inv, long n) const {
  std::vector<T> k, t;
  window(inv, n, k, t);
  using DT = Dual<T>;
  std::vector<DT> dk(k.begin(), k.end()), dt(t.begin(), t.end());
  std::vector<T> gk(k.size()), gt(t.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    dk[i] = DT::variable(k[i]);
    gk[i] = evaluate<DT>(n, dk, dt).tangent();
    dk[i] = DT(k[i]);
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    dt[i] = DT::variable(t[i]);
    gt[i] = evaluate<DT>(n, dk, dt).tangent();
    dt[i] = DT(t[i]);
  }
  return {gk, gt};
}

}  // namespace noether
