#include "noether/lagrangian.hpp"

#include <algorithm>
#include <cmath>

namespace noether {

InvariantLagrangian::InvariantLagrangian(int kappa_count, int tau_count, Evaluator<double> f, std::optional<Evaluator<D1>> f1,
                                         std::optional<Evaluator<D2>> f2)
    : kappa_count_(kappa_count), tau_count_(tau_count), f0_(std::move(f)), f1_(std::move(f1)), f2_(std::move(f2)) {
  if (kappa_count < 0 || tau_count < 0) throw Error(ErrorCode::InvalidArgument, "window widths must be nonnegative");
  if (!f0_) throw Error(ErrorCode::InvalidArgument, "Lagrangian needs a real evaluator");
}

namespace {

struct PolynomialEval {
  std::shared_ptr<const std::vector<Monomial>> terms;

  template <class T>
  T operator()(long, const std::vector<T>& k, const std::vector<T>& t) const {
    T sum(0.0);
    for (const auto& m : *terms) {
      T term(m.coeff);
      for (const auto& [s, e] : m.kappa) term = term * ipow(k[static_cast<std::size_t>(s)], e);
      for (const auto& [s, e] : m.tau) term = term * ipow(t[static_cast<std::size_t>(s)], e);
      sum = sum + term;
    }
    return sum;
  }
};

}  // namespace

InvariantLagrangian InvariantLagrangian::polynomial(std::vector<Monomial> terms) {
  int kc = 0, tc = 0;
  for (const auto& m : terms) {
    for (const auto& [s, e] : m.kappa) {
      if (s < 0 || e < 0) throw Error(ErrorCode::InvalidArgument, "monomial shifts and exponents must be nonnegative");
      if (e > 0) kc = std::max(kc, s + 1);
    }
    for (const auto& [s, e] : m.tau) {
      if (s < 0 || e < 0) throw Error(ErrorCode::InvalidArgument, "monomial shifts and exponents must be nonnegative");
      if (e > 0) tc = std::max(tc, s + 1);
    }
  }
  // Drop zero exponents so the window widths above bound every index.
  for (auto& m : terms) {
    std::erase_if(m.kappa, [](const auto& p) { return p.second == 0; });
    std::erase_if(m.tau, [](const auto& p) { return p.second == 0; });
  }
  auto shared = std::make_shared<const std::vector<Monomial>>(std::move(terms));
  auto lag = from_generic(kc, tc, PolynomialEval{shared});
  lag.monomials_ = shared;
  return lag;
}

InvariantLagrangian InvariantLagrangian::constant(double value) {
  return polynomial({Monomial{value, {}, {}}});
}

D1 InvariantLagrangian::finite_difference_lift(long n, const std::vector<D1>& k, const std::vector<D1>& t) const {
  std::vector<double> pk, pt;
  for (const auto& v : k) pk.push_back(v.primal());
  for (const auto& v : t) pt.push_back(v.primal());
  const double value = f0_(n, pk, pt);
  double tangent = 0.0;
  auto partial = [&](std::vector<double>& slot, std::size_t i) {
    const double x = slot[i];
    const double h = 1e-7 * std::max(1.0, std::abs(x));
    slot[i] = x + h;
    const double up = f0_(n, pk, pt);
    slot[i] = x - h;
    const double down = f0_(n, pk, pt);
    slot[i] = x;
    return (up - down) / (2.0 * h);
  };
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i].tangent() != 0.0) tangent += partial(pk, i) * k[i].tangent();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].tangent() != 0.0) tangent += partial(pt, i) * t[i].tangent();
  return {value, tangent};
}

}  // namespace noether
