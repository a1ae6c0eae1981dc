#pragma once

// Noether conservation laws k = V(I) Ad(rho_n). V(I) is assembled from the
// boundary-form coefficients C^alpha_j and the replacement
// S_j sigma^alpha -> Phi_0(I)^alpha Ad(K_{n+j-1}) ... Ad(K_n).

#include <vector>

#include "noether/variational.hpp"

namespace noether {

/// Ad(rho_{n+j} rho_n^{-1}) = Ad(K_{n+j-1}) ... Ad(K_n); identity for j = 0.
template <class T>
Matrix<T> shifted_adjoint(const InvariantSequence<T>& inv, long n, int j) {
  Matrix<T> P = Matrix<T>::identity(group_dim(inv.kind));
  for (int i = 0; i < j; ++i) P = adjoint_matrix(maurer_cartan(inv, n + i)) * P;
  return P;
}

/// V(I) at site n as a row vector of length group_dim.
template <class T>
std::vector<T> v_of_i(const EulerLagrangeSystem<T>& sys, const InvariantSequence<T>& inv, long n) {
  const int R = group_dim(inv.kind);
  const auto phi = characteristics_invariantized<T>(inv.kind);
  std::vector<T> V(static_cast<std::size_t>(R), T(0.0));
  for (int alpha = 0; alpha < generator_count(inv.kind); ++alpha) {
    const auto C = sys.boundary_coefficients(alpha, n);
    Matrix<T> P = Matrix<T>::identity(R);
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (j > 0) P = adjoint_matrix(maurer_cartan(inv, n + static_cast<long>(j) - 1)) * P;
      for (int r = 0; r < R; ++r) {
        T entry(0.0);
        for (int s = 0; s < R; ++s) entry = entry + phi(alpha, s) * P(s, r);
        V[static_cast<std::size_t>(r)] = V[static_cast<std::size_t>(r)] + C[j] * entry;
      }
    }
  }
  return V;
}

template <class T>
std::vector<T> row_times(const std::vector<T>& v, const Matrix<T>& M) {
  if (static_cast<int>(v.size()) != M.rows()) throw Error(ErrorCode::DimensionMismatch, "row vector and matrix disagree");
  std::vector<T> out(static_cast<std::size_t>(M.cols()), T(0.0));
  for (int c = 0; c < M.cols(); ++c)
    for (int r = 0; r < M.rows(); ++r) out[static_cast<std::size_t>(c)] = out[static_cast<std::size_t>(c)] + v[static_cast<std::size_t>(r)] * M(r, c);
  return out;
}

/// V(I) over every site where it is computable.
Series<std::vector<double>> v_series(const InvariantLagrangian& L, const InvariantSequence<double>& inv);

struct ConservationRecord {
  ActionKind kind = ActionKind::SL2Linear;
  long offset = 0;
  std::vector<std::vector<double>> V;
  std::vector<Matrix<double>> ad_rho;
  std::vector<std::vector<double>> k_n;
  std::vector<double> k;  // k at the first site
  double drift = 0.0;     // max_n |k_n - k_first|_inf

  std::size_t size() const { return V.size(); }
};

/// Evaluates k_n = V_n Ad(rho_n) at every site where both factors exist.
ConservationRecord noether_constant(const InvariantLagrangian& L, const LatticePath<double>& path);

/// max_n |V_{n+1} Ad(K_n) - V_n|_inf over consecutive pairs present in V.
double structure_check(const Series<std::vector<double>>& V, const InvariantSequence<double>& inv);

/// w1^2 + 4 w2 w3 for the SL(2) actions; w1 w4 w5 + w2 w5^2 - w3 w4^2 for SA(2).
template <class T>
T first_integral(ActionKind kind, const std::vector<T>& w) {
  if (static_cast<int>(w.size()) != group_dim(kind))
    throw Error(ErrorCode::DimensionMismatch, "first integral needs a vector of length " + std::to_string(group_dim(kind)));
  if (kind == ActionKind::SA2Linear) return w[0] * w[3] * w[4] + w[1] * w[4] * w[4] - w[2] * w[3] * w[3];
  return w[0] * w[0] + T(4.0) * w[1] * w[2];
}

}  // namespace noether
