#pragma once

// Closed-form reconstruction of a path from solved invariants, the
// conservation vectors V_n, the constants k and integration constants.

#include <complex>
#include <vector>

#include "noether/conservation.hpp"

namespace noether {

struct ReconstructionInput {
  ActionKind kind = ActionKind::SL2Linear;
  InvariantSequence<double> inv;
  Series<std::vector<double>> V;
  std::vector<double> k;
  /// Site of the first reconstructed point and of the seed frame.
  long base = 0;
  /// (c, d) of the seed frame for the SL(2) actions, (c) for SA(2).
  std::vector<double> constants;
};

/// Integration constants read off a seed frame.
std::vector<double> integration_constants(const GroupElement<double>& rho);

/// Assembles an input from an existing path: invariants, V, k and the seed
/// frame at the first conservation site.
ReconstructionInput reconstruction_input_from_path(const InvariantLagrangian& L, const LatticePath<double>& path);

struct ReconstructionResult {
  LatticePath<double> path;
  std::vector<GroupElement<double>> frames;  // rho_n for each reconstructed point
  double imaginary_residual = 0.0;           // max |Im| relative to max(1, |Re|)
};

/// Maximal points: one per site with the invariants and V the recurrence needs.
std::size_t max_reconstruction_length(const ReconstructionInput& in);

/// Smallest normalized divisor of the closed forms over the first `length`
/// points: |V^2| / max(1, |V|), |k3| and |mu| / (1 + |k|) for the SL(2)
/// actions; |V^4 V^5| / max(1, |V|)^2 and |k4 k5| / (1 + |k|)^2 for SA(2).
/// Zero means a theorem hypothesis fails; small values mean ill-conditioning.
double reconstruction_conditioning(const ReconstructionInput& in, std::size_t length);

ReconstructionResult reconstruct_sl2_linear(const ReconstructionInput& in, std::size_t length);
ReconstructionResult reconstruct_sa2(const ReconstructionInput& in, std::size_t length);
ReconstructionResult reconstruct_sl2_projective(const ReconstructionInput& in, std::size_t length);
ReconstructionResult reconstruct(const ReconstructionInput& in, std::size_t length);

/// Residuals of the conservation equations k Ad(rho_n)^{-1} = V_n and, for the
/// SL(2) actions, of the conic and linear Groebner-basis relations, maxed over
/// the reconstructed frames.
struct ReconstructionChecks {
  double conservation = 0.0;
  double groebner = 0.0;
  double normalization = 0.0;
  double maurer_cartan = 0.0;  // |rho_{n+1} - K_n rho_n|
  double determinant = 0.0;
};
ReconstructionChecks check_reconstruction(const ReconstructionInput& in, const ReconstructionResult& out);

/// The printed SA(2) closed forms for alpha_n and beta_n in terms of c_n.
std::pair<double, double> sa2_printed_translation(const std::vector<double>& k, const std::vector<double>& V, double c);

}  // namespace noether
