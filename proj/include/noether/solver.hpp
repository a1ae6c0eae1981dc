#pragma once

// Numerical extremals: forward stepping of H^* E(L) = 0 on invariant
// sequences, direct minimization on the original variables, and a
// brute-force oracle comparing the two sides of the variational identity.

#include <optional>
#include <vector>

#include "noether/variational.hpp"

namespace noether {

struct SolveConfig {
  /// Sites in the returned sequence, including the leading data.
  std::size_t length = 16;
  double tolerance = 1e-12;
  int max_iterations = 50;
  /// Step scaling applied on each rejected Newton step.
  double damping = 0.5;
};

/// Dependency structure of the EL residual for one Lagrangian and action.
struct ElStructure {
  /// residual(n) needs sites n + window_lo .. n + window_hi.
  int window_lo = 0;
  int window_hi = 0;
  /// reach[c][g]: largest shift of generator g in component c, if any.
  std::vector<std::vector<std::optional<int>>> reach;
  /// Largest shift the component depends on; empty when it vanishes.
  std::vector<std::optional<int>> top;
  /// Per generator, max over c of reach[c][g] - top[c] (always <= 0). The
  /// equations attached to step m, (c, m - top[c]), are solved for the
  /// generators at sites m + lag[g].
  std::vector<std::optional<int>> lag;
  /// Leading sites that leave no EL equation fully inside the leading data.
  int minimal_leading() const;
};

ElStructure el_structure(const InvariantLagrangian& L, ActionKind kind);

/// Extends `leading` (both generators over the same sites) to config.length
/// sites so that every EL residual in the result vanishes. Equations lying
/// entirely inside the leading data are enforced first by a minimum-norm
/// adjustment of that data; leading values of a lagging generator that the
/// first steps determine are overwritten.
InvariantSequence<double> step_el_forward(const InvariantLagrangian& L, const InvariantSequence<double>& leading,
                                          const SolveConfig& config = {});

/// Stationary point of sum_n L over the interior points of `seed`; the first
/// and last frame_window points stay clamped.
LatticePath<double> extremal_path_by_gradient(const InvariantLagrangian& L, const LatticePath<double>& seed,
                                              const SolveConfig& config = {});

/// d/du_n of sum L for every point, by dual numbers.
std::vector<std::vector<double>> action_gradient(const InvariantLagrangian& L, const LatticePath<double>& path);

struct OracleSite {
  long site = 0;
  std::vector<double> euler_u;    // finite-difference d(sum L)/du_n
  std::vector<double> invariant;  // (H^* E)(n)
  double pairing = 0.0;           // |E_u(n) - (H^* E)(n) rho_n|
  bool flagged = false;
};

struct OracleReport {
  std::vector<OracleSite> sites;
  double max_euler_u = 0.0;
  double max_invariant = 0.0;
  double max_pairing = 0.0;
  bool any_flagged = false;
};

OracleReport oracle_compare(const InvariantLagrangian& L, const LatticePath<double>& path);

}  // namespace noether
