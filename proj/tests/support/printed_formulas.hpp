#pragma once

// Closed-form expansions of the adjoint matrices, boundary coefficients and
// conservation vectors, written out term by term and compared against the
// mechanically assembled values on random paths.

#include <cstdint>
#include <string>
#include <vector>

#include "noether/group.hpp"

namespace noether::audit {

struct AuditItem {
  std::string name;
  ActionKind kind = ActionKind::SL2Linear;
  bool known_discrepant = false;  // the expansion is expected to differ
  double deviation = 0.0;         // max |printed - mechanical| / (1 + |mechanical|)
  bool has_correction = false;    // a corrected expansion was also evaluated
  double corrected_deviation = 0.0;
  int samples = 0;

  bool agrees() const { return samples > 0 && deviation < 1e-10; }
  /// Known discrepancies must differ, and the corrected expansion must agree.
  bool as_expected() const;
};

/// Runs every comparison on `trials` random paths per action.
std::vector<AuditItem> run_audit(int trials, std::uint64_t seed);

/// All agreements hold and every known discrepancy reproduces with its
/// correction agreeing.
bool audit_passes(const std::vector<AuditItem>& items);

}  // namespace noether::audit
