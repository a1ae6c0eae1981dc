#pragma once

// JSON documents for paths, Lagrangians, invariant sequences and
// reconstruction constants.

#include <stdexcept>
#include <string>

#include "noether/reconstruction.hpp"

namespace noether {

/// Malformed or ill-shaped document. `what()` names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LatticePath<double> parse_path(const std::string& text);
std::string emit_path(const LatticePath<double>& path);

/// `kind` rejects tau terms for the projective action.
InvariantLagrangian parse_lagrangian(const std::string& text, ActionKind kind);
std::string emit_lagrangian(const InvariantLagrangian& L);

InvariantSequence<double> parse_invariants(const std::string& text);
std::string emit_invariants(const InvariantSequence<double>& inv);

/// Constants for reconstruction: k, integration constants and base site,
/// with V either listed per site or computed from a Lagrangian.
struct ConstantsDocument {
  std::vector<double> k;
  std::vector<double> constants;
  long base = 0;
  Series<std::vector<double>> V;  // empty when `lagrangian` is set
  std::optional<InvariantLagrangian> lagrangian;
};
ConstantsDocument parse_constants(const std::string& text, ActionKind kind);
std::string emit_constants(const ConstantsDocument& doc);

std::string read_file(const std::string& path);

}  // namespace noether
