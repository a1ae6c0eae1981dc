#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "noether/io.hpp"
#include "noether/properties.hpp"

using namespace noether;
using json = nlohmann::json;

namespace {

enum Exit { kPass = 0, kParse = 1, kDegenerate = 2, kCheckFailed = 3, kHypothesis = 4 };

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::DegenerateConstants:
      return kHypothesis;
    case ErrorCode::InvalidArgument:
    case ErrorCode::KindMismatch:
      return kParse;
    case ErrorCode::NewtonDivergence:
    case ErrorCode::SingularJacobian:
    case ErrorCode::NonConvergence:
      return kCheckFailed;
    default:
      return kDegenerate;
  }
}

int cmd_invariants(const std::string& path_file) {
  const auto path = parse_path(read_file(path_file));
  std::cout << emit_invariants(invariants_of(path));
  return kPass;
}

int cmd_check(const std::string& path_file, const std::string& lagrangian_file) {
  const auto path = parse_path(read_file(path_file));
  const auto L = parse_lagrangian(read_file(lagrangian_file), path.kind());
  const double residual = el_residual_max(L, invariants_of(path));
  const auto rec = noether_constant(L, path);
  const json out = {{"el_residual_max", residual},
                    {"noether_k", rec.k},
                    {"drift", rec.drift},
                    {"first_integral", first_integral(path.kind(), rec.k)}};
  std::cout << out.dump(2) << "\n";
  return residual < 1e-8 && rec.drift < 1e-8 ? kPass : kCheckFailed;
}

int cmd_reconstruct(const std::string& tag, const std::string& inv_file, const std::string& constants_file, std::size_t length) {
  const ActionKind kind = action_from_string(tag);
  auto inv = parse_invariants(read_file(inv_file));
  if (inv.kind != kind) throw ParseError("invariants: action does not match --action");
  auto doc = parse_constants(read_file(constants_file), kind);
  ReconstructionInput in;
  in.kind = kind;
  in.k = doc.k;
  in.base = doc.base;
  in.constants = doc.constants;
  in.V = doc.lagrangian ? v_series(*doc.lagrangian, inv) : doc.V;
  in.inv = std::move(inv);
  const auto out = reconstruct(in, length);
  std::cout << emit_path(out.path);
  return kPass;
}

int cmd_verify(const std::string& tag, int trials, std::uint64_t seed) {
  if (trials < 0) throw ParseError("--trials: must be nonnegative");
  const auto report = run_property_suite(action_from_string(tag), trials, seed);
  std::vector<std::string> failed;
  for (const auto& r : report.results) {
    if (r.trials == 0) continue;
    std::printf("%-28s %-15s %6d  %s %.3e  %s %.1e  %s\n", r.name.c_str(), std::string(to_string(r.kind)).c_str(), r.trials,
                r.lower_bound ? "min" : "max", r.value, r.lower_bound ? ">" : "<", r.threshold, r.pass ? "PASS" : "FAIL");
    if (!r.pass) failed.push_back(r.name);
  }
  if (failed.empty()) return kPass;
  std::fprintf(stderr, "failed properties:");
  for (const auto& f : failed) std::fprintf(stderr, " %s", f.c_str());
  std::fprintf(stderr, "\n");
  return kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete moving-frame invariants, Euler-Lagrange equations and conservation laws"};
  app.require_subcommand(1);

  std::string path_file, lagrangian_file, tag, inv_file, constants_file;
  std::size_t length = 0;
  int trials = 100;
  std::uint64_t seed = 42;

  auto* inv_cmd = app.add_subcommand("invariants", "Print the kappa (and tau) sequences of a path");
  inv_cmd->add_option("--path", path_file, "PathDocument JSON")->required();

  auto* check_cmd = app.add_subcommand("check", "EL residual, Noether constant, drift and first integral");
  check_cmd->add_option("--path", path_file, "PathDocument JSON")->required();
  check_cmd->add_option("--lagrangian", lagrangian_file, "LagrangianDocument JSON")->required();

  auto* rec_cmd = app.add_subcommand("reconstruct", "Rebuild a path from invariants and conservation constants");
  rec_cmd->add_option("--action", tag, "sl2-linear | sa2 | sl2-projective")->required();
  rec_cmd->add_option("--invariants", inv_file, "invariants JSON")->required();
  rec_cmd->add_option("--constants", constants_file, "constants JSON")->required();
  rec_cmd->add_option("--length", length, "number of points")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized property suite");
  verify_cmd->add_option("--action", tag, "sl2-linear | sa2 | sl2-projective")->required();
  verify_cmd->add_option("--trials", trials, "trials per property");
  verify_cmd->add_option("--seed", seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kParse;
  }

  try {
    if (const char* eps = std::getenv("NOETHER_EPS")) {
      char* end = nullptr;
      const double v = std::strtod(eps, &end);
      if (end == eps || *end != '\0') throw ParseError("NOETHER_EPS: expected a number");
      set_epsilon(v);
    }
    if (*inv_cmd) return cmd_invariants(path_file);
    if (*check_cmd) return cmd_check(path_file, lagrangian_file);
    if (*rec_cmd) return cmd_reconstruct(tag, inv_file, constants_file, length);
    return cmd_verify(tag, trials, seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e);
  }
}
