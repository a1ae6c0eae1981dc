#include "noether/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace noether {

using json = nlohmann::json;

namespace {

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

[[noreturn]] void fail(const std::string& field, const std::string& what) { throw ParseError(field + ": " + what); }

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

long integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<long>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

ActionKind action(const json& doc) {
  const auto& tag = require(doc, "action", "");
  if (!tag.is_string()) fail("action", "expected a string tag");
  try {
    return action_from_string(tag.get<std::string>());
  } catch (const Error& e) {
    fail("action", e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json points_json(const std::vector<double>& xs, const std::vector<double>& ys) {
  json out = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(ys.empty() ? json::array({xs[i]}) : json::array({xs[i], ys[i]}));
  return out;
}

void split_points(const json& j, const std::string& field, int dim, std::vector<double>& xs, std::vector<double>& ys) {
  if (!j.is_array()) fail(field, "expected an array of points");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const auto p = numbers(j[i], f);
    if (static_cast<int>(p.size()) != dim) fail(f, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(p.size()));
    xs.push_back(p[0]);
    if (dim == 2) ys.push_back(p[1]);
  }
}

std::map<int, int> exponents(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected a map shift -> exponent");
  std::map<int, int> out;
  for (const auto& [key, value] : j.items()) {
    const std::string f = field + "." + key;
    int shift = 0;
    std::size_t used = 0;
    try {
      shift = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size()) fail(f, "shift must be an integer");
    if (!value.is_number_integer() || value.get<long>() < 0) fail(f, "exponent must be a nonnegative integer");
    out[shift] = value.get<int>();
  }
  return out;
}

json exponents_json(const std::map<int, int>& m) {
  json out = json::object();
  for (const auto& [s, e] : m) out[std::to_string(s)] = e;
  return out;
}

json lagrangian_json(const InvariantLagrangian& L) {
  const auto* terms = L.monomials();
  if (!terms) throw Error(ErrorCode::InvalidArgument, "only polynomial Lagrangians serialize");
  json out = json::array();
  for (const auto& t : *terms) {
    json term = {{"coeff", t.coeff}, {"kappa", exponents_json(t.kappa)}};
    if (!t.tau.empty()) term["tau"] = exponents_json(t.tau);
    out.push_back(term);
  }
  return json{{"terms", out}};
}

InvariantLagrangian lagrangian_from(const json& doc, ActionKind kind, const std::string& where) {
  const auto& terms = require(doc, "terms", where);
  const std::string base = where.empty() ? "terms" : where + ".terms";
  if (!terms.is_array()) fail(base, "expected an array");
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string f = base + "[" + std::to_string(i) + "]";
    Monomial m;
    m.coeff = number(require(terms[i], "coeff", f), f + ".coeff");
    if (terms[i].contains("kappa")) m.kappa = exponents(terms[i]["kappa"], f + ".kappa");
    if (terms[i].contains("tau")) {
      if (kind == ActionKind::SL2Projective) fail(f + ".tau", "the projective action has no tau invariant");
      m.tau = exponents(terms[i]["tau"], f + ".tau");
    }
    out.push_back(std::move(m));
  }
  return InvariantLagrangian::polynomial(std::move(out));
}

}  // namespace

LatticePath<double> parse_path(const std::string& text) {
  const json doc = parse_text(text);
  const ActionKind kind = action(doc);
  const long offset = doc.contains("offset") ? integer(doc["offset"], "offset") : 0;
  const int dim = point_dim(kind);
  std::vector<double> xs, ys;
  split_points(require(doc, "points", ""), "points", dim, xs, ys);
  LatticePath<double> path(kind, offset, std::move(xs), std::move(ys));
  if (doc.contains("velocities")) {
    std::vector<double> vx, vy;
    split_points(doc["velocities"], "velocities", dim, vx, vy);
    if (vx.size() != path.size()) fail("velocities", "expected one velocity per point");
    path.set_velocities(std::move(vx), std::move(vy));
  }
  return path;
}

std::string emit_path(const LatticePath<double>& path) {
  json doc = {{"action", std::string(to_string(path.kind()))}, {"offset", path.offset()}, {"points", points_json(path.xs(), path.ys())}};
  if (path.has_velocities()) doc["velocities"] = points_json(path.vxs(), path.vys());
  return dump(doc);
}

InvariantLagrangian parse_lagrangian(const std::string& text, ActionKind kind) {
  return lagrangian_from(parse_text(text), kind, "");
}

std::string emit_lagrangian(const InvariantLagrangian& L) { return dump(lagrangian_json(L)); }

InvariantSequence<double> parse_invariants(const std::string& text) {
  const json doc = parse_text(text);
  InvariantSequence<double> inv;
  inv.kind = action(doc);
  inv.kappa.values = numbers(require(doc, "kappa", ""), "kappa");
  inv.kappa.offset = doc.contains("kappa_offset") ? integer(doc["kappa_offset"], "kappa_offset") : 0;
  if (inv.kind != ActionKind::SL2Projective) {
    inv.tau.values = numbers(require(doc, "tau", ""), "tau");
    inv.tau.offset = doc.contains("tau_offset") ? integer(doc["tau_offset"], "tau_offset") : 0;
  } else if (doc.contains("tau")) {
    fail("tau", "the projective action has no tau invariant");
  }
  return inv;
}

std::string emit_invariants(const InvariantSequence<double>& inv) {
  json doc = {{"action", std::string(to_string(inv.kind))}, {"kappa_offset", inv.kappa.offset}, {"kappa", inv.kappa.values}};
  if (inv.kind != ActionKind::SL2Projective) {
    doc["tau_offset"] = inv.tau.offset;
    doc["tau"] = inv.tau.values;
  }
  return dump(doc);
}

ConstantsDocument parse_constants(const std::string& text, ActionKind kind) {
  const json doc = parse_text(text);
  ConstantsDocument out;
  out.k = numbers(require(doc, "k", ""), "k");
  out.constants = numbers(require(doc, "constants", ""), "constants");
  out.base = doc.contains("base") ? integer(doc["base"], "base") : 0;
  if (doc.contains("lagrangian")) {
    out.lagrangian = lagrangian_from(doc["lagrangian"], kind, "lagrangian");
  } else {
    const auto& V = require(doc, "V", "");
    if (!V.is_array()) fail("V", "expected an array of vectors");
    out.V.offset = doc.contains("V_offset") ? integer(doc["V_offset"], "V_offset") : out.base;
    for (std::size_t i = 0; i < V.size(); ++i) out.V.values.push_back(numbers(V[i], "V[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string emit_constants(const ConstantsDocument& doc) {
  json out = {{"k", doc.k}, {"constants", doc.constants}, {"base", doc.base}};
  if (doc.lagrangian) {
    out["lagrangian"] = lagrangian_json(*doc.lagrangian);
  } else {
    out["V_offset"] = doc.V.offset;
    out["V"] = doc.V.values;
  }
  return dump(out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace noether
