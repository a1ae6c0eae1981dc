#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "noether/io.hpp"
#include "noether/properties.hpp"
#include "noether/solver.hpp"

namespace py = pybind11;
using namespace noether;

namespace {

using Path = LatticePath<double>;
using Invariants = InvariantSequence<double>;
using Rows = std::vector<std::vector<double>>;

Rows to_rows(const Matrix<double>& m) {
  Rows out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

ActionKind kind_of(const py::object& o) {
  if (py::isinstance<py::str>(o)) return action_from_string(o.cast<std::string>());
  return o.cast<ActionKind>();
}

Path make_path(const py::object& kind, const Rows& points, long offset) {
  const ActionKind k = kind_of(kind);
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    if (p.size() != static_cast<std::size_t>(point_dim(k)))
      throw Error(ErrorCode::DimensionMismatch, "point has the wrong number of coordinates");
    xs.push_back(p[0]);
    if (p.size() == 2) ys.push_back(p[1]);
  }
  return Path(k, offset, std::move(xs), std::move(ys));
}

Rows path_points(const Path& p) {
  Rows out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (point_dim(p.kind()) == 2)
      out.push_back({p.xs()[i], p.ys()[i]});
    else
      out.push_back({p.xs()[i]});
  }
  return out;
}

Invariants make_invariants(const py::object& kind, std::vector<double> kappa, std::vector<double> tau, long kappa_offset,
                           long tau_offset) {
  Invariants inv;
  inv.kind = kind_of(kind);
  if (inv.kind == ActionKind::SL2Projective && !tau.empty())
    throw Error(ErrorCode::DimensionMismatch, "projective invariants have no tau");
  inv.kappa = Series<double>(kappa_offset, std::move(kappa));
  inv.tau = Series<double>(tau_offset, std::move(tau));
  return inv;
}

ReconstructionInput input_from_documents(const std::string& invariants_json, const std::string& constants_json) {
  auto inv = parse_invariants(invariants_json);
  const auto doc = parse_constants(constants_json, inv.kind);
  ReconstructionInput in;
  in.kind = inv.kind;
  in.k = doc.k;
  in.base = doc.base;
  in.constants = doc.constants;
  in.V = doc.lagrangian ? v_series(*doc.lagrangian, inv) : doc.V;
  in.inv = std::move(inv);
  return in;
}

}  // namespace

PYBIND11_MODULE(_noether, m) {
  m.doc() = "Discrete moving frames, invariant Euler-Lagrange equations and Noether conservation laws";

  static py::exception<Error> error(m, "NoetherError", PyExc_RuntimeError);
  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object site = e.site() ? py::object(py::int_(*e.site())) : py::object(py::none());
      const auto args = py::make_tuple(e.what(), std::string(to_string(e.code())), site);
      PyErr_SetObject(error.ptr(), args.ptr());
    } catch (const ParseError& e) {
      parse_error(e.what());
    }
  });

  py::enum_<ActionKind>(m, "ActionKind")
      .value("SL2_LINEAR", ActionKind::SL2Linear)
      .value("SA2", ActionKind::SA2Linear)
      .value("SL2_PROJECTIVE", ActionKind::SL2Projective)
      .def_property_readonly("tag", [](ActionKind k) { return std::string(to_string(k)); });
  m.def("action", &action_from_string, py::arg("tag"), "ActionKind from 'sl2-linear', 'sa2' or 'sl2-projective'.");

  py::class_<Path>(m, "Path")
      .def(py::init(&make_path), py::arg("kind"), py::arg("points"), py::arg("offset") = 0)
      .def_property_readonly("kind", &Path::kind)
      .def_property_readonly("offset", &Path::offset)
      .def_property_readonly("points", &path_points)
      .def("__len__", &Path::size)
      .def(
          "with_velocities",
          [](Path p, const Rows& v) {
            std::vector<double> vx, vy;
            for (const auto& r : v) {
              vx.push_back(r.at(0));
              if (r.size() == 2) vy.push_back(r[1]);
            }
            p.set_velocities(std::move(vx), std::move(vy));
            return p;
          },
          py::arg("velocities"), "Copy carrying one velocity per point.")
      .def("to_json", &emit_path)
      .def_static("from_json", &parse_path, py::arg("text"));

  py::class_<Invariants>(m, "Invariants")
      .def(py::init(&make_invariants), py::arg("kind"), py::arg("kappa"), py::arg("tau") = std::vector<double>{},
           py::arg("kappa_offset") = 0, py::arg("tau_offset") = 0)
      .def_readonly("kind", &Invariants::kind)
      .def_property_readonly("kappa", [](const Invariants& i) { return i.kappa.values; })
      .def_property_readonly("kappa_offset", [](const Invariants& i) { return i.kappa.offset; })
      .def_property_readonly("tau", [](const Invariants& i) { return i.tau.values; })
      .def_property_readonly("tau_offset", [](const Invariants& i) { return i.tau.offset; })
      .def("to_json", &emit_invariants)
      .def_static("from_json", &parse_invariants, py::arg("text"));

  py::class_<InvariantLagrangian>(m, "Lagrangian")
      .def_static(
          "polynomial",
          [](const std::vector<std::tuple<double, std::map<int, int>, std::map<int, int>>>& terms) {
            std::vector<Monomial> ms;
            for (const auto& [c, k, t] : terms) ms.push_back(Monomial{c, k, t});
            return InvariantLagrangian::polynomial(std::move(ms));
          },
          py::arg("terms"), "Sum of (coeff, {shift: exponent} for kappa, {shift: exponent} for tau).")
      .def_static("constant", &InvariantLagrangian::constant, py::arg("value"))
      .def_static(
          "from_json", [](const std::string& text, const py::object& kind) { return parse_lagrangian(text, kind_of(kind)); },
          py::arg("text"), py::arg("kind"))
      .def("to_json", &emit_lagrangian)
      .def("__call__", [](const InvariantLagrangian& L, const Invariants& inv, long n) { return L.value(inv, n); },
           py::arg("invariants"), py::arg("n"));

  m.def("invariants", &invariants_of<double>, py::arg("path"));
  m.def(
      "frame", [](const Path& p, long k) { return to_rows(frame_at(p, k).standard_rep()); }, py::arg("path"), py::arg("k"),
      "Right frame rho_k in the standard representation.");
  m.def(
      "maurer_cartan", [](const Invariants& inv, long k) { return to_rows(maurer_cartan(inv, k).standard_rep()); },
      py::arg("invariants"), py::arg("k"), "K_k = rho_{k+1} rho_k^{-1} built from the invariants.");
  m.def(
      "adjoint",
      [](const py::object& kind, const std::vector<double>& g) {
        const ActionKind k = kind_of(kind);
        if (g.size() != (k == ActionKind::SA2Linear ? 6u : 4u))
          throw Error(ErrorCode::DimensionMismatch, "expected (a, b, c, d) or (a, b, c, d, alpha, beta)");
        const auto e = g.size() == 6 ? GroupElement<double>::make(k, g[0], g[1], g[2], g[3], g[4], g[5])
                                     : GroupElement<double>::make(k, g[0], g[1], g[2], g[3]);
        return to_rows(adjoint_matrix(e));
      },
      py::arg("kind"), py::arg("g"));
  m.def("syzygy_residual", &syzygy_residual<double>, py::arg("path"), py::arg("k"),
        "d kappa/dt - H sigma at site k; the path must carry velocities.");

  m.def(
      "euler_lagrange", [](const InvariantLagrangian& L, const Invariants& inv, long n) { return el_residual(L, inv, n); },
      py::arg("lagrangian"), py::arg("invariants"), py::arg("n"));
  m.def("el_residual_max", &el_residual_max, py::arg("lagrangian"), py::arg("invariants"));
  m.def("pairing_check", &pairing_check, py::arg("lagrangian"), py::arg("path"));

  py::class_<ConservationRecord>(m, "Conservation")
      .def_readonly("kind", &ConservationRecord::kind)
      .def_readonly("offset", &ConservationRecord::offset)
      .def_readonly("V", &ConservationRecord::V)
      .def_readonly("k_n", &ConservationRecord::k_n)
      .def_readonly("k", &ConservationRecord::k)
      .def_readonly("drift", &ConservationRecord::drift);
  m.def("noether_constant", &noether_constant, py::arg("lagrangian"), py::arg("path"));
  m.def(
      "first_integral",
      [](const py::object& kind, const std::vector<double>& w) { return first_integral(kind_of(kind), w); },
      py::arg("kind"), py::arg("w"));

  py::class_<ReconstructionInput>(m, "ReconstructionInput")
      .def_readonly("kind", &ReconstructionInput::kind)
      .def_readonly("k", &ReconstructionInput::k)
      .def_readonly("base", &ReconstructionInput::base)
      .def_readonly("constants", &ReconstructionInput::constants)
      .def_property_readonly("max_length", &max_reconstruction_length)
      .def("conditioning", &reconstruction_conditioning, py::arg("length"))
      .def_static("from_path", &reconstruction_input_from_path, py::arg("lagrangian"), py::arg("path"))
      .def_static("from_json", &input_from_documents, py::arg("invariants"), py::arg("constants"));
  py::class_<ReconstructionResult>(m, "Reconstruction")
      .def_readonly("path", &ReconstructionResult::path)
      .def_readonly("imaginary_residual", &ReconstructionResult::imaginary_residual);
  m.def("reconstruct", &reconstruct, py::arg("input"), py::arg("length"));

  m.def(
      "solve_forward",
      [](const InvariantLagrangian& L, const Invariants& leading, std::size_t length) {
        SolveConfig config;
        config.length = length;
        return step_el_forward(L, leading, config);
      },
      py::arg("lagrangian"), py::arg("leading"), py::arg("length") = 16);
  m.def(
      "extremal_path", [](const InvariantLagrangian& L, const Path& seed) { return extremal_path_by_gradient(L, seed); },
      py::arg("lagrangian"), py::arg("seed"), "Stationary point of the action with the end windows clamped.");
  m.def("path_from_invariants", [](const Invariants& inv, long first) {
    return path_from_invariants(inv, GroupElement<double>::identity(inv.kind), first);
  }, py::arg("invariants"), py::arg("first") = 0);

  m.def(
      "verify",
      [](const py::object& kind, int trials, std::uint64_t seed) {
        py::list out;
        for (const auto& r : run_property_suite(kind_of(kind), trials, seed).results) {
          py::dict d;
          d["name"] = r.name;
          d["trials"] = r.trials;
          d["value"] = r.value;
          d["threshold"] = r.threshold;
          d["lower_bound"] = r.lower_bound;
          d["pass"] = r.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("kind"), py::arg("trials") = 100, py::arg("seed") = 42, "Randomized property suite, one dict per property.");
}
