#include "noether/reconstruction.hpp"

#include <algorithm>
#include <cmath>

namespace noether {

namespace {

using Cx = std::complex<double>;

double relative_imag(const Cx& z) { return std::abs(z.imag()) / std::max(1.0, std::abs(z.real())); }

void require_length(const ReconstructionInput& in, std::size_t length) {
  if (length == 0) throw Error(ErrorCode::InvalidArgument, "reconstruction length must be positive");
  if (length > max_reconstruction_length(in))
    throw Error(ErrorCode::WindowOutOfRange,
                "requested " + std::to_string(length) + " points but data supports " +
                    std::to_string(max_reconstruction_length(in)));
}

void require_constants(const ReconstructionInput& in, std::size_t count) {
  if (static_cast<int>(in.k.size()) != group_dim(in.kind))
    throw Error(ErrorCode::DimensionMismatch, "k must have length " + std::to_string(group_dim(in.kind)));
  if (in.constants.size() != count)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(count) + " integration constants");
}

// Shared by both SL(2) actions: checks k3 (k1^2 + 4 k2 k3) != 0 and returns mu.
Cx sl2_mu(const std::vector<double>& k) {
  const double disc = k[0] * k[0] + 4.0 * k[1] * k[2];
  if (!(std::abs(k[2] * disc) > epsilon()))
    throw Error(ErrorCode::DegenerateConstants, "k3*(k1^2+4k2k3) must be nonzero");
  return std::sqrt(Cx(disc));
}

// Eigenvector basis of [[k1, 2k2], [2k3, -k1]]: columns for -mu and +mu.
struct Basis {
  Cx q00, q01, q10, q11;
  Cx i00, i01, i10, i11;

  Basis(Cx c0, Cx c1, Cx c2, Cx c3) : q00(c0), q01(c1), q10(c2), q11(c3) {
    const Cx det = q00 * q11 - q01 * q10;
    if (std::abs(det) <= epsilon()) throw Error(ErrorCode::DegenerateConstants, "diagonalizing matrix is singular");
    i00 = q11 / det;
    i01 = -q01 / det;
    i10 = -q10 / det;
    i11 = q00 / det;
  }
};

// (a, b) from the linear Groebner relations given (c, d) at a site.
std::pair<Cx, Cx> sl2_ab(const std::vector<double>& k, const std::vector<double>& V, Cx c, Cx d) {
  const Cx a = (c * (k[0] + V[0]) + 2.0 * k[1] * d) / (2.0 * V[1]);
  const Cx b = (2.0 * c * k[2] - (k[0] - V[0]) * d) / (2.0 * V[1]);
  return {a, b};
}

const std::vector<double>& v_at(const ReconstructionInput& in, long n, ErrorCode zero_code) {
  const auto& V = in.V.at(n);
  if (static_cast<int>(V.size()) != group_dim(in.kind))
    throw Error(ErrorCode::DimensionMismatch, "V has the wrong length", n);
  if (zero_code == ErrorCode::ZeroV2 && !(std::abs(V[1]) > epsilon()))
    throw Error(ErrorCode::ZeroV2, "V^2 vanishes", n);
  if (zero_code == ErrorCode::ZeroV45 && !(std::abs(V[3] * V[4]) > epsilon()))
    throw Error(ErrorCode::ZeroV45, "V^4 V^5 vanishes", n);
  return V;
}

// Common driver for the two diagonalized SL(2) recurrences. `step` returns
// the pair of eigenvalue factors (for the -mu and +mu directions) at site n.
template <class Step, class Point>
ReconstructionResult run_sl2(const ReconstructionInput& in, std::size_t length, Cx mu, Step step, Point point) {
  const auto& k = in.k;
  const Basis Q(k[0] - mu, k[0] + mu, Cx(2.0 * k[2]), Cx(2.0 * k[2]));
  const Cx c0(in.constants[0]), d0(in.constants[1]);
  const Cx w0 = Q.i00 * c0 + Q.i01 * d0;
  const Cx w1 = Q.i10 * c0 + Q.i11 * d0;
  Cx log1(0.0), log2(0.0);
  ReconstructionResult out;
  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < length; ++j) {
    const long n = in.base + static_cast<long>(j);
    const auto& V = v_at(in, n, ErrorCode::ZeroV2);
    // Products over l < j, kept in log form against overflow.
    const Cx p1 = j == 0 ? Cx(1.0) : std::exp(log1);
    const Cx p2 = j == 0 ? Cx(1.0) : std::exp(log2);
    const Cx c = Q.q00 * p1 * w0 + Q.q01 * p2 * w1;
    const Cx d = Q.q10 * p1 * w0 + Q.q11 * p2 * w1;
    const auto [a, b] = sl2_ab(k, V, c, d);
    const auto [x, y] = point(a, b, c, d, n);
    for (const Cx& z : {a, b, c, d, x, y}) out.imaginary_residual = std::max(out.imaginary_residual, relative_imag(z));
    xs.push_back(x.real());
    if (point_dim(in.kind) == 2) ys.push_back(y.real());
    Matrix<double> g(2, 2);
    g(0, 0) = a.real();
    g(0, 1) = b.real();
    g(1, 0) = c.real();
    g(1, 1) = d.real();
    out.frames.push_back(GroupElement<double>::from_parts(in.kind, g));
    if (j + 1 < length) {
      const auto [l1, l2] = step(n, V);
      log1 += std::log(l1);
      log2 += std::log(l2);
    }
  }
  if (out.imaginary_residual > 1e-9)
    throw Error(ErrorCode::NonConvergence,
                "reconstructed path keeps an imaginary part of " + std::to_string(out.imaginary_residual));
  out.path = LatticePath<double>(in.kind, in.base, std::move(xs), std::move(ys));
  return out;
}

}  // namespace

std::vector<double> integration_constants(const GroupElement<double>& rho) {
  if (rho.kind() == ActionKind::SA2Linear) return {rho.c()};
  return {rho.c(), rho.d()};
}

ReconstructionInput reconstruction_input_from_path(const InvariantLagrangian& L, const LatticePath<double>& path) {
  ReconstructionInput in;
  in.kind = path.kind();
  in.inv = invariants_of(path);
  in.V = v_series(L, in.inv);
  const auto rec = noether_constant(L, path);
  in.k = rec.k;
  in.base = rec.offset;
  in.constants = integration_constants(frame_at(path, in.base));
  return in;
}

std::size_t max_reconstruction_length(const ReconstructionInput& in) {
  long end = in.V.end();
  // Stepping from site n to n + 1 reads kappa_n (and tau_n).
  end = std::min(end, in.inv.kappa.end() + 1);
  if (in.kind == ActionKind::SL2Linear) end = std::min(end, in.inv.tau.end() + 1);
  if (in.base < in.V.first() || in.base >= end) return 0;
  return static_cast<std::size_t>(end - in.base);
}

ReconstructionResult reconstruct_sl2_linear(const ReconstructionInput& in, std::size_t length) {
  if (in.kind != ActionKind::SL2Linear) throw Error(ErrorCode::KindMismatch, "expected the linear SL(2) action");
  require_constants(in, 2);
  require_length(in, length);
  const auto& k = in.k;
  const Cx mu = sl2_mu(k);
  auto step = [&](long n, const std::vector<double>& V) {
    const double zeta = -in.inv.t(n) / (2.0 * V[1]);
    return std::pair<Cx, Cx>{zeta * (V[0] - mu), zeta * (V[0] + mu)};
  };
  auto point = [](Cx, Cx, Cx c, Cx d, long) { return std::pair<Cx, Cx>{d, -c}; };
  return run_sl2(in, length, mu, step, point);
}

ReconstructionResult reconstruct_sl2_projective(const ReconstructionInput& in, std::size_t length) {
  if (in.kind != ActionKind::SL2Projective) throw Error(ErrorCode::KindMismatch, "expected the projective action");
  require_constants(in, 2);
  require_length(in, length);
  const Cx mu = sl2_mu(in.k);
  auto step = [&](long n, const std::vector<double>& V) {
    const double kap = in.inv.k(n);
    require_nonzero(kap, ErrorCode::DegenerateInvariants, "kappa", n);
    require_nonzero(kap - 1.0, ErrorCode::DegenerateInvariants, "kappa - 1", n);
    const Cx r = std::sqrt(Cx((kap - 1.0) / (4.0 * kap)));
    const double w = (3.0 * kap + 1.0) / ((kap - 1.0) * V[1]);
    return std::pair<Cx, Cx>{r * (1.0 - w * (V[0] - mu)), r * (1.0 - w * (V[0] + mu))};
  };
  auto point = [](Cx a, Cx b, Cx c, Cx d, long n) {
    const Cx den = 2.0 * a - c;
    if (!(std::abs(den) > epsilon())) throw Error(ErrorCode::ZeroDenominator, "2a - c vanishes", n);
    return std::pair<Cx, Cx>{(d - 2.0 * b) / den, Cx(0.0)};
  };
  return run_sl2(in, length, mu, step, point);
}

ReconstructionResult reconstruct_sa2(const ReconstructionInput& in, std::size_t length) {
  if (in.kind != ActionKind::SA2Linear) throw Error(ErrorCode::KindMismatch, "expected the SA(2) action");
  require_constants(in, 1);
  require_length(in, length);
  const auto& k = in.k;
  if (!(std::abs(k[3] * k[4]) > epsilon())) throw Error(ErrorCode::DegenerateConstants, "k4*k5 must be nonzero");
  ReconstructionResult out;
  std::vector<double> xs, ys;
  double c = in.constants[0];
  for (std::size_t j = 0; j < length; ++j) {
    const long n = in.base + static_cast<long>(j);
    const auto& V = v_at(in, n, ErrorCode::ZeroV45);
    const double a = (k[3] - c * V[4]) / V[3];
    const double b = (k[3] * k[4] - V[3] * V[4] - k[4] * V[4] * c) / (V[3] * k[3]);
    const double d = (V[3] + k[4] * c) / k[3];
    const auto [alpha, beta] = sa2_printed_translation(k, V, c);
    const Matrix<double> lin{{a, b}, {c, d}};
    out.frames.push_back(GroupElement<double>::from_parts(in.kind, lin, alpha, beta));
    xs.push_back(-d * alpha + b * beta);
    ys.push_back(c * alpha - a * beta);
    if (j + 1 < length) {
      const double kap = in.inv.k(n);
      c = (kap * V[4] / V[3] - 1.0) * c - k[3] * kap / V[3];
    }
  }
  out.path = LatticePath<double>(in.kind, in.base, std::move(xs), std::move(ys));
  return out;
}

ReconstructionResult reconstruct(const ReconstructionInput& in, std::size_t length) {
  switch (in.kind) {
    case ActionKind::SL2Linear: return reconstruct_sl2_linear(in, length);
    case ActionKind::SA2Linear: return reconstruct_sa2(in, length);
    case ActionKind::SL2Projective: return reconstruct_sl2_projective(in, length);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown action");
}

ReconstructionChecks check_reconstruction(const ReconstructionInput& in, const ReconstructionResult& out) {
  ReconstructionChecks chk;
  const auto& k = in.k;
  const auto& path = out.path;
  for (std::size_t j = 0; j < out.frames.size(); ++j) {
    const long n = in.base + static_cast<long>(j);
    const auto& rho = out.frames[j];
    const auto& V = in.V.at(n);
    const auto back = row_times(k, adjoint_matrix(inverse(rho)));
    for (std::size_t i = 0; i < V.size(); ++i) chk.conservation = std::max(chk.conservation, std::abs(back[i] - V[i]));
    chk.determinant = std::max(chk.determinant, std::abs(determinant(rho.linear()) - 1.0));
    if (in.kind != ActionKind::SA2Linear) {
      const double a = rho.a(), b = rho.b(), c = rho.c(), d = rho.d();
      chk.groebner = std::max({chk.groebner, std::abs(k[2] * c * c - k[0] * c * d - k[1] * d * d + V[1]),
                               std::abs(2.0 * b * V[1] - 2.0 * c * k[2] + (k[0] - V[0]) * d),
                               std::abs(2.0 * a * V[1] - c * (k[0] + V[0]) - 2.0 * k[1] * d),
                               std::abs(first_integral(in.kind, k) - first_integral(in.kind, V))});
    }
    const auto target = normalization_point<double>(in.kind);
    const auto img = act(rho, path.point(n));
    chk.normalization = std::max({chk.normalization, std::abs(img.x - target.x), std::abs(img.y - target.y)});
    if (j + 1 < out.frames.size()) {
      const auto next = compose(maurer_cartan(in.inv, n), rho);
      chk.maurer_cartan =
          std::max(chk.maurer_cartan, max_abs_diff(next.standard_rep(), out.frames[j + 1].standard_rep()));
    }
  }
  return chk;
}

std::pair<double, double> sa2_printed_translation(const std::vector<double>& k, const std::vector<double>& V, double c) {
  const double k2 = k[1], k3 = k[2], k4 = k[3], k5 = k[4];
  const double V2 = V[1], V3 = V[2], V4 = V[3], V5 = V[4];
  const double mu = first_integral(ActionKind::SA2Linear, k);
  const double s = k2 * k5 * k5 + k3 * k4 * k4 + mu;
  const double q = (V4 * k4) * (V4 * k4);
  const double alpha = mu * V5 / q * c * c + (s * V4 * V5 * V5 - 2.0 * mu * k4 * k5 * V5) / (q * V5 * k5) * c +
                       (k2 * k5 * (V4 * V5) * (V4 * V5) - s * V4 * V5 * k4 + k4 * k4 * k5 * (V3 * V4 * V4 + mu)) /
                           (q * V5 * k5);
  const double beta = -mu / (k4 * k4 * V4) * c * c - V4 * s / (k4 * k4 * k5 * V4) * c +
                      (k4 * k4 * V2 - k2 * V4 * V4) / (k4 * k4 * V4);
  return {alpha, beta};
}

double reconstruction_conditioning(const ReconstructionInput& in, std::size_t length) {
  auto norm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  if (in.k.size() != static_cast<std::size_t>(group_dim(in.kind)))
    throw Error(ErrorCode::DimensionMismatch, "k has the wrong length for the action");
  const double kn = 1.0 + norm(in.k);
  double worst;
  if (in.kind == ActionKind::SA2Linear) {
    worst = std::abs(in.k[3] * in.k[4]) / (kn * kn);
  } else {
    const double mu = std::sqrt(std::abs(first_integral(in.kind, in.k)));
    worst = std::min(std::abs(in.k[2]), mu) / kn;
  }
  for (long n = in.base; n < in.base + static_cast<long>(length); ++n) {
    const auto& V = in.V.at(n);
    const double vn = std::max(1.0, norm(V));
    worst = std::min(worst, in.kind == ActionKind::SA2Linear ? std::abs(V[3] * V[4]) / (vn * vn) : std::abs(V[1]) / vn);
  }
  return worst;
}

}  // namespace noether
