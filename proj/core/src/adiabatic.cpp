#include "zener/adiabatic.hpp"

#include <sstream>

#include "zener/estimates.hpp"

namespace zener {

namespace {

// 0 below the window, 1 inside, 2 above. Validates the window.
std::vector<int> block_labels(const SpectralFrame& f, int m, Half half) {
  (void)band_projector(f, m, half);  // edge and count checks
  const double lo = window_lower(m, half), hi = window_upper(m, half);
  std::vector<int> g(f.E.size());
  for (Eigen::Index a = 0; a < f.E.size(); ++a)
    g[a] = f.E(a) <= lo ? 0 : (f.E(a) < hi ? 1 : 2);
  return g;
}

MatC rate_in_eigenbasis(const FiberModel& model, const SpectralFrame& f) {
  const VecR rate = model.diagonal_rate(f.t);
  return f.vecs.adjoint() * rate.cast<cplx>().asDiagonal() * f.vecs;
}

MatC block_projector(const SpectralFrame& f, const std::vector<int>& g, int b) {
  MatC P = MatC::Zero(f.vecs.rows(), f.vecs.rows());
  for (size_t a = 0; a < g.size(); ++a)
    if (g[a] == b) P += f.vecs.col(a) * f.vecs.col(a).adjoint();
  return P;
}

}  // namespace

AdiabaticGenerator adiabatic_generator(const FiberModel& model, int m,
                                       Half half, double t) {
  const MatC H = model.hamiltonian(t);
  const SpectralFrame f = diagonalize(H, t);
  const std::vector<int> g = block_labels(f, m, half);
  const MatC Hd = rate_in_eigenbasis(model, f);
  const Eigen::Index d = H.rows();
  MatC Xe = MatC::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a = 0; a < d; ++a)
      if (g[a] != g[b]) Xe(a, b) = I * Hd(a, b) / (f.E(a) - f.E(b));
  AdiabaticGenerator gen;
  gen.m = m;
  gen.t = t;
  gen.X = f.vecs * Xe * f.vecs.adjoint();
  const MatC herm = 0.5 * (gen.X + gen.X.adjoint());
  gen.antihermitian_defect = (0.5 * (gen.X - gen.X.adjoint())).norm();
  gen.HA = H - herm;
  return gen;
}

double block_diagonal_defect(const FiberModel& model, int m, Half half,
                             const AdiabaticGenerator& g) {
  const SpectralFrame f = diagonalize(model.hamiltonian(g.t), g.t);
  const std::vector<int> lab = block_labels(f, m, half);
  double worst = 0.0;
  for (int b = 0; b < 3; ++b) {
    const MatC P = block_projector(f, lab, b);
    worst = std::max(worst, operator_norm(P * g.X * P));
  }
  return worst;
}

ProjectorDerivative projector_derivative(const FiberModel& model, int m,
                                         double t, Half half, double h) {
  for (int attempt = 0;; ++attempt) {
    try {
      auto Q = [&](double s) {
        return band_projector(diagonalize(model.hamiltonian(s), s), m, half).P;
      };
      const MatC d1 = (Q(t + h) - Q(t - h)) / (2.0 * h);
      const MatC d2 = (Q(t + 2 * h) - Q(t - 2 * h)) / (4.0 * h);
      ProjectorDerivative pd;
      pd.dQ = (4.0 * d1 - d2) / 3.0;
      pd.error_estimate = operator_norm(d1 - d2) / 3.0;
      pd.h = h;
      return pd;
    } catch (const WindowError&) {
      if (attempt >= 3) throw;
      h *= 0.5;
    }
  }
}

MatC projector_derivative_exact(const FiberModel& model, int m, double t,
                                Half half) {
  const SpectralFrame f = diagonalize(model.hamiltonian(t), t);
  const std::vector<int> g = block_labels(f, m, half);
  const MatC Hd = rate_in_eigenbasis(model, f);
  const Eigen::Index d = Hd.rows();
  MatC De = MatC::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a = 0; a < d; ++a) {
      const bool ina = g[a] == 1, inb = g[b] == 1;
      if (ina == inb) continue;
      const double ein = ina ? f.E(a) : f.E(b), eout = ina ? f.E(b) : f.E(a);
      De(a, b) = Hd(a, b) / (ein - eout);
    }
  return f.vecs * De * f.vecs.adjoint();
}

AdiabaticPropagation adiabatic_propagate(const FiberModel& model, int m,
                                         Half half,
                                         const IntegratorConfig& cfg) {
  validate(cfg);
  const double t0 = half_start(half), t1 = half_end(half);
  AdiabaticHamiltonian HA(model, m, half);
  AdiabaticPropagation out;
  out.UA = propagate_matrix(HA, t0, t1, cfg);
  out.unitarity_defect = unitarity_defect(out.UA);
  const MatC Q0 = band_projector(diagonalize(model.hamiltonian(t0), t0), m, half).P;
  const MatC Q1 = band_projector(diagonalize(model.hamiltonian(t1), t1), m, half).P;
  out.intertwining_defect = operator_norm(Q1 * out.UA - out.UA * Q0);
  return out;
}

Truncation adiabatic_truncation(int m, int buffer, double tail_tolerance) {
  Truncation tr;
  tr.M = m + buffer + 16;
  tr.tail_tolerance = tail_tolerance;
  return tr;
}

AdiabaticErrorReport adiabatic_error(const FiberModel& model, int m, Half half,
                                     const IntegratorConfig& cfg, int buffer) {
  const double t0 = half_start(half), t1 = half_end(half);
  if (m + buffer > model.truncation().M)
    throw ConfigError("adiabatic check: truncation too small for m + buffer");
  const MatC U = propagate_matrix(model, t0, t1, cfg);
  const AdiabaticPropagation ap = adiabatic_propagate(model, m, half, cfg);
  const SpectralFrame f0 = diagonalize(model.hamiltonian(t0), t0);
  const double cut = window_upper(m + buffer, half);
  int k = 0;
  while (k < f0.E.size() && f0.E(k) < cut) ++k;
  AdiabaticErrorReport rep;
  rep.m = m;
  rep.half = half;
  rep.buffer = buffer;
  rep.error = operator_norm((U - ap.UA) * f0.vecs.leftCols(k));
  rep.bound = b_of_m(m, model.potential().decay_exponent()) / bracket(m);
  rep.unitarity_defect = ap.unitarity_defect;
  rep.intertwining_defect = ap.intertwining_defect;
  return rep;
}

}  // namespace zener
