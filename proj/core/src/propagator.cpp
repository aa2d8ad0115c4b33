#include "zener/propagator.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "zener/spectral.hpp"

namespace zener {

const char* to_string(Scheme s) {
  return s == Scheme::Midpoint ? "midpoint" : "magnus4";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "midpoint") return Scheme::Midpoint;
  if (s == "magnus4") return Scheme::Magnus4;
  throw ConfigError("unknown integrator scheme '" + s + "'");
}

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step))
    throw ConfigError("integrator step must be positive");
  if (cfg.step > 0.5 / 64.0)
    throw ConfigError("integrator step must be <= 1/64 of a half-period");
}

MatC Hamiltonian::commutator(const MatC& H1, const MatC& H2, double,
                             double) const {
  return H1 * H2 - H2 * H1;
}

MatC FiberHamiltonian::commutator(const MatC&, const MatC&, double t1,
                                  double t2) const {
  const VecR dd = model_.diagonal(t1) - model_.diagonal(t2);
  const MatC& V = model_.coupling();
  MatC C(V.rows(), V.cols());
  for (Eigen::Index j = 0; j < V.cols(); ++j)
    for (Eigen::Index i = 0; i < V.rows(); ++i) C(i, j) = (dd(i) - dd(j)) * V(i, j);
  return C;
}

MatC step_generator(const Hamiltonian& H, double a, double h, Scheme scheme) {
  if (scheme == Scheme::Midpoint) return h * H.at(a + 0.5 * h);
  const double c = std::sqrt(3.0) / 6.0;
  const double t1 = a + (0.5 - c) * h, t2 = a + (0.5 + c) * h;
  const MatC H1 = H.at(t1), H2 = H.at(t2);
  MatC G = (0.5 * h) * (H1 + H2);
  G += (I * (std::sqrt(3.0) / 12.0) * h * h) * H.commutator(H1, H2, t1, t2);
  return G;
}

namespace {

struct StepExp {
  MatC vecs;
  VecC phases;
};

StepExp step_exp(const MatC& G) {
  Eigen::SelfAdjointEigenSolver<MatC> es(G);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigensolver failed in a propagation step");
  StepExp s;
  s.vecs = es.eigenvectors();
  s.phases = (-I * es.eigenvalues().cast<cplx>()).array().exp();
  return s;
}

}  // namespace

int step_count(double t0, double t1, double step) {
  const double len = std::abs(t1 - t0);
  if (len == 0.0) return 0;
  return std::max(1, static_cast<int>(std::ceil(len / step - 1e-9)));
}

namespace {

MatC propagate_steps(const Hamiltonian& H, double t0, double t1, int n,
                     Scheme scheme) {
  MatC U = MatC::Identity(H.dim(), H.dim());
  if (n == 0) return U;
  const double h = (t1 - t0) / n;
  for (int k = 0; k < n; ++k) {
    const StepExp s = step_exp(step_generator(H, t0 + k * h, h, scheme));
    U = s.vecs * (s.phases.asDiagonal() * (s.vecs.adjoint() * U));
  }
  return U;
}

VecC propagate_steps(const Hamiltonian& H, VecC psi, double t0, double t1,
                     int n, Scheme scheme) {
  if (n == 0) return psi;
  const double h = (t1 - t0) / n;
  for (int k = 0; k < n; ++k) {
    const StepExp s = step_exp(step_generator(H, t0 + k * h, h, scheme));
    psi = s.vecs * (s.phases.asDiagonal() * (s.vecs.adjoint() * psi));
  }
  return psi;
}

int scheme_order(Scheme s) { return s == Scheme::Midpoint ? 2 : 4; }

}  // namespace

MatC propagate_matrix(const Hamiltonian& H, double t0, double t1,
                      const IntegratorConfig& cfg) {
  return propagate_steps(H, t0, t1, step_count(t0, t1, cfg.step), cfg.scheme);
}

VecC propagate_vector(const Hamiltonian& H, const VecC& psi, double t0,
                      double t1, const IntegratorConfig& cfg) {
  return propagate_steps(H, psi, t0, t1, step_count(t0, t1, cfg.step),
                         cfg.scheme);
}

Propagation propagate_matrix_converged(const Hamiltonian& H, double t0,
                                       double t1, const IntegratorConfig& cfg,
                                       double tol, int max_doublings,
                                       const std::vector<int>& columns) {
  int n = step_count(t0, t1, cfg.step);
  if (n == 0) return {MatC::Identity(H.dim(), H.dim()), 0, 0.0};
  MatC coarse = propagate_steps(H, t0, t1, n, cfg.scheme);
  for (int d = 0; d <= max_doublings; ++d) {
    MatC fine = propagate_steps(H, t0, t1, 2 * n, cfg.scheme);
    MatC diff = fine - coarse;
    if (!columns.empty()) {
      MatC sel(diff.rows(), static_cast<Eigen::Index>(columns.size()));
      for (size_t j = 0; j < columns.size(); ++j) sel.col(j) = diff.col(columns[j]);
      diff = sel;
    }
    const double est = operator_norm(diff);
    if (est < tol) return {fine, 2 * n, est};
    n *= 2;
    coarse = std::move(fine);
  }
  std::ostringstream os;
  os << "step halving did not reach " << tol << " within " << max_doublings
     << " doublings (" << n << " steps)";
  throw NumericalError(os.str());
}

FiberState propagate_state(const FiberModel& model, const FiberState& state,
                           double t_end, const IntegratorConfig& cfg) {
  validate(cfg);
  const double nrm = state.amplitudes.norm();
  if (std::abs(nrm - 1.0) > 1e-8)
    throw ConfigError("initial state must be normalized");
  FiberHamiltonian H(model);
  const int n = step_count(state.t, t_end, cfg.step);
  VecC coarse = propagate_steps(H, state.amplitudes, state.t, t_end, n, cfg.scheme);
  VecC fine = propagate_steps(H, state.amplitudes, state.t, t_end, 2 * n, cfg.scheme);
  FiberState out;
  out.t = t_end;
  out.halving_estimate = (fine - coarse).norm();
  if (cfg.richardson) {
    const double f = std::pow(2.0, scheme_order(cfg.scheme));
    out.amplitudes = (f * fine - coarse) / (f - 1.0);
  } else {
    out.amplitudes = fine;
  }
  out.norm_defect = std::abs(out.amplitudes.norm() - 1.0);
  const double tail = tail_mass(out.amplitudes, model.truncation());
  if (tail > model.truncation().tail_tolerance) {
    std::ostringstream os;
    os << "tail mass " << tail << " exceeds tolerance "
       << model.truncation().tail_tolerance << "; enlarge M";
    throw TruncationError(os.str(), 2 * model.truncation().M);
  }
  return out;
}

MatC propagate_matrix(const FiberModel& model, double t0, double t1,
                      const IntegratorConfig& cfg) {
  validate(cfg);
  return propagate_matrix(FiberHamiltonian(model), t0, t1, cfg);
}

double unitarity_defect(const MatC& U) {
  const MatC D = U.adjoint() * U - MatC::Identity(U.cols(), U.cols());
  return hermitian_norm(D);
}

MatC shift_matrix(int dim) {
  MatC T = MatC::Zero(dim, dim);
  for (int i = 1; i < dim; ++i) T(i, i - 1) = 1.0;
  return T;
}

}  // namespace zener
