#pragma once

#include <memory>

#include "zener/model.hpp"

namespace zener {

enum class Scheme {
  Midpoint,  // exp(-i h H(t + h/2)), order 2
  Magnus4,   // two-point Gauss Magnus, order 4
};

const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

struct IntegratorConfig {
  double step = 1.0 / 512.0;  // 256 steps per half-period
  Scheme scheme = Scheme::Midpoint;
  bool richardson = false;  // extrapolate state observables from h and h/2
};

void validate(const IntegratorConfig& cfg);

// A time-dependent Hermitian generator i dpsi/dt = H(t) psi.
class Hamiltonian {
 public:
  virtual ~Hamiltonian() = default;
  virtual int dim() const = 0;
  virtual MatC at(double t) const = 0;
  // [H(t1), H(t2)] given the two matrices; overridable when structure helps.
  virtual MatC commutator(const MatC& H1, const MatC& H2, double t1,
                          double t2) const;
};

class FiberHamiltonian : public Hamiltonian {
 public:
  explicit FiberHamiltonian(const FiberModel& model) : model_(model) {}
  int dim() const override { return model_.dim(); }
  MatC at(double t) const override { return model_.hamiltonian(t); }
  // [D1 + V, D2 + V] = [D1 - D2, V], elementwise
  MatC commutator(const MatC& H1, const MatC& H2, double t1,
                  double t2) const override;

 private:
  const FiberModel& model_;
};

// Hermitian G with exp(-iG) the one-step propagator over [a, a+h].
MatC step_generator(const Hamiltonian& H, double a, double h, Scheme scheme);

// Number of equal steps covering [t0, t1] with steps no longer than `step`.
int step_count(double t0, double t1, double step);

MatC propagate_matrix(const Hamiltonian& H, double t0, double t1,
                      const IntegratorConfig& cfg);
VecC propagate_vector(const Hamiltonian& H, const VecC& psi, double t0,
                      double t1, const IntegratorConfig& cfg);

// Propagation with a step-halving convergence estimate.
struct Propagation {
  MatC U;
  int steps = 0;
  double halving_estimate = 0.0;  // ||U_h - U_{h/2}|| on the checked columns
};

// Halves the step until ||U_h - U_{h/2}|| < tol (operator norm restricted to
// `columns`, all columns when empty). Throws NumericalError after
// max_doublings halvings.
Propagation propagate_matrix_converged(const Hamiltonian& H, double t0,
                                       double t1, const IntegratorConfig& cfg,
                                       double tol, int max_doublings = 6,
                                       const std::vector<int>& columns = {});

struct FiberState {
  VecC amplitudes;
  double t = 0.0;
  double norm_defect = 0.0;
  double halving_estimate = 0.0;
};

// Propagates a normalized state to t_end, attaching a step-halving estimate.
// Throws TruncationError when the tail mass exceeds the truncation tolerance.
FiberState propagate_state(const FiberModel& model, const FiberState& state,
                           double t_end, const IntegratorConfig& cfg);

MatC propagate_matrix(const FiberModel& model, double t0, double t1,
                      const IntegratorConfig& cfg);

double unitarity_defect(const MatC& U);

// T as a matrix on the truncation (subdiagonal ones).
MatC shift_matrix(int dim);

}  // namespace zener
