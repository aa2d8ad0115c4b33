#pragma once

#include "zener/propagator.hpp"
#include "zener/spectral.hpp"

namespace zener {

// H^A_m = H - X_m with X_m = i(Q+ dQ+ + Q dQ + Q- dQ-), Q- the spectral
// projector below window m and Q+ = 1 - Q - Q-. X is Hermitian: in the
// eigenbasis X_ab = i dH_ab / (E_a - E_b) across blocks and 0 inside them.
struct AdiabaticGenerator {
  int m = 0;
  double t = 0.0;
  MatC X;
  MatC HA;
  double antihermitian_defect = 0.0;  // ||X - X*|| / 2, discarded
};

AdiabaticGenerator adiabatic_generator(const FiberModel& model, int m,
                                       Half half, double t);

// Block diagnostics: max of ||Q X Q||, ||Q+ X Q+||, ||Q- X Q-||.
double block_diagonal_defect(const FiberModel& model, int m, Half half,
                             const AdiabaticGenerator& g);

// 4-point central difference (Richardson of widths h and 2h).
struct ProjectorDerivative {
  MatC dQ;
  double error_estimate = 0.0;
  double h = 0.0;
};

ProjectorDerivative projector_derivative(const FiberModel& model, int m,
                                         double t, Half half, double h = 1e-3);

// First-order perturbation formula dQ_ab = dH_ab / (E_in - E_out).
MatC projector_derivative_exact(const FiberModel& model, int m, double t,
                                Half half);

class AdiabaticHamiltonian : public Hamiltonian {
 public:
  AdiabaticHamiltonian(const FiberModel& model, int m, Half half)
      : model_(model), m_(m), half_(half) {}
  int dim() const override { return model_.dim(); }
  MatC at(double t) const override {
    return adiabatic_generator(model_, m_, half_, t).HA;
  }

 private:
  const FiberModel& model_;
  int m_;
  Half half_;
};

struct AdiabaticPropagation {
  MatC UA;
  double unitarity_defect = 0.0;
  double intertwining_defect = 0.0;  // ||Q(t1) U^A - U^A Q(t0)||
};

AdiabaticPropagation adiabatic_propagate(const FiberModel& model, int m,
                                         Half half,
                                         const IntegratorConfig& cfg);

struct AdiabaticErrorReport {
  int m = 0;
  Half half = Half::I0;
  int buffer = 8;
  double error = 0.0;  // ||(U - U^A) P_low(t_start)||
  double bound = 0.0;  // b(m) / <m>
  double unitarity_defect = 0.0;
  double intertwining_defect = 0.0;
};

// Truncation used for adiabatic checks: M = m + buffer + 16.
Truncation adiabatic_truncation(int m, int buffer = 8,
                                double tail_tolerance = 1e-8);

AdiabaticErrorReport adiabatic_error(const FiberModel& model, int m, Half half,
                                     const IntegratorConfig& cfg,
                                     int buffer = 8);

}  // namespace zener
