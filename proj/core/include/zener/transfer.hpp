#pragma once

#include <vector>

#include "zener/effective.hpp"

namespace zener {

// Crossing data of pair m on a half-period: slope a (m-1 on I0, m-1/2 on I1),
// gap coupling V = V(p-q), crossing time tc and the interval [t0, t1].
struct CrossingParams {
  int m = 2;
  Half half = Half::I0;
  double a = 1.0;
  cplx V = 0.0;
  double tc = 0.0;
  double t0 = -0.25;
  double t1 = 0.25;
};

CrossingParams crossing_params(const Potential& v, int m, Half half);

// int_{t0}^{t1} (a^2 + (s - tc)^2) ds = a^2/2 + 1/96
double theta_phase(int m, Half half);

struct DysonCoefficients {
  cplx c1 = 0.0;
  double c2 = 0.0;
};

// Closed forms in the slope a:
//   c1 = -(1+i) sqrt(pi)/2 e^{ia/8} erf((1+i) sqrt(a)/4)
//   c2 = pi/4 |erf((i-1) sqrt(a)/4)|^2
DysonCoefficients dyson_coefficients_a(double a);
DysonCoefficients dyson_coefficients(int m, Half half);

struct LambdaOmega {
  cplx lambda = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  int nodes = 0;
  double change = 0.0;        // |nodes vs 2 nodes| over the three integrals
  double omega_imag = 0.0;    // imaginary residue of the omega integrands
  bool converged = true;      // change <= 1e-10
};

// Gauss-Legendre with `nodes` points (0 selects max(64, 8m)), checked
// against 2*nodes.
LambdaOmega lambda_omega(const Potential& v, int m, Half half, int nodes = 0);

struct TransferMatrix {
  int m = 2;
  Half half = Half::I0;
  Mat2 matrix;
  double theta = 0.0;
  cplx alpha = 0.0;
  cplx alpha_prime = 0.0;
  cplx beta = 0.0;
  cplx c1 = 0.0;
  double c2 = 0.0;
  cplx lambda = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  bool quadrature_converged = true;
};

TransferMatrix transfer_matrix(const Potential& v, int m, Half half,
                               int nodes = 0);

// Endpoint correction [[0, -2V/a], [2 conj V / a, 0]].
Mat2 v_correction(const CrossingParams& cp);

struct Exact2x2 {
  Mat2 U;
  double unitarity_defect = 0.0;
  int steps = 0;
};

// i dU/dt = (H_P(t) + B(t)) U in the pair basis with the mean level
// a^2 + (t-tc)^2 removed, adaptive Fehlberg 7(8). with_B = false drops B.
Exact2x2 exact_2x2_evolution(const Potential& v, int m, Half half,
                             double tol = 1e-12, bool with_B = true);

// e^{-i theta} (U_exact - v_m): what the closed-form matrix approximates.
Mat2 transfer_oracle(const Potential& v, int m, Half half, double tol = 1e-12);

// ||S_formula - S_oracle||_2
double transfer_discrepancy(const Potential& v, int m, Half half,
                            double tol = 1e-12);

// log^8<m> / <m>^{min(2+8r, 3/2+5r, 3/2+r, 2)}
double transfer_error_model(double m, double r);

// Interaction-picture coupling b(t) = b e^{2ia(t^2 - t0^2)}, t in [t0, -t0],
// t0 = -1/4. Dyson partial sums y_k solve y_k' = -i V_P y_{k-1}, y_0 = 1.
struct DysonRemainders {
  double r1 = 0.0;  // sup_t ||Omega - 1||
  double r2 = 0.0;  // sup_t ||Omega - 1 - y_1||
  double r3 = 0.0;  // sup_t ||Omega - 1 - y_1 - y_2||
  int grid = 0;
};

DysonRemainders dyson_remainders(cplx b, double a, int grid_points = 201,
                                 double tol = 1e-12);

// R_p for p in {1, 2, 3}.
double dyson_remainder(cplx b, double a, int p, int grid_points = 201);
double dyson_remainder(const Potential& v, int m, int p,
                       int grid_points = 201);

// 2 |b|^p sqrt(log a) (log a / a)^{p/2}, without the fitted constant.
double dyson_remainder_model(double b_abs, double a, int p);

}  // namespace zener
