#pragma once

#include <optional>
#include <vector>

#include "zener/propagator.hpp"
#include "zener/transfer.hpp"

namespace zener {

// Diagonal-path factor of half-period j (0-based) for a front started on
// pair n0: j even is I0 at m = n0 + j/2, j odd is I1 at m = n0 + (j-1)/2.
// Both carry the slope a_j = n0 - 1 + j/2 and coupling V(2 n0 + j - 2).
struct FrontFactor {
  int j = 0;
  int m = 0;
  Half half = Half::I0;
  cplx amplitude = 0.0;  // e^{-i theta} alpha
  double leak = 0.0;     // |V|^2 c2 / a
  double omega = 0.0;
};

FrontFactor front_factor(const Potential& v, int n0, int j);

// A(0..N_max): A(0) = 1, A(N) = product of the first N factors. An odd N ends
// on an I0 factor.
std::vector<cplx> transfer_products(const Potential& v, int n0, int N_max);
cplx transfer_product(const Potential& v, int n0, int N);

// exp(-2 sum_{j<N} |V(2n0+j-2)|^2 c2(a_j) / a_j)
double front_exponential_sum(const Potential& v, int n0, int N);

// N -> infinity of the above. Terms are summed exactly while a_j <= 15000,
// the remainder uses c2(a) ~ pi/4 (1 + 8/(pi a)) and an integral tail.
// Empty when the series diverges (r <= 0 with unbounded support).
std::optional<double> front_formula_limit(const Potential& v, int n0);

struct FrontOptions {
  IntegratorConfig integrator{1.0 / 512.0, Scheme::Magnus4, false};
  double tolerance = 1e-9;  // step-halving target per half-period
  int max_doublings = 4;
  int buffer = 24;          // M = n0 + ceil(N_max/2) + buffer unless M > 0
  int M = 0;
  double tail_tolerance = 1e-8;
};

// Exact front in the comoving frame chi_N = T^{floor(N/2)} psi(t_N): the
// half-period propagators U0 = U(1/4,-1/4), U1 = U(3/4,1/4) are computed once
// and chi_{N+1} = U0 chi_N (N even), T U1 chi_N (N odd).
struct FrontSeries {
  int n0 = 0;
  int M = 0;
  std::vector<int> N;
  std::vector<double> P_formula;   // |A(N)|^2
  std::vector<double> P_exact;     // |<phi_{2n0-2+N}(t_N), psi(t_N)>|^2
  std::vector<double> A_abs;       // |A(N)|
  std::vector<double> energy_ratio;  // <psi, H psi>(t_N) / t_N^2
  std::vector<double> survival;    // |<phi_{2n0+N}(t_N), U(t_N,t0) phi_{2n0}(t0)>|
  std::vector<double> tail;        // tail mass of the front state
  std::optional<double> limit_estimate;
  double halving_estimate = 0.0;   // max over U0, U1
  int steps = 0;                   // per half-period after tightening
};

FrontSeries front_series(const Potential& v, int n0, int N_max,
                         const FrontOptions& opt = {});

double front_exact(const Potential& v, int n0, int N,
                   const FrontOptions& opt = {});
std::vector<double> energy_growth(const Potential& v, int n0, int N_max,
                                  const FrontOptions& opt = {});
double momentum_survival(const Potential& v, int n0, int N,
                         const FrontOptions& opt = {});

}  // namespace zener
