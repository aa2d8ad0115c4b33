#pragma once

#include <map>
#include <string>

#include "zener/types.hpp"

namespace zener {

// Fourier coefficients of a real periodic potential. Either an explicit
// table or the power family c<n>^{-r} for 0 < |n| <= cutoff (cutoff < 0
// means unbounded). V(0) = 0 and V(-n) = conj V(n) always hold.
class Potential {
 public:
  static Potential zero();
  static Potential table(std::map<int, cplx> coeffs, double r,
                         std::string label = "table");
  static Potential power(double c, double r, int cutoff,
                         std::string label = "power");

  cplx operator()(int n) const;

  double decay_exponent() const { return r_; }
  // largest |n| with a nonzero coefficient, -1 if unbounded
  int support() const;
  bool is_zero() const;
  bool is_power() const { return power_; }
  double power_c() const { return c_; }
  int cutoff() const { return cutoff_; }
  const std::map<int, cplx>& coefficients() const { return table_; }
  const std::string& label() const { return label_; }

 private:
  bool power_ = false;
  double c_ = 0.0;
  double r_ = 0.0;
  int cutoff_ = 0;
  std::map<int, cplx> table_;
  std::string label_;
};

double free_eigenvalue(int n, double k, double t);

// ||V||_r = sup_n <n>^r |V(n)|. Throws ConfigError when the sup diverges.
double potential_norm(const Potential& v, double r);

struct Truncation {
  int M = 32;
  double tail_tolerance = 1e-8;  // max mass on the outer 10% of indices

  int dim() const { return 2 * M + 1; }
  int index(int n) const { return n + M; }
  int lattice(int i) const { return i - M; }
  bool contains(int n) const { return n >= -M && n <= M; }
};

void validate(const Truncation& tr);

struct FiberOperator {
  double k = 0.0;
  double t = 0.0;
  MatC H;
  Truncation trunc;
};

FiberOperator build_fiber_operator(const Potential& v, double k, double t,
                                   const Truncation& tr);

// H(k,t) on a fixed truncation; the coupling block is assembled once.
class FiberModel {
 public:
  FiberModel(Potential v, Truncation tr, double k = 0.0);

  MatC hamiltonian(double t) const;
  VecR diagonal(double t) const;       // (n+k+t)^2
  VecR diagonal_rate(double t) const;  // d/dt of the diagonal
  const MatC& coupling() const { return V_; }
  const Potential& potential() const { return pot_; }
  const Truncation& truncation() const { return tr_; }
  double k() const { return k_; }
  int dim() const { return tr_.dim(); }

 private:
  Potential pot_;
  Truncation tr_;
  double k_;
  MatC V_;
};

// (T psi)(n) = psi(n-1); the top amplitude leaves the truncation.
VecC shift_up(const VecC& psi, int times = 1);
// (T* psi)(n) = psi(n+1)
VecC shift_down(const VecC& psi, int times = 1);

// Probability mass on lattice indices with |n| > 0.9 M.
double tail_mass(const VecC& psi, const Truncation& tr);

// Smallest n* such that the free gap 2|n|-1 exceeds twice the coupling row
// sum for all |n| >= n*. Truncation sanity: M should exceed it.
int dominance_threshold(const Potential& v, const Truncation& tr);

}  // namespace zener
