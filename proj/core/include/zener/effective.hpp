#pragma once

#include <vector>

#include "zener/model.hpp"

namespace zener {

// Unperturbed pair (delta_p, delta_q): p = m-1 and q = -(m-1) on I0, q = -m
// on I1.
struct PairBasis {
  int m = 2;
  Half half = Half::I0;
  int p = 1;
  int q = -1;
};

PairBasis pair_basis(int m, Half half);

// First-order projector term: (E1)_ab = V(a-b) / (E_in - E_out) when exactly
// one of a, b lies in the pair, 0 otherwise (residues of R0 V R0 / 2 pi i).
MatC e_hat_1(const Potential& v, int m, double t, Half half,
             const Truncation& tr);

// B_m(t) in the pair basis: [[gamma1, Delta], [conj Delta, gamma2]], summed
// over the potential's whole support (independent of any truncation).
Mat2 b_matrix(const Potential& v, int m, double t, Half half);

// B_m(t) at many times: the couplings V(p-k), V(q-k) are tabulated once.
class PairCoupling {
 public:
  PairCoupling(const Potential& v, int m, Half half);
  Mat2 at(double t) const;
  const PairBasis& pair() const { return pb_; }

 private:
  PairBasis pb_;
  std::vector<int> k_;
  std::vector<cplx> vp_, vq_;
};

struct EffectiveHamiltonian2x2 {
  double t = 0.0;
  Mat2 leading;     // diag(E_p, E_q), off-diagonal V(p-q)
  Mat2 correction;  // B_m(t)
  Mat2 total;
};

EffectiveHamiltonian2x2 h_eff(const Potential& v, int m, double t, Half half);

// Range of the k-sum in b_matrix for potentials without a cutoff.
inline constexpr int kUnboundedSupportCap = 20000;

}  // namespace zener
