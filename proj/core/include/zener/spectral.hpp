#pragma once

#include <vector>

#include "zener/model.hpp"

namespace zener {

// Eigen-decomposition of a fiber operator at fixed t. Eigenvalues ascending,
// each eigenvector phase-fixed so that its largest component is real and
// positive (lowest lattice index wins ties).
struct SpectralFrame {
  double t = 0.0;
  VecR E;
  MatC vecs;
  bool degenerate = false;  // some spacing below 1e-8 (relative)
};

SpectralFrame diagonalize(const MatC& H, double t);
SpectralFrame diagonalize(const FiberOperator& op);

// Fix the phase of v in place: largest |v_i| real positive, first i on ties.
void fix_phase(Eigen::Ref<VecC> v);

// Half-period count N with t in [-1/2, 0) + N/2.
int half_period_count(double t);

// n_alpha(t): lattice index carried by band alpha (1-based) in the free model.
int label_map(int alpha, double t);

// Window edges: d_m = (m-1/2)^2 on I0, m^2 on I1. The m=1 lower edge is -inf.
double window_upper(int m, Half half);
double window_lower(int m, Half half);
// Number of bands in window m: 1 for (m=1, I0), else 2.
int window_rank(int m, Half half);

struct BandProjector {
  int m = 1;
  Half half = Half::I0;
  double t = 0.0;
  MatC P;
  std::vector<int> alphas;  // 1-based band indices inside the window
};

// Spectral projector onto the eigenvalues in window m. Throws WindowError if an
// eigenvalue sits within 1e-8 of an edge or the window holds the wrong count.
BandProjector band_projector(const SpectralFrame& frame, int m, Half half);

// Free projector Q_{m,0}: P_{m-1} + P_{-(m-1)} on I0, P_{m-1} + P_{-m} on I1.
MatC free_band_projector(int m, Half half, const Truncation& tr);

// Sz-Nagy unitary U with P = U Q U*. Throws SzNagyError when ||P-Q|| >= 1.
MatC sznagy(const MatC& P, const MatC& Q);

double operator_norm(const MatC& A);
double hermitian_norm(const MatC& A);  // max |eigenvalue| of a Hermitian A

// Canonical eigenvectors phi_alpha(t_l) for alpha in [alpha_lo, alpha_hi].
// For l >= 2 they are shifted copies phi(t_l) = T*^p phi(t_{l-2p}).
struct CanonicalBasis {
  int l = 0;
  double t = 0.0;
  std::vector<int> alphas;
  std::vector<int> lattice;  // n_alpha(t_l)
  MatC vectors;              // columns phi_alpha
  VecR energies;
};

CanonicalBasis canonical_eigenbasis(const FiberModel& model, int l,
                                    int alpha_lo, int alpha_hi);
// Same, from a frame already computed at t_{l mod 2}.
CanonicalBasis canonical_eigenbasis(const SpectralFrame& base,
                                    const Truncation& tr, int l, int alpha_lo,
                                    int alpha_hi);

}  // namespace zener
