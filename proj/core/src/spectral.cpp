#include "zener/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace zener {

void fix_phase(Eigen::Ref<VecC> v) {
  double big = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) big = std::max(big, std::abs(v(i)));
  if (big == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // ties: the first index within rounding of the max
    if (std::abs(v(i)) >= big * (1.0 - 1e-12)) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

SpectralFrame diagonalize(const MatC& H, double t) {
  Eigen::SelfAdjointEigenSolver<MatC> es(H);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigensolver failed at t=" << t << " (dim " << H.rows()
       << ", max |H_ij| " << H.cwiseAbs().maxCoeff() << ")";
    throw NumericalError(os.str());
  }
  SpectralFrame f;
  f.t = t;
  f.E = es.eigenvalues();
  f.vecs = es.eigenvectors();
  for (Eigen::Index j = 0; j < f.vecs.cols(); ++j) fix_phase(f.vecs.col(j));
  for (Eigen::Index j = 0; j + 1 < f.E.size(); ++j)
    if (f.E(j + 1) - f.E(j) < 1e-8 * std::max(1.0, std::abs(f.E(j)))) {
      f.degenerate = true;
      break;
    }
  return f;
}

SpectralFrame diagonalize(const FiberOperator& op) {
  return diagonalize(op.H, op.t);
}

int half_period_count(double t) {
  return static_cast<int>(std::floor(2.0 * t + 1.0 + 1e-12));
}

int label_map(int alpha, double t) {
  if (alpha <= 0) throw ConfigError("band index alpha must be positive");
  const int N = half_period_count(t);
  const bool same = ((alpha - N) % 2 + 2) % 2 == 0;
  return same ? (alpha - N) / 2 : -(alpha + N - 1) / 2;
}

double window_upper(int m, Half half) {
  if (m < 1) throw ConfigError("band-pair index m must be >= 1");
  return half == Half::I0 ? (m - 0.5) * (m - 0.5) : double(m) * m;
}

double window_lower(int m, Half half) {
  if (m == 1) return -std::numeric_limits<double>::infinity();
  return window_upper(m - 1, half);
}

int window_rank(int m, Half half) {
  return (m == 1 && half == Half::I0) ? 1 : 2;
}

BandProjector band_projector(const SpectralFrame& frame, int m, Half half) {
  const double lo = window_lower(m, half), hi = window_upper(m, half);
  BandProjector bp;
  bp.m = m;
  bp.half = half;
  bp.t = frame.t;
  const int d = static_cast<int>(frame.E.size());
  bp.P = MatC::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const double e = frame.E(a);
    if (std::abs(e - lo) < 1e-8 || std::abs(e - hi) < 1e-8) {
      std::ostringstream os;
      os << "eigenvalue " << e << " on window edge for m=" << m << " "
         << to_string(half) << " at t=" << frame.t;
      throw WindowError(os.str());
    }
    if (e > lo && e < hi) {
      bp.alphas.push_back(a + 1);
      bp.P += frame.vecs.col(a) * frame.vecs.col(a).adjoint();
    }
  }
  if (static_cast<int>(bp.alphas.size()) != window_rank(m, half)) {
    std::ostringstream os;
    os << "window m=" << m << " " << to_string(half) << " at t=" << frame.t
       << " holds " << bp.alphas.size() << " eigenvalues, expected "
       << window_rank(m, half);
    throw WindowError(os.str());
  }
  return bp;
}

MatC free_band_projector(int m, Half half, const Truncation& tr) {
  MatC P = MatC::Zero(tr.dim(), tr.dim());
  const int a = m - 1, b = half == Half::I0 ? -(m - 1) : -m;
  if (!tr.contains(a) || !tr.contains(b))
    throw ConfigError("band pair m=" + std::to_string(m) +
                      " outside the truncation");
  P(tr.index(a), tr.index(a)) = 1.0;
  P(tr.index(b), tr.index(b)) = 1.0;
  return P;
}

double operator_norm(const MatC& A) {
  if (A.size() == 0) return 0.0;
  Eigen::BDCSVD<MatC> svd(A);
  return svd.singularValues()(0);
}

double hermitian_norm(const MatC& A) {
  Eigen::SelfAdjointEigenSolver<MatC> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

MatC sznagy(const MatC& P, const MatC& Q) {
  const MatC D = P - Q;
  const double nd = hermitian_norm(D);
  if (nd >= 1.0 - 1e-12) {
    std::ostringstream os;
    os << "Sz-Nagy transform needs ||P-Q|| < 1, got " << nd;
    throw SzNagyError(os.str());
  }
  const Eigen::Index d = P.rows();
  const MatC Id = MatC::Identity(d, d);
  Eigen::SelfAdjointEigenSolver<MatC> es(Id - D * D);
  const VecR s = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const MatC inv_sqrt = es.eigenvectors() * s.cast<cplx>().asDiagonal() *
                        es.eigenvectors().adjoint();
  return inv_sqrt * (P * Q + (Id - P) * (Id - Q));
}

CanonicalBasis canonical_eigenbasis(const SpectralFrame& base,
                                    const Truncation& tr, int l, int alpha_lo,
                                    int alpha_hi) {
  if (l < 0) throw ConfigError("canonical basis needs l >= 0");
  if (alpha_lo < 1 || alpha_hi < alpha_lo || alpha_hi > tr.dim())
    throw ConfigError("canonical basis band range out of bounds");
  const int p = l / 2;
  CanonicalBasis cb;
  cb.l = l;
  cb.t = endpoint_time(l);
  const int count = alpha_hi - alpha_lo + 1;
  cb.vectors = MatC::Zero(tr.dim(), count);
  cb.energies = VecR(count);
  const double tb = endpoint_time(l % 2);
  for (int j = 0; j < count; ++j) {
    const int alpha = alpha_lo + j;
    const int n = label_map(alpha, tb);
    if (!tr.contains(n)) throw ConfigError("band label outside the truncation");
    VecC v = base.vecs.col(alpha - 1);
    const cplx overlap = v(tr.index(n));
    // rank-one Sz-Nagy against delta_n: v <v,delta>/|<v,delta>|; needs overlap
    if (std::norm(overlap) < 1e-12) {
      std::ostringstream os;
      os << "Sz-Nagy precondition fails for alpha=" << alpha
         << " (overlap with free vector " << std::abs(overlap) << ")";
      throw SzNagyError(os.str());
    }
    v *= std::conj(overlap) / std::abs(overlap);
    cb.vectors.col(j) = shift_down(v, p);
    cb.energies(j) = base.E(alpha - 1);
    cb.alphas.push_back(alpha);
    cb.lattice.push_back(n - p);
  }
  return cb;
}

CanonicalBasis canonical_eigenbasis(const FiberModel& model, int l,
                                    int alpha_lo, int alpha_hi) {
  const double tb = endpoint_time(l % 2);
  return canonical_eigenbasis(diagonalize(model.hamiltonian(tb), tb),
                              model.truncation(), l, alpha_lo, alpha_hi);
}

}  // namespace zener
