#include "zener/effective.hpp"

#include <sstream>

namespace zener {

PairBasis pair_basis(int m, Half half) {
  if (m < 1) throw ConfigError("band-pair index m must be >= 1");
  if (m == 1 && half == Half::I0)
    throw ConfigError("m = 1 on I0 is a single band, not a pair");
  PairBasis pb;
  pb.m = m;
  pb.half = half;
  pb.p = m - 1;
  pb.q = half == Half::I0 ? -(m - 1) : -m;
  return pb;
}

MatC e_hat_1(const Potential& v, int m, double t, Half half,
             const Truncation& tr) {
  const PairBasis pb = pair_basis(m, half);
  if (!tr.contains(pb.p) || !tr.contains(pb.q))
    throw ConfigError("pair outside the truncation");
  const int d = tr.dim();
  MatC E1 = MatC::Zero(d, d);
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < d; ++a) {
      const int na = tr.lattice(a), nb = tr.lattice(b);
      const bool ina = na == pb.p || na == pb.q;
      const bool inb = nb == pb.p || nb == pb.q;
      if (ina == inb) continue;
      const cplx vab = v(na - nb);
      if (vab == cplx(0.0)) continue;
      const double ein = free_eigenvalue(ina ? na : nb, 0.0, t);
      const double eout = free_eigenvalue(ina ? nb : na, 0.0, t);
      if (ein == eout) {
        std::ostringstream os;
        os << "E1: degenerate in/out free levels at (" << na << "," << nb
           << "), t=" << t;
        throw NumericalError(os.str());
      }
      E1(a, b) = vab / (ein - eout);
    }
  return E1;
}

PairCoupling::PairCoupling(const Potential& v, int m, Half half)
    : pb_(pair_basis(m, half)) {
  if (v.is_zero()) return;
  const int S = v.support() < 0 ? kUnboundedSupportCap : v.support();
  const int klo = std::min(pb_.p, pb_.q) - S, khi = std::max(pb_.p, pb_.q) + S;
  for (int k = klo; k <= khi; ++k) {
    if (k == pb_.p || k == pb_.q) continue;
    const cplx a = v(pb_.p - k), b = v(pb_.q - k);
    if (a == cplx(0.0) && b == cplx(0.0)) continue;
    k_.push_back(k);
    vp_.push_back(a);
    vq_.push_back(b);
  }
}

Mat2 PairCoupling::at(double t) const {
  const double ep = free_eigenvalue(pb_.p, 0.0, t);
  const double eq = free_eigenvalue(pb_.q, 0.0, t);
  double g1 = 0.0, g2 = 0.0;
  cplx d = 0.0;
  for (size_t i = 0; i < k_.size(); ++i) {
    const double ek = free_eigenvalue(k_[i], 0.0, t);
    const double rp = 1.0 / (ep - ek), rq = 1.0 / (eq - ek);
    g1 += std::norm(vp_[i]) * rp;
    g2 += std::norm(vq_[i]) * rq;
    d += 0.5 * vp_[i] * std::conj(vq_[i]) * (rp + rq);
  }
  Mat2 B;
  B << g1, d, std::conj(d), g2;
  return B;
}

Mat2 b_matrix(const Potential& v, int m, double t, Half half) {
  return PairCoupling(v, m, half).at(t);
}

EffectiveHamiltonian2x2 h_eff(const Potential& v, int m, double t, Half half) {
  const PairBasis pb = pair_basis(m, half);
  EffectiveHamiltonian2x2 h;
  h.t = t;
  h.leading << free_eigenvalue(pb.p, 0.0, t), v(pb.p - pb.q),
      v(pb.q - pb.p), free_eigenvalue(pb.q, 0.0, t);
  h.correction = b_matrix(v, m, t, half);
  h.total = h.leading + h.correction;
  return h;
}

}  // namespace zener
