#include "zener/model.hpp"

#include <cmath>
#include <sstream>

namespace zener {

Potential Potential::zero() {
  Potential p;
  p.label_ = "zero";
  return p;
}

Potential Potential::table(std::map<int, cplx> coeffs, double r,
                           std::string label) {
  Potential p;
  p.r_ = r;
  p.label_ = std::move(label);
  for (const auto& [n, v] : coeffs) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ConfigError("potential coefficient at n=" + std::to_string(n) +
                        " is not finite");
    if (n == 0) {
      if (std::abs(v) != 0.0)
        throw ConfigError("potential must have V(0) = 0 (energy shift)");
      continue;
    }
    auto partner = coeffs.find(-n);
    if (partner != coeffs.end() &&
        std::abs(partner->second - std::conj(v)) >
            1e-14 * std::max(1.0, std::abs(v)))
      throw ConfigError("non-Hermitian potential: V(" + std::to_string(-n) +
                        ") != conj V(" + std::to_string(n) + ")");
    if (v == cplx(0.0)) continue;
    p.table_[n] = v;
    p.table_[-n] = std::conj(v);
  }
  return p;
}

Potential Potential::power(double c, double r, int cutoff, std::string label) {
  if (!std::isfinite(c) || !std::isfinite(r))
    throw ConfigError("power potential needs finite c and r");
  Potential p;
  p.power_ = true;
  p.c_ = c;
  p.r_ = r;
  p.cutoff_ = cutoff;
  p.label_ = std::move(label);
  return p;
}

cplx Potential::operator()(int n) const {
  if (n == 0) return 0.0;
  if (power_) {
    if (cutoff_ >= 0 && std::abs(n) > cutoff_) return 0.0;
    return c_ * std::pow(bracket(n), -r_);
  }
  auto it = table_.find(n);
  return it == table_.end() ? cplx(0.0) : it->second;
}

int Potential::support() const {
  if (power_) return c_ == 0.0 ? 0 : cutoff_;
  return table_.empty() ? 0 : std::abs(table_.begin()->first);
}

bool Potential::is_zero() const {
  if (power_) return c_ == 0.0 || cutoff_ == 0;
  return table_.empty();
}

double free_eigenvalue(int n, double k, double t) {
  const double x = n + k + t;
  return x * x;
}

double potential_norm(const Potential& v, double r) {
  if (v.is_zero()) return 0.0;
  if (v.is_power()) {
    const double e = r - v.decay_exponent();
    if (e > 0.0) {
      if (v.cutoff() < 0)
        throw ConfigError("||V||_r diverges: power family decays like <n>^-" +
                          std::to_string(v.decay_exponent()) + " but r = " +
                          std::to_string(r));
      return std::abs(v.power_c()) * std::pow(bracket(v.cutoff()), e);
    }
    return std::abs(v.power_c()) * std::pow(bracket(1), e);
  }
  double sup = 0.0;
  for (const auto& [n, c] : v.coefficients())
    sup = std::max(sup, std::pow(bracket(n), r) * std::abs(c));
  return sup;
}

void validate(const Truncation& tr) {
  if (tr.M < 1) throw ConfigError("truncation M must be positive");
  if (!(tr.tail_tolerance > 0.0))
    throw ConfigError("truncation tail_tolerance must be positive");
}

FiberOperator build_fiber_operator(const Potential& v, double k, double t,
                                   const Truncation& tr) {
  FiberModel model(v, tr, k);
  return {k, t, model.hamiltonian(t), tr};
}

FiberModel::FiberModel(Potential v, Truncation tr, double k)
    : pot_(std::move(v)), tr_(tr), k_(k) {
  validate(tr_);
  const int d = tr_.dim();
  V_ = MatC::Zero(d, d);
  if (pot_.is_zero()) return;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) V_(i, j) = pot_(i - j);
}

VecR FiberModel::diagonal(double t) const {
  VecR d(dim());
  for (int i = 0; i < dim(); ++i) d(i) = free_eigenvalue(tr_.lattice(i), k_, t);
  return d;
}

VecR FiberModel::diagonal_rate(double t) const {
  VecR d(dim());
  for (int i = 0; i < dim(); ++i) d(i) = 2.0 * (tr_.lattice(i) + k_ + t);
  return d;
}

MatC FiberModel::hamiltonian(double t) const {
  MatC H = V_;
  H.diagonal() += diagonal(t).cast<cplx>();
  return H;
}

VecC shift_up(const VecC& psi, int times) {
  const int d = static_cast<int>(psi.size());
  VecC out = VecC::Zero(d);
  if (times < d) out.tail(d - times) = psi.head(d - times);
  return out;
}

VecC shift_down(const VecC& psi, int times) {
  const int d = static_cast<int>(psi.size());
  VecC out = VecC::Zero(d);
  if (times < d) out.head(d - times) = psi.tail(d - times);
  return out;
}

double tail_mass(const VecC& psi, const Truncation& tr) {
  double mass = 0.0;
  for (int i = 0; i < tr.dim(); ++i)
    if (std::abs(tr.lattice(i)) > 0.9 * tr.M) mass += std::norm(psi(i));
  return mass;
}

int dominance_threshold(const Potential& v, const Truncation& tr) {
  double rowsum = 0.0;
  for (int j = 1; j <= 2 * tr.M; ++j) rowsum += std::abs(v(j)) + std::abs(v(-j));
  int n = 1;
  while (2.0 * n - 1.0 <= 2.0 * rowsum) ++n;
  return n;
}

}  // namespace zener
