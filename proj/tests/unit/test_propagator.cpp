#include <gtest/gtest.h>

#include <cmath>

#include "zener/estimates.hpp"
#include "zener/propagator.hpp"
#include "zener/spectral.hpp"

using namespace zener;

namespace {
Truncation trunc(int M) {
  Truncation tr;
  tr.M = M;
  return tr;
}
IntegratorConfig cfg(double step, Scheme s) {
  IntegratorConfig c;
  c.step = step;
  c.scheme = s;
  return c;
}
double interior_norm(const MatC& A, const Truncation& tr, int radius) {
  std::vector<int> idx;
  for (int n = -radius; n <= radius; ++n) idx.push_back(tr.index(n));
  MatC B(idx.size(), idx.size());
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) B(i, j) = A(idx[i], idx[j]);
  return operator_norm(B);
}
const Potential kPower = Potential::power(0.5, 1.0, -1);
}  // namespace

TEST(Integrator, Validation) {
  EXPECT_THROW(validate(cfg(0.0, Scheme::Midpoint)), ConfigError);
  EXPECT_THROW(validate(cfg(0.1, Scheme::Midpoint)), ConfigError);
  EXPECT_EQ(parse_scheme("magnus4"), Scheme::Magnus4);
  EXPECT_THROW(parse_scheme("rk4"), ConfigError);
  EXPECT_EQ(step_count(0.0, 0.5, 1.0 / 512), 256);
  EXPECT_EQ(step_count(0.3, 0.3, 1.0 / 512), 0);
}

TEST(Propagator, EmptyIntervalIsIdentity) {
  const FiberModel m(kPower, trunc(6));
  const MatC U = propagate_matrix(m, 0.2, 0.2, cfg(1.0 / 512, Scheme::Midpoint));
  EXPECT_LT((U - MatC::Identity(U.rows(), U.cols())).norm(), 1e-15);
}

TEST(Propagator, FreeMagnusIsExact) {
  const Truncation tr = trunc(8);
  const FiberModel m(Potential::zero(), tr);
  const double t0 = -0.25, t1 = 0.25;
  const MatC U = propagate_matrix(m, t0, t1, cfg(1.0 / 128, Scheme::Magnus4));
  for (int n = -8; n <= 8; ++n) {
    const double phase = (std::pow(n + t1, 3) - std::pow(n + t0, 3)) / 3.0;
    EXPECT_LT(std::abs(U(tr.index(n), tr.index(n)) - std::exp(-I * phase)), 1e-12);
  }
  EXPECT_LT(std::abs(U(0, 1)), 1e-15);
}

TEST(Propagator, Unitarity) {
  const FiberModel m(kPower, trunc(20));
  for (Scheme s : {Scheme::Midpoint, Scheme::Magnus4}) {
    const MatC U = propagate_matrix(m, -0.25, 0.25, cfg(1.0 / 256, s));
    EXPECT_LT(unitarity_defect(U), 1e-12);
  }
}

TEST(Propagator, ConvergenceOrders) {
  const Truncation tr = trunc(12);
  const FiberModel m(kPower, tr);
  const MatC ref = propagate_matrix(m, -0.25, 0.25, cfg(1.0 / 8192, Scheme::Magnus4));
  for (Scheme s : {Scheme::Midpoint, Scheme::Magnus4}) {
    std::vector<double> h, e;
    for (int n : {64, 128, 256}) {
      const MatC U = propagate_matrix(m, -0.25, 0.25, cfg(0.5 / n, s));
      h.push_back(0.5 / n);
      e.push_back(interior_norm(U - ref, tr, 6));
    }
    const double slope = log_log_slope(h, e);
    if (s == Scheme::Midpoint)
      EXPECT_NEAR(slope, 2.0, 0.3);
    else
      EXPECT_NEAR(slope, 4.0, 0.5);
  }
}

TEST(Propagator, CommutatorClosedForm) {
  const FiberModel m(kPower, trunc(6));
  FiberHamiltonian H(m);
  const MatC H1 = m.hamiltonian(0.1), H2 = m.hamiltonian(0.13);
  EXPECT_LT((H.commutator(H1, H2, 0.1, 0.13) - (H1 * H2 - H2 * H1)).norm(), 1e-12);
}

TEST(Propagator, Composition) {
  const FiberModel m(kPower, trunc(24));
  const IntegratorConfig c = cfg(1.0 / 512, Scheme::Magnus4);
  const MatC U20 = propagate_matrix(m, -0.25, 0.75, c);
  const MatC U21 = propagate_matrix(m, 0.25, 0.75, c);
  const MatC U10 = propagate_matrix(m, -0.25, 0.25, c);
  EXPECT_LT(operator_norm(U20 - U21 * U10), 1e-9);
}

TEST(Propagator, ShiftCovariance) {
  const Truncation tr = trunc(48);
  const FiberModel m(kPower, tr);
  const IntegratorConfig c = cfg(1.0 / 512, Scheme::Magnus4);
  const MatC T = shift_matrix(tr.dim());
  const MatC A = propagate_matrix(m, 0.75, 1.25, c);
  const MatC B = T.adjoint() * propagate_matrix(m, -0.25, 0.25, c) * T;
  EXPECT_LT(interior_norm(A - B, tr, 16), 1e-7);
}

TEST(Propagator, ConvergedHalving) {
  const FiberModel m(kPower, trunc(16));
  FiberHamiltonian H(m);
  const Propagation p =
      propagate_matrix_converged(H, -0.25, 0.25, cfg(1.0 / 128, Scheme::Magnus4), 1e-9);
  EXPECT_LT(p.halving_estimate, 1e-9);
  EXPECT_GE(p.steps, 128);
  EXPECT_THROW(propagate_matrix_converged(H, -0.25, 0.25,
                                          cfg(1.0 / 128, Scheme::Midpoint), 1e-14, 1),
               NumericalError);
}

TEST(PropagateState, NormalizationAndRichardson) {
  Truncation tr = trunc(16);
  tr.tail_tolerance = 1e-6;
  const FiberModel m(kPower, tr);
  FiberState s;
  s.t = -0.25;
  s.amplitudes = diagonalize(m.hamiltonian(-0.25), -0.25).vecs.col(3);
  IntegratorConfig c = cfg(1.0 / 256, Scheme::Midpoint);
  const FiberState a = propagate_state(m, s, 0.25, c);
  c.richardson = true;
  const FiberState b = propagate_state(m, s, 0.25, c);
  const VecC ref =
      propagate_matrix(m, -0.25, 0.25, cfg(1.0 / 4096, Scheme::Magnus4)) * s.amplitudes;
  EXPECT_LT(a.norm_defect, 1e-12);
  EXPECT_LT((b.amplitudes - ref).norm(), 0.25 * (a.amplitudes - ref).norm());
  EXPECT_GT(a.halving_estimate, 0.0);
  s.amplitudes *= 2.0;
  EXPECT_THROW(propagate_state(m, s, 0.25, c), ConfigError);
}

TEST(PropagateState, TailBreach) {
  const Truncation tr = trunc(8);
  const FiberModel m(kPower, tr);
  FiberState s;
  s.t = -0.25;
  s.amplitudes = VecC::Zero(tr.dim());
  s.amplitudes(tr.index(8)) = 1.0;
  EXPECT_THROW(propagate_state(m, s, 0.0, cfg(1.0 / 256, Scheme::Midpoint)),
               TruncationError);
}
