#include <gtest/gtest.h>

#include "zener/model.hpp"
#include "zener/propagator.hpp"

using namespace zener;

TEST(Potential, PowerFamilyValues) {
  const Potential v = Potential::power(0.5, 1.0, -1);
  EXPECT_EQ(v(0), cplx(0.0));
  EXPECT_NEAR(v(3).real(), 0.5 / std::sqrt(10.0), 1e-15);
  EXPECT_EQ(v(-3), v(3));
  EXPECT_EQ(v.support(), -1);
  const Potential cut = Potential::power(0.5, 1.0, 4);
  EXPECT_EQ(cut(5), cplx(0.0));
  EXPECT_EQ(cut.support(), 4);
}

TEST(Potential, TableFillsConjugatePartners) {
  const Potential v = Potential::table({{2, cplx(0.3, 0.1)}}, 1.0);
  EXPECT_EQ(v(-2), cplx(0.3, -0.1));
  EXPECT_EQ(v.support(), 2);
  EXPECT_EQ(v(1), cplx(0.0));
}

TEST(Potential, RejectsBadTables) {
  EXPECT_THROW(Potential::table({{0, 1.0}}, 0.0), ConfigError);
  EXPECT_THROW(Potential::table({{1, 1.0}, {-1, 2.0}}, 0.0), ConfigError);
  EXPECT_THROW(Potential::table({{1, cplx(NAN, 0)}}, 0.0), ConfigError);
}

TEST(Potential, NormDivergesPastDecay) {
  const Potential v = Potential::power(1.0, 0.5, -1);
  EXPECT_THROW(potential_norm(v, 1.0), ConfigError);
  EXPECT_NEAR(potential_norm(v, 0.5), 1.0, 1e-14);
}

TEST(FiberModel, FreeDiagonal) {
  Truncation tr;
  tr.M = 2;
  const FiberModel m(Potential::zero(), tr);
  const VecR d = m.diagonal(0.25);
  const double expect[] = {3.0625, 0.5625, 0.0625, 1.5625, 5.0625};
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(d(i), expect[i]);
  EXPECT_DOUBLE_EQ(m.diagonal_rate(0.25)(0), 2 * (-2 + 0.25));
}

TEST(FiberModel, HermitianAndToeplitz) {
  Truncation tr;
  tr.M = 10;
  const FiberModel m(Potential::table({{1, cplx(0.2, 0.3)}, {3, 0.1}}, 1.0), tr, 0.3);
  const MatC H = m.hamiltonian(0.17);
  EXPECT_LT((H - H.adjoint()).norm(), 1e-15);
  EXPECT_EQ(H(tr.index(4), tr.index(3)), cplx(0.2, 0.3));
  EXPECT_EQ(H(tr.index(-2), tr.index(1)), cplx(0.1, 0.0));
}

// interior block of T H(t+1) T* equals H(t)
TEST(FiberModel, TranslationCovariance) {
  Truncation tr;
  tr.M = 12;
  const FiberModel m(Potential::power(0.5, 1.0, -1), tr);
  for (double t : {-0.3, 0.0, 0.41}) {
    const MatC T = shift_matrix(tr.dim());
    const MatC lhs = T * m.hamiltonian(t + 1) * T.adjoint();
    const MatC rhs = m.hamiltonian(t);
    const int d = tr.dim();
    EXPECT_NEAR((lhs.block(1, 1, d - 1, d - 1) - rhs.block(1, 1, d - 1, d - 1)).norm(), 0.0, 1e-13);
  }
}

TEST(FiberModel, Shifts) {
  VecC psi(4);
  psi << 1, 2, 3, 4;
  VecC up = shift_up(psi), down = shift_down(psi);
  EXPECT_EQ(up(0), cplx(0.0));
  EXPECT_EQ(up(1), cplx(1.0));
  EXPECT_EQ(down(0), cplx(2.0));
  EXPECT_EQ(down(3), cplx(0.0));
  EXPECT_EQ(shift_down(shift_up(psi)).head(3), psi.head(3));
}

TEST(FiberModel, TailMassAndDominance) {
  Truncation tr;
  tr.M = 10;
  VecC psi = VecC::Zero(tr.dim());
  psi(tr.index(10)) = 0.6;
  psi(tr.index(0)) = 0.8;
  EXPECT_NEAR(tail_mass(psi, tr), 0.36, 1e-15);
  EXPECT_EQ(dominance_threshold(Potential::table({{1, 1.0}}, 0.0), tr), 3);
}

TEST(Truncation, Validate) {
  Truncation tr;
  tr.M = 0;
  EXPECT_THROW(validate(tr), ConfigError);
}
