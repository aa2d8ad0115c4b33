#include "zener/transfer.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "zener/erf.hpp"
#include "zener/quadrature.hpp"

namespace zener {

namespace odeint = boost::numeric::odeint;

namespace {

using State4 = std::array<cplx, 4>;  // row-major 2x2

Mat2 to_mat(const State4& s) {
  Mat2 U;
  U << s[0], s[1], s[2], s[3];
  return U;
}

double slope_of(int m, Half half) {
  if (m < 1) throw ConfigError("band-pair index m must be >= 1");
  if (m == 1 && half == Half::I0)
    throw ConfigError("m = 1 on I0 has no crossing (single band)");
  return half == Half::I0 ? m - 1.0 : m - 0.5;
}

}  // namespace

CrossingParams crossing_params(const Potential& v, int m, Half half) {
  const PairBasis pb = pair_basis(m, half);
  CrossingParams cp;
  cp.m = m;
  cp.half = half;
  cp.a = slope_of(m, half);
  cp.V = v(pb.p - pb.q);
  cp.tc = half_center(half);
  cp.t0 = half_start(half);
  cp.t1 = half_end(half);
  return cp;
}

double theta_phase(int m, Half half) {
  // m = 1 on I0 is the lone lowest band; the integral is still defined
  const double a = half == Half::I0 ? m - 1.0 : m - 0.5;
  return 0.5 * a * a + 1.0 / 96.0;
}

DysonCoefficients dyson_coefficients_a(double a) {
  if (!(a > 0.0)) throw ConfigError("Dyson coefficients need slope a > 0");
  const double sa = std::sqrt(a);
  DysonCoefficients dc;
  dc.c1 = -(1.0 + I) * (std::sqrt(M_PI) / 2.0) * std::exp(I * (a / 8.0)) *
          erf_complex((1.0 + I) * sa / 4.0);
  dc.c2 = M_PI / 4.0 * std::norm(erf_complex((I - 1.0) * sa / 4.0));
  return dc;
}

DysonCoefficients dyson_coefficients(int m, Half half) {
  return dyson_coefficients_a(slope_of(m, half));
}

LambdaOmega lambda_omega(const Potential& v, int m, Half half, int nodes) {
  const CrossingParams cp = crossing_params(v, m, half);
  LambdaOmega lo;
  lo.nodes = nodes > 0 ? nodes : std::max(64, 8 * m);
  if (v.is_zero()) return lo;
  const PairCoupling B(v, m, half);
  struct Sums {
    cplx lam = 0.0, w1 = 0.0, w2 = 0.0;
  };
  auto integrate = [&](int n) {
    const GaussRule g = gauss_legendre(n, cp.t0, cp.t1);
    Sums s;
    for (int i = 0; i < n; ++i) {
      const Mat2 b = B.at(g.x[i]);
      const double u = g.x[i] - cp.tc;
      s.lam += g.w[i] * std::conj(b(0, 1)) *
               std::exp(-2.0 * I * cp.a * (u * u - 1.0 / 16.0));
      s.w1 += g.w[i] * b(0, 0);
      s.w2 += g.w[i] * b(1, 1);
    }
    return s;
  };
  const Sums s1 = integrate(lo.nodes), s2 = integrate(2 * lo.nodes);
  lo.lambda = s1.lam;
  lo.omega1 = s1.w1.real();
  lo.omega2 = s1.w2.real();
  lo.omega_imag = std::max(std::abs(s1.w1.imag()), std::abs(s1.w2.imag()));
  lo.change = std::max({std::abs(s1.lam - s2.lam), std::abs(s1.w1 - s2.w1),
                        std::abs(s1.w2 - s2.w2)});
  lo.converged = lo.change <= 1e-10;
  return lo;
}

TransferMatrix transfer_matrix(const Potential& v, int m, Half half,
                               int nodes) {
  const CrossingParams cp = crossing_params(v, m, half);
  const DysonCoefficients dc = dyson_coefficients_a(cp.a);
  const LambdaOmega lo = lambda_omega(v, m, half, nodes);
  TransferMatrix tm;
  tm.m = m;
  tm.half = half;
  tm.theta = theta_phase(m, half);
  tm.c1 = dc.c1;
  tm.c2 = dc.c2;
  tm.lambda = lo.lambda;
  tm.omega1 = lo.omega1;
  tm.omega2 = lo.omega2;
  tm.quadrature_converged = lo.converged;
  const double leak = std::norm(cp.V) * dc.c2 / cp.a;
  const cplx Vb = std::conj(cp.V);
  tm.alpha = 1.0 - leak - I * lo.omega1;
  tm.alpha_prime = 1.0 - leak - I * lo.omega2;
  tm.beta = Vb * dc.c1 / std::sqrt(cp.a) - I * lo.lambda - 2.0 * Vb / cp.a;
  tm.matrix << tm.alpha, -std::conj(tm.beta), tm.beta, tm.alpha_prime;
  tm.matrix *= std::exp(-I * tm.theta);
  return tm;
}

Mat2 v_correction(const CrossingParams& cp) {
  Mat2 vm;
  vm << 0.0, -2.0 * cp.V / cp.a, 2.0 * std::conj(cp.V) / cp.a, 0.0;
  return vm;
}

Exact2x2 exact_2x2_evolution(const Potential& v, int m, Half half, double tol,
                             bool with_B) {
  const CrossingParams cp = crossing_params(v, m, half);
  const PairCoupling B(v, m, half);
  auto rhs = [&](const State4& x, State4& dx, double t) {
    const double u = t - cp.tc;
    Mat2 H;
    H << 2.0 * cp.a * u, cp.V, std::conj(cp.V), -2.0 * cp.a * u;
    if (with_B) H += B.at(t);
    const Mat2 d = -I * H * to_mat(x);
    dx = {d(0, 0), d(0, 1), d(1, 0), d(1, 1)};
  };
  State4 x = {1.0, 0.0, 0.0, 1.0};
  auto stepper = odeint::make_controlled(
      tol * 1e-2, tol, odeint::runge_kutta_fehlberg78<State4>());
  Exact2x2 out;
  out.steps = static_cast<int>(
      odeint::integrate_adaptive(stepper, rhs, x, cp.t0, cp.t1, 1e-3));
  out.U = to_mat(x);
  out.unitarity_defect =
      (out.U.adjoint() * out.U - Mat2::Identity()).cwiseAbs().maxCoeff();
  if (out.unitarity_defect > 1e3 * tol) {
    std::ostringstream os;
    os << "2x2 evolution m=" << m << " " << to_string(half)
       << ": unitarity defect " << out.unitarity_defect << " above budget";
    throw NumericalError(os.str());
  }
  return out;
}

Mat2 transfer_oracle(const Potential& v, int m, Half half, double tol) {
  const CrossingParams cp = crossing_params(v, m, half);
  const Exact2x2 ex = exact_2x2_evolution(v, m, half, tol, true);
  return std::exp(-I * theta_phase(m, half)) * (ex.U - v_correction(cp));
}

double transfer_discrepancy(const Potential& v, int m, Half half, double tol) {
  const Mat2 d = transfer_matrix(v, m, half).matrix -
                 transfer_oracle(v, m, half, tol);
  return Eigen::JacobiSVD<Mat2>(d).singularValues()(0);
}

double transfer_error_model(double m, double r) {
  const double e = std::min({2.0 + 8.0 * r, 1.5 + 5.0 * r, 1.5 + r, 2.0});
  return std::pow(std::log(bracket(m)), 8) / std::pow(bracket(m), e);
}

DysonRemainders dyson_remainders(cplx b, double a, int grid_points,
                                 double tol) {
  if (!(a > 0.0)) throw ConfigError("Dyson remainder needs a > 0");
  if (grid_points < 2) throw ConfigError("Dyson remainder grid needs >= 2 points");
  const double t0 = -0.25, t1 = 0.25;
  // x = (Omega, y1, y2), each 2x2 row-major
  using State = std::array<cplx, 12>;
  auto rhs = [&](const State& x, State& dx, double t) {
    const cplx bt = b * std::exp(2.0 * I * a * (t * t - t0 * t0));
    Mat2 VP;
    VP << 0.0, bt, std::conj(bt), 0.0;
    Mat2 Om, y1;
    Om << x[0], x[1], x[2], x[3];
    y1 << x[4], x[5], x[6], x[7];
    const Mat2 dOm = -I * VP * Om, dy1 = -I * VP, dy2 = -I * VP * y1;
    const Mat2* ds[3] = {&dOm, &dy1, &dy2};
    for (int k = 0; k < 3; ++k)
      for (int e = 0; e < 4; ++e) dx[4 * k + e] = (*ds[k])(e / 2, e % 2);
  };
  State x{};
  x[0] = 1.0;
  x[3] = 1.0;
  std::vector<double> times(grid_points);
  for (int i = 0; i < grid_points; ++i)
    times[i] = t0 + (t1 - t0) * i / (grid_points - 1);
  DysonRemainders out;
  out.grid = grid_points;
  auto norm2 = [](const Mat2& M) {
    return Eigen::JacobiSVD<Mat2>(M).singularValues()(0);
  };
  auto observe = [&](const State& s, double) {
    Mat2 Om, y1, y2;
    Om << s[0], s[1], s[2], s[3];
    y1 << s[4], s[5], s[6], s[7];
    y2 << s[8], s[9], s[10], s[11];
    const Mat2 R1 = Om - Mat2::Identity();
    out.r1 = std::max(out.r1, norm2(R1));
    out.r2 = std::max(out.r2, norm2(R1 - y1));
    out.r3 = std::max(out.r3, norm2(R1 - y1 - y2));
  };
  auto stepper = odeint::make_controlled(
      tol * 1e-2, tol, odeint::runge_kutta_fehlberg78<State>());
  odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), 1e-3,
                          observe);
  return out;
}

double dyson_remainder(cplx b, double a, int p, int grid_points) {
  if (p < 1 || p > 3) throw ConfigError("Dyson remainder order p must be 1, 2 or 3");
  const DysonRemainders r = dyson_remainders(b, a, grid_points);
  return p == 1 ? r.r1 : (p == 2 ? r.r2 : r.r3);
}

double dyson_remainder(const Potential& v, int m, int p, int grid_points) {
  if (m < 3) throw ConfigError("Dyson remainder needs a = m - 1 >= 2");
  return dyson_remainder(v(2 * (m - 1)), m - 1.0, p, grid_points);
}

double dyson_remainder_model(double b_abs, double a, int p) {
  const double L = std::log(a);
  return 2.0 * std::pow(b_abs, p) * std::sqrt(L) * std::pow(L / a, 0.5 * p);
}

}  // namespace zener
