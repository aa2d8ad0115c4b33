#include "zener/front.hpp"

#include <cmath>
#include <sstream>

#include "zener/spectral.hpp"

namespace zener {

namespace {

double factor_slope(int n0, int j) { return n0 - 1.0 + 0.5 * j; }

// |V(n)|^2 c2(a)/a with the large-a form of c2 past the erf range.
double leak_term(const Potential& v, int n, double a) {
  const double v2 = std::norm(v(n));
  if (v2 == 0.0) return 0.0;
  const double c2 = a <= 15000.0 ? dyson_coefficients_a(a).c2
                                 : M_PI / 4.0 * (1.0 + 8.0 / (M_PI * a));
  return v2 * c2 / a;
}

// int_X^Y (pi c^2/2) x^{-2r-1} (1 + 16/(pi x)) dx, the leak density of the
// power family in x = 2a.
double power_tail(double c, double r, double X, double Y) {
  auto F = [&](double x) {
    if (std::isinf(x)) return 0.0;
    return -(M_PI * c * c / 2.0) *
           (std::pow(x, -2.0 * r) / (2.0 * r) +
            16.0 / M_PI * std::pow(x, -2.0 * r - 1.0) / (2.0 * r + 1.0));
  };
  return F(Y) - F(X);
}

}  // namespace

FrontFactor front_factor(const Potential& v, int n0, int j) {
  if (n0 < 2) throw ConfigError("front needs n0 >= 2");
  FrontFactor f;
  f.j = j;
  f.half = j % 2 == 0 ? Half::I0 : Half::I1;
  f.m = n0 + j / 2;
  try {
    const TransferMatrix tm = transfer_matrix(v, f.m, f.half);
    f.amplitude = std::exp(-I * tm.theta) * tm.alpha;
    f.omega = tm.omega1;
    const CrossingParams cp = crossing_params(v, f.m, f.half);
    f.leak = std::norm(cp.V) * tm.c2 / cp.a;
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "front factor l=" << j / 2 << " (" << to_string(f.half)
       << ", m=" << f.m << "): " << e.what();
    throw NumericalError(os.str());
  }
  return f;
}

std::vector<cplx> transfer_products(const Potential& v, int n0, int N_max) {
  if (N_max < 0) throw ConfigError("N must be >= 0");
  std::vector<cplx> A(N_max + 1);
  A[0] = 1.0;
  for (int j = 0; j < N_max; ++j) A[j + 1] = front_factor(v, n0, j).amplitude * A[j];
  return A;
}

cplx transfer_product(const Potential& v, int n0, int N) {
  return transfer_products(v, n0, N).back();
}

double front_exponential_sum(const Potential& v, int n0, int N) {
  if (n0 < 2) throw ConfigError("front needs n0 >= 2");
  double s = 0.0;
  for (int j = 0; j < N; ++j)
    s += leak_term(v, 2 * n0 + j - 2, factor_slope(n0, j));
  return std::exp(-2.0 * s);
}

std::optional<double> front_formula_limit(const Potential& v, int n0) {
  if (n0 < 2) throw ConfigError("front needs n0 >= 2");
  if (v.is_zero()) return 1.0;
  const int support = v.support();
  if (support < 0 && v.decay_exponent() <= 0.0) return std::nullopt;
  // exact terms while the coupling index x = 2n0+j-2 stays below x_cut
  const int x_cut = 30000;
  double s = 0.0;
  int j = 0;
  for (;; ++j) {
    const int x = 2 * n0 + j - 2;
    if (support >= 0 && x > support) break;
    if (x > x_cut) break;
    s += leak_term(v, x, factor_slope(n0, j));
  }
  if (support < 0 || support > x_cut) {
    if (!v.is_power())
      return std::nullopt;  // no decay family to bound the tail with
    const double X = 2.0 * n0 + j - 2 - 0.5;
    const double Y = support < 0 ? INFINITY : support + 0.5;
    s += power_tail(v.power_c(), v.decay_exponent(), X, Y);
  }
  return std::exp(-2.0 * s);
}

FrontSeries front_series(const Potential& v, int n0, int N_max,
                         const FrontOptions& opt) {
  if (n0 < 2) throw ConfigError("front needs n0 >= 2");
  if (N_max < 0) throw ConfigError("N must be >= 0");
  validate(opt.integrator);
  Truncation tr;
  tr.M = opt.M > 0 ? opt.M : n0 + (N_max + 1) / 2 + opt.buffer;
  tr.tail_tolerance = opt.tail_tolerance;
  validate(tr);
  const int top = 2 * n0 - 2 + N_max + 2;  // highest label used
  if (std::abs(label_map(top, 0.25)) > tr.M - 4 ||
      std::abs(label_map(top, -0.25)) > tr.M - 4)
    throw ConfigError("front truncation too small for n0 + N/2");

  const FiberModel model(v, tr);
  const FiberHamiltonian H(model);
  std::vector<int> cols;
  for (int i = 0; i < tr.dim(); ++i)
    if (std::abs(tr.lattice(i)) <= tr.M - 10) cols.push_back(i);
  const Propagation P0 = propagate_matrix_converged(
      H, -0.25, 0.25, opt.integrator, opt.tolerance, opt.max_doublings, cols);
  const Propagation P1 = propagate_matrix_converged(
      H, 0.25, 0.75, opt.integrator, opt.tolerance, opt.max_doublings, cols);
  const SpectralFrame f[2] = {diagonalize(model.hamiltonian(-0.25), -0.25),
                              diagonalize(model.hamiltonian(0.25), 0.25)};
  const MatC Hc[2] = {model.hamiltonian(-0.25), model.hamiltonian(0.25)};

  FrontSeries out;
  out.n0 = n0;
  out.M = tr.M;
  out.halving_estimate = std::max(P0.halving_estimate, P1.halving_estimate);
  out.steps = std::max(P0.steps, P1.steps);
  out.limit_estimate = front_formula_limit(v, n0);

  const std::vector<cplx> A = transfer_products(v, n0, N_max);
  VecC chi = f[0].vecs.col(2 * n0 - 3);
  VecC eta = f[0].vecs.col(2 * n0 - 1);
  for (int N = 0; N <= N_max; ++N) {
    const int b = N % 2;
    const double tN = endpoint_time(N);
    out.N.push_back(N);
    out.P_formula.push_back(std::norm(A[N]));
    out.A_abs.push_back(std::abs(A[N]));
    out.P_exact.push_back(std::norm(f[b].vecs.col(2 * n0 - 3 + N).dot(chi)));
    out.survival.push_back(std::abs(f[b].vecs.col(2 * n0 - 1 + N).dot(eta)));
    out.energy_ratio.push_back(chi.dot(Hc[b] * chi).real() / (tN * tN));
    const double tail = tail_mass(chi, tr);
    out.tail.push_back(tail);
    if (tail > tr.tail_tolerance) {
      std::ostringstream os;
      os << "front: tail mass " << tail << " at N=" << N << " exceeds "
         << tr.tail_tolerance << "; enlarge M";
      throw TruncationError(os.str(), tr.M + 16);
    }
    if (N == N_max) break;
    if (b == 0) {
      chi = P0.U * chi;
      eta = P0.U * eta;
    } else {
      chi = shift_up(P1.U * chi);
      eta = shift_up(P1.U * eta);
    }
  }
  return out;
}

double front_exact(const Potential& v, int n0, int N, const FrontOptions& opt) {
  return front_series(v, n0, N, opt).P_exact.back();
}

std::vector<double> energy_growth(const Potential& v, int n0, int N_max,
                                  const FrontOptions& opt) {
  return front_series(v, n0, N_max, opt).energy_ratio;
}

double momentum_survival(const Potential& v, int n0, int N,
                         const FrontOptions& opt) {
  return front_series(v, n0, N, opt).survival.back();
}

}  // namespace zener
