// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Every tolerance is pinned here; fitted constants are printed with the line.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zener/adiabatic.hpp"
#include "zener/effective.hpp"
#include "zener/erf.hpp"
#include "zener/estimates.hpp"
#include "zener/front.hpp"
#include "zener/propagator.hpp"
#include "zener/spectral.hpp"
#include "zener/transfer.hpp"

using namespace zener;

namespace {

// free identities
constexpr double kFreeTol = 1e-12;
constexpr int kFreeGrid = 101;
constexpr int kFreeMaxM = 20;
// propagator
constexpr int kPropM = 64;
constexpr double kUnitarityTol = 1e-8;
constexpr double kCovarianceTol = 1e-7;
constexpr double kCompositionTol = 1e-9;
constexpr double kPropSeconds = 60.0;
// adiabatic
constexpr int kAdiabaticLo = 6, kAdiabaticHi = 24;
constexpr double kAdiabaticSlope = -2.5;
constexpr double kResidualSlope = 0.1;  // no growth of measured / model
constexpr double kAdiabaticSeconds = 600.0;
// transfer
constexpr int kCalibLo = 6, kCalibHi = 12;
constexpr double kTransferSlack = 3.0;
constexpr double kFreeTransferTol = 1e-12;
// Dyson
constexpr int kDysonLo = 6, kDysonHi = 40;
// E1
constexpr int kE1m = 8;
constexpr double kContourTol = 1e-8;
constexpr double kIdentityTol = 1e-10;
constexpr int kContourNodes = 128;
// front
constexpr int kFrontN = 16;
constexpr double kFreeFrontTol = 1e-10;
constexpr int kExpSumN = 40;
constexpr int kExpSumN0 = 12;
constexpr double kExpSumTol = 1e-6;
// energy
constexpr int kEnergyN0 = 12, kEnergyN0b = 16;
constexpr int kEnergyNlo = 20, kEnergyNhi = 40;
constexpr double kStableDrift = 0.2;
// K bound
constexpr int kKmHi = 16;
constexpr int kKM = 40;
constexpr double kKDecay = 0.1;  // K(-64^2) / K(-1) must fall below this
// erf
constexpr double kErfTol = 1e-12;
constexpr double kErfSymTol = 1e-14;
constexpr double kErfRadius = 8.0;

const Potential kPower = Potential::power(0.5, 1.0, -1);

Truncation trunc(int M) {
  Truncation tr;
  tr.M = M;
  return tr;
}

IntegratorConfig magnus(double step) {
  IntegratorConfig c;
  c.step = step;
  c.scheme = Scheme::Magnus4;
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double interior_norm(const MatC& A, const Truncation& tr, int radius) {
  const int lo = tr.index(-radius), n = 2 * radius + 1;
  return operator_norm(A.block(lo, lo, n, n));
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Outcome free_identities() {
  const FiberModel model(Potential::zero(), trunc(2 * kFreeMaxM + 8));
  double worst_gap = 0.0, worst_split = 0.0;
  for (Half h : {Half::I0, Half::I1}) {
    std::vector<double> inf(kFreeMaxM + 1, 1e300);
    for (int i = 0; i < kFreeGrid; ++i) {
      const double t = half_start(h) + 0.5 * i / (kFreeGrid - 1);
      const SpectralFrame f = diagonalize(model.hamiltonian(t), t);
      std::vector<BandProjector> bp;
      for (int m = 1; m <= kFreeMaxM + 1; ++m) bp.push_back(band_projector(f, m, h));
      for (int m = 1; m <= kFreeMaxM; ++m)
        for (int x : bp[m - 1].alphas)
          for (int y : bp[m].alphas)
            inf[m] = std::min(inf[m], std::abs(f.E(x - 1) - f.E(y - 1)));
    }
    for (int m = 1; m <= kFreeMaxM; ++m)
      worst_gap = std::max(worst_gap, std::abs(inf[m] - (h == Half::I0 ? m - 0.5 : m)));
  }
  const SpectralFrame f = diagonalize(model.hamiltonian(-0.25), -0.25);
  for (int m = 2; m <= kFreeMaxM; ++m)
    worst_split = std::max(worst_split, std::abs(f.E(2 * m - 2) - f.E(2 * m - 3) - (m - 1)));
  return {worst_gap <= kFreeTol && worst_split <= kFreeTol,
          fmt("gap err %.2e, splitting err %.2e (tol %.0e)", worst_gap, worst_split, kFreeTol)};
}

Outcome propagator_soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  const Truncation tr = trunc(kPropM);
  const FiberModel model(kPower, tr);
  const IntegratorConfig c = magnus(1.0 / 512);
  const MatC U0 = propagate_matrix(model, -0.25, 0.25, c);
  const MatC U1 = propagate_matrix(model, 0.25, 0.75, c);
  const MatC U2 = propagate_matrix(model, 0.75, 1.25, c);
  const MatC U01 = propagate_matrix(model, -0.25, 0.75, c);
  const double unit = std::max({unitarity_defect(U0), unitarity_defect(U1), unitarity_defect(U2)});
  const MatC T = shift_matrix(tr.dim());
  const double cov = interior_norm(U2 - T.adjoint() * U0 * T, tr, kPropM / 4);
  const double comp = operator_norm(U01 - U1 * U0);
  const double secs = seconds_since(t0);
  return {unit <= kUnitarityTol && cov <= kCovarianceTol && comp <= kCompositionTol &&
              secs < kPropSeconds,
          fmt("unitarity %.2e, covariance %.2e, composition %.2e, %.1fs at M=%d", unit, cov,
              comp, secs, kPropM)};
}

Outcome adiabatic_scaling() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> ms, err, bound;
  for (int m = kAdiabaticLo; m <= kAdiabaticHi; ++m) {
    const FiberModel model(kPower, adiabatic_truncation(m));
    const AdiabaticErrorReport r = adiabatic_error(model, m, Half::I0, magnus(1.0 / 512));
    ms.push_back(m);
    err.push_back(r.error);
    bound.push_back(r.bound);
  }
  const FittedBound fb = fit_max_ratio("adiabatic", "b(m)/<m>", ms, err, bound);
  std::vector<double> ratio;
  for (size_t i = 0; i < ms.size(); ++i) ratio.push_back(err[i] / bound[i]);
  const double slope = log_log_slope(ms, err);
  const double resid = log_log_slope(ms, ratio);
  const double secs = seconds_since(t0);
  return {slope <= kAdiabaticSlope && resid <= kResidualSlope && secs < kAdiabaticSeconds,
          fmt("C=%.3g at m=%g, slope %.2f (<= %.1f), ratio slope %.2f, %.0fs", fb.C, fb.argmax,
              slope, kAdiabaticSlope, resid, secs)};
}

Outcome transfer_accuracy() {
  const double r = kPower.decay_exponent();
  double C = 0.0;
  for (Half h : {Half::I0, Half::I1})
    for (int m = kCalibLo; m <= kCalibHi; ++m)
      C = std::max(C, transfer_discrepancy(kPower, m, h) / transfer_error_model(m, r));
  bool ok = true;
  std::string vals;
  for (Half h : {Half::I0, Half::I1}) {
    double prev = 1e300;
    for (int m : {8, 16, 32}) {
      const double d = transfer_discrepancy(kPower, m, h);
      ok = ok && d <= kTransferSlack * C * transfer_error_model(m, r) && d < prev;
      prev = d;
      vals += fmt(" %s/%d:%.2e", to_string(h), m, d);
    }
  }
  double free_err = 0.0;
  for (Half h : {Half::I0, Half::I1})
    for (int m : {2, 8, 16, 32}) {
      const double theta = h == Half::I0 ? (m - 1.0) * (m - 1.0) / 2 + 1.0 / 96
                                         : (m - 0.5) * (m - 0.5) / 2 + 1.0 / 96;
      const Mat2 ref = std::exp(-I * theta) * Mat2::Identity();
      free_err = std::max(free_err, (transfer_matrix(Potential::zero(), m, h).matrix - ref).norm());
    }
  ok = ok && free_err <= kFreeTransferTol;
  return {ok, fmt("C=%.3g on m in [%d,%d];%s; V=0 err %.1e", C, kCalibLo, kCalibHi,
                  vals.c_str(), free_err)};
}

Outcome dyson_remainder_fit() {
  std::vector<double> ms, r1, r3, m1, m3;
  bool ordered = true;
  for (int m = kDysonLo; m <= kDysonHi; ++m) {
    const cplx b = kPower(2 * (m - 1));
    const double a = m - 1.0;
    const DysonRemainders d = dyson_remainders(b, a);
    ms.push_back(m);
    r1.push_back(d.r1);
    r3.push_back(d.r3);
    m1.push_back(dyson_remainder_model(std::abs(b), a, 1));
    m3.push_back(dyson_remainder_model(std::abs(b), a, 3));
    ordered = ordered && d.r3 < d.r1;
  }
  std::vector<double> all_m = ms, all_r = r1, all_model = m1;
  all_m.insert(all_m.end(), ms.begin(), ms.end());
  all_r.insert(all_r.end(), r3.begin(), r3.end());
  all_model.insert(all_model.end(), m3.begin(), m3.end());
  const FittedBound fb = fit_max_ratio("dyson", "2|b|^p sqrt(log a)(log a/a)^{p/2}", all_m,
                                       all_r, all_model);
  std::vector<double> q1, q3;
  for (size_t i = 0; i < ms.size(); ++i) {
    q1.push_back(r1[i] / m1[i]);
    q3.push_back(r3[i] / m3[i]);
  }
  const double s1 = log_log_slope(ms, q1), s3 = log_log_slope(ms, q3);
  return {ordered && s1 <= kResidualSlope && s3 <= kResidualSlope,
          fmt("C=%.3g at m=%g, ratio slopes p1 %.2f p3 %.2f (<= %.1f), p3<p1 %s", fb.C,
              fb.argmax, s1, s3, kResidualSlope, ordered ? "yes" : "no")};
}

Outcome e_hat_identities() {
  const Truncation tr = trunc(3 * kE1m);
  const FiberModel model(kPower, tr);
  double contour = 0.0, i1 = 0.0, i3 = 0.0;
  for (Half h : {Half::I0, Half::I1}) {
    const double t = half_center(h) + 0.1;
    const MatC E1 = e_hat_1(kPower, kE1m, t, h, tr);
    const double lo = window_lower(kE1m, h), hi = window_upper(kE1m, h);
    for (int a = -tr.M; a <= tr.M; ++a)
      for (int b = -tr.M; b <= tr.M; ++b) {
        const cplx ref = oracle::contour_entry(kPower(a - b), (a + t) * (a + t),
                                               (b + t) * (b + t), lo, hi, kE1m, kContourNodes);
        contour = std::max(contour, std::abs(E1(tr.index(a), tr.index(b)) - ref));
      }
    const PairBasis pb = pair_basis(kE1m, h);
    MatC Q = MatC::Zero(tr.dim(), tr.dim());
    Q(tr.index(pb.p), tr.index(pb.p)) = 1.0;
    Q(tr.index(pb.q), tr.index(pb.q)) = 1.0;
    const MatC Qp = MatC::Identity(tr.dim(), tr.dim()) - Q;
    i1 = std::max({i1, operator_norm(Q * E1 * Q), operator_norm(Qp * E1 * Qp)});
    MatC H0 = MatC::Zero(tr.dim(), tr.dim());
    H0.diagonal() = model.diagonal(t).cast<cplx>();
    const MatC& V = model.coupling();
    i3 = std::max(i3, operator_norm(H0 * E1 - E1 * H0 + V * Q - Q * V));
  }
  return {contour <= kContourTol && i1 <= kIdentityTol && i3 <= kIdentityTol,
          fmt("contour %.2e (tol %.0e), i1 %.1e, i3 %.1e (tol %.0e)", contour, kContourTol, i1,
              i3, kIdentityTol)};
}

Outcome front_consistency() {
  std::vector<double> diffs;
  std::string vals;
  for (int n0 : {8, 12, 16}) {
    const FrontSeries s = front_series(kPower, n0, kFrontN);
    diffs.push_back(std::abs(s.P_exact.back() - s.P_formula.back()));
    vals += fmt(" n0=%d:%.2e", n0, diffs.back());
  }
  const bool monotone = diffs[1] < diffs[0] && diffs[2] < diffs[1];
  const FrontSeries z = front_series(Potential::zero(), 8, kFrontN);
  double free_err = 0.0;
  for (size_t i = 0; i < z.N.size(); ++i)
    free_err = std::max({free_err, std::abs(z.P_exact[i] - 1.0), std::abs(z.P_formula[i] - 1.0)});
  const double pf = std::norm(transfer_product(kPower, kExpSumN0, kExpSumN));
  const double es = front_exponential_sum(kPower, kExpSumN0, kExpSumN);
  const double exp_diff = std::abs(pf - es);
  return {monotone && free_err <= kFreeFrontTol && exp_diff <= kExpSumTol,
          fmt("|P_exact-P_formula| at N=%d:%s (monotone %s); V=0 err %.1e; "
              "|A|^2 vs exp-sum at N=%d, n0=%d: %.2e (tol %.0e)",
              kFrontN, vals.c_str(), monotone ? "yes" : "no", free_err, kExpSumN, kExpSumN0,
              exp_diff, kExpSumTol)};
}

Outcome energy_growth_band() {
  auto fit = [](int n0, double& lo, double& hi) {
    const std::vector<double> e = energy_growth(kPower, n0, kEnergyNhi);
    double C = 0.0;
    lo = 1e300;
    hi = -1e300;
    for (int N = kEnergyNlo; N <= kEnergyNhi; ++N) {
      C = std::max(C, std::abs(e[N] - 1.0) * n0);
      lo = std::min(lo, e[N]);
      hi = std::max(hi, e[N]);
    }
    return C;
  };
  double lo12, hi12, lo16, hi16;
  const double C12 = fit(kEnergyN0, lo12, hi12);
  const double C16 = fit(kEnergyN0b, lo16, hi16);
  const double drift = std::abs(C16 - C12) / C12;
  return {drift <= kStableDrift,
          fmt("C=%.3g at n0=%d (ratio %.3f..%.3f), C=%.3g at n0=%d (ratio %.3f..%.3f), "
              "drift %.0f%% (<= %.0f%%)",
              C12, kEnergyN0, lo12, hi12, C16, kEnergyN0b, lo16, hi16, 100 * drift,
              100 * kStableDrift)};
}

Outcome k_bound() {
  double worst = 0.0;
  std::string vals;
  for (Half h : {Half::I0, Half::I1}) {
    const double base = verify_k_bound(kPower, 1, kKmHi, h, trunc(kKM)).fit.C;
    const double wide = verify_k_bound(kPower, 1, 2 * kKmHi, h, trunc(kKM)).fit.C;
    const double deep = verify_k_bound(kPower, 1, kKmHi, h, trunc(2 * kKM)).fit.C;
    const double drift = std::max(std::abs(wide - base), std::abs(deep - base)) / base;
    worst = std::max(worst, drift);
    vals += fmt(" %s C=%.3g/%.3g/%.3g", to_string(h), base, wide, deep);
  }
  std::vector<double> k;
  bool monotone = true;
  for (int a = 1; a <= 64; a *= 2) {
    k.push_back(k_hs_norm(kPower, cplx(-double(a) * a, 0.0), 0.0, 0.0, trunc(2 * kKM)));
    if (k.size() > 1 && k.back() >= k[k.size() - 2]) monotone = false;
  }
  const double decay = k.back() / k.front();
  return {worst <= kStableDrift && monotone && decay <= kKDecay,
          fmt("C_V base/2m/2M:%s, drift %.1f%%; K(-a^2) monotone %s, K(-64^2)/K(-1) %.3f",
              vals.c_str(), 100 * worst, monotone ? "yes" : "no", decay)};
}

Outcome erf_accuracy() {
  // 10 radii x 10 angles inside |z| <= 8; error relative to max(1, |erf|)
  double worst = 0.0, sym = 0.0;
  for (int i = 1; i <= 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double rad = kErfRadius * i / 10.0, ang = 2 * M_PI * (j + 0.5) / 10.0;
      const cplx z = std::polar(rad, ang);
      const cplx ref = oracle::erf_quadrature(z);
      const cplx w = erf_complex(z);
      const double s = std::max(1.0, std::abs(ref));
      worst = std::max(worst, std::abs(w - ref) / s);
      sym = std::max({sym, std::abs(erf_complex(-z) + w) / s,
                      std::abs(erf_complex(std::conj(z)) - std::conj(w)) / s});
    }
  return {worst <= kErfTol && sym <= kErfSymTol,
          fmt("max err %.2e (tol %.0e), symmetry %.1e (tol %.0e)", worst, kErfTol, sym,
              kErfSymTol)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"free-identities", free_identities},
      {"propagator-soundness", propagator_soundness},
      {"adiabatic-scaling", adiabatic_scaling},
      {"transfer-matrix", transfer_accuracy},
      {"dyson-remainder", dyson_remainder_fit},
      {"e1-contour", e_hat_identities},
      {"front-consistency", front_consistency},
      {"energy-growth", energy_growth_band},
      {"k-bound", k_bound},
      {"complex-erf", erf_accuracy},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
