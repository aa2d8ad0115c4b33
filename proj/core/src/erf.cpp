#include "zener/erf.hpp"

#include <cmath>
#include <sstream>

namespace zener {

namespace {

using lcplx = std::complex<long double>;

constexpr long double kTwoOverSqrtPi = 1.1283791670955125738961589031215452L;
constexpr long double kInvSqrtPi = 0.5641895835477562869480794515607726L;

// Maclaurin series. Cancellation costs a factor e^{2 Re(z)^2} relative to
// |erf|, absorbed by the long double accumulator on the region it is used.
lcplx erf_series(lcplx z) {
  const lcplx z2 = z * z;
  lcplx term = z, sum = z;
  for (int n = 1; n < 2000; ++n) {
    term *= -z2 / static_cast<long double>(n);
    const lcplx add = term / static_cast<long double>(2 * n + 1);
    sum += add;
    if (std::abs(add) <= 1e-21L * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// erfc(z) = e^{-z^2}/sqrt(pi) / (z + (1/2)/(z + (2/2)/(z + (3/2)/(z + ...)))),
// Re z > 0, modified Lentz.
lcplx erfc_cf(lcplx z) {
  const long double tiny = 1e-300L;
  lcplx f = z;
  lcplx C = f, D = 0;
  for (int j = 1; j < 20000; ++j) {
    const long double a = 0.5L * j;
    D = z + a * D;
    if (std::abs(D) < tiny) D = tiny;
    C = z + a / C;
    if (std::abs(C) < tiny) C = tiny;
    D = 1.0L / D;
    const lcplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0L) < 1e-20L) break;
  }
  return std::exp(-z * z) * kInvSqrtPi / f;
}

}  // namespace

cplx erf_complex(cplx z) {
  const double az = std::abs(z);
  if (!(az <= 50.0)) {
    std::ostringstream os;
    os << "erf_complex: |z| = " << az << " outside the supported disc |z| <= 50";
    throw ConfigError(os.str());
  }
  if (z.imag() * z.imag() - z.real() * z.real() > 700.0) {
    std::ostringstream os;
    os << "erf_complex: overflow, Re(-z^2) = "
       << z.imag() * z.imag() - z.real() * z.real();
    throw NumericalError(os.str());
  }
  if (az == 0.0) return 0.0;
  const lcplx zl(z.real(), z.imag());
  if (az <= 3.5 || std::abs(z.real()) <= 2.0) {
    const lcplx r = erf_series(zl);
    return cplx(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  }
  const bool flip = z.real() < 0.0;
  const lcplx w = flip ? -zl : zl;
  lcplx r = 1.0L - erfc_cf(w);
  if (flip) r = -r;
  return cplx(static_cast<double>(r.real()), static_cast<double>(r.imag()));
}

}  // namespace zener
