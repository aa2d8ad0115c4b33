#pragma once

#include <string>
#include <vector>

#include "zener/model.hpp"

namespace zener {

// b(m) = log^2<4m-1> / <m>^{1+min(0,2r)}
double b_of_m(double m, double r);

// Hilbert-Schmidt norm of |R0|^{1/2} V |R0|^{1/2} at z on the truncation.
// Throws NumericalError when z is within 1e-6 of a free eigenvalue.
double k_hs_norm(const Potential& v, cplx z, double k, double t,
                 const Truncation& tr);

// A constant fitted as the max ratio measured / model over a range.
struct FittedBound {
  std::string name;
  std::string model;
  double C = 0.0;
  double m_lo = 0.0, m_hi = 0.0;
  double argmax = 0.0;  // abscissa of the max ratio
};

FittedBound fit_max_ratio(const std::string& name, const std::string& model,
                          const std::vector<double>& xs,
                          const std::vector<double>& measured,
                          const std::vector<double>& model_values);

// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& xs,
                     const std::vector<double>& ys);

// Symmetric log grid +-{0, 0.1, 1, 10, 100, m^2, 10 m^2}.
std::vector<double> contour_y_grid(int m);

struct KBoundReport {
  FittedBound fit;
  Half half = Half::I0;
  std::vector<int> ms;
  std::vector<double> sup_norm;
  std::vector<double> b;
  double residual_slope = 0.0;  // slope of log(ratio) vs log m
  bool violation = false;       // residual slope > 0.1
};

// sup over t-grid x y-grid of ||K(d_m + iy, t)||_HS for m in [m_lo, m_hi].
KBoundReport verify_k_bound(const Potential& v, int m_lo, int m_hi, Half half,
                            const Truncation& tr, int t_points = 21);

// Smallest m such that sup ||K||_HS < 1/2 on every window m' in [m, m_hi].
// Returns m_hi + 1 if none.
int m_star(const KBoundReport& report);

}  // namespace zener
