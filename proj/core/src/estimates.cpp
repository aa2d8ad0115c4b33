#include "zener/estimates.hpp"

#include <cmath>
#include <sstream>

#include "zener/spectral.hpp"

namespace zener {

double b_of_m(double m, double r) {
  const double l = std::log(bracket(4.0 * m - 1.0));
  return l * l / std::pow(bracket(m), 1.0 + std::min(0.0, 2.0 * r));
}

double k_hs_norm(const Potential& v, cplx z, double k, double t,
                 const Truncation& tr) {
  const int d = tr.dim();
  std::vector<double> dist(d);
  for (int i = 0; i < d; ++i) {
    dist[i] = std::abs(free_eigenvalue(tr.lattice(i), k, t) - z);
    if (dist[i] < 1e-6) {
      std::ostringstream os;
      os << "z = " << z << " within 1e-6 of free eigenvalue n=" << tr.lattice(i);
      throw NumericalError(os.str());
    }
  }
  std::vector<double> a(2 * d - 1);  // |V(j)|^2 for j in [-(d-1), d-1]
  for (int j = -(d - 1); j <= d - 1; ++j) a[j + d - 1] = std::norm(v(j));
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    double row = 0.0;
    for (int j = 0; j < d; ++j) row += a[i - j + d - 1] / dist[j];
    s += row / dist[i];
  }
  return std::sqrt(s);
}

FittedBound fit_max_ratio(const std::string& name, const std::string& model,
                          const std::vector<double>& xs,
                          const std::vector<double>& measured,
                          const std::vector<double>& model_values) {
  FittedBound fb;
  fb.name = name;
  fb.model = model;
  if (xs.empty()) return fb;
  fb.m_lo = xs.front();
  fb.m_hi = xs.back();
  for (size_t i = 0; i < xs.size(); ++i) {
    const double r = measured[i] / model_values[i];
    if (i == 0 || r > fb.C) {
      fb.C = r;
      fb.argmax = xs[i];
    }
  }
  return fb;
}

double log_log_slope(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = std::log(xs[i]), y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> contour_y_grid(int m) {
  const double base[] = {0.1, 1.0, 10.0, 100.0, double(m) * m, 10.0 * m * m};
  std::vector<double> y{0.0};
  for (double b : base) {
    y.push_back(b);
    y.push_back(-b);
  }
  return y;
}

KBoundReport verify_k_bound(const Potential& v, int m_lo, int m_hi, Half half,
                            const Truncation& tr, int t_points) {
  if (v.decay_exponent() <= -0.5)
    throw ConfigError("K bound needs r > -1/2");
  if (m_lo < 1 || m_hi < m_lo) throw ConfigError("bad m range for K bound");
  KBoundReport rep;
  rep.half = half;
  const double r = v.decay_exponent();
  const double t0 = half_start(half), t1 = half_end(half);
  std::vector<double> xs, ratios;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double d = window_upper(m, half);
    double sup = 0.0;
    for (int i = 0; i < t_points; ++i) {
      const double t = t_points == 1 ? t0 : t0 + (t1 - t0) * i / (t_points - 1);
      for (double y : contour_y_grid(m))
        sup = std::max(sup, k_hs_norm(v, cplx(d, y), 0.0, t, tr));
    }
    rep.ms.push_back(m);
    rep.sup_norm.push_back(sup);
    rep.b.push_back(b_of_m(m, r));
    xs.push_back(m);
  }
  rep.fit = fit_max_ratio(std::string("K_HS/") + to_string(half), "b(m)", xs,
                          rep.sup_norm, rep.b);
  if (v.is_zero() || xs.size() < 2) return rep;
  for (size_t i = 0; i < xs.size(); ++i) ratios.push_back(rep.sup_norm[i] / rep.b[i]);
  rep.residual_slope = log_log_slope(xs, ratios);
  rep.violation = rep.residual_slope > 0.1;
  return rep;
}

int m_star(const KBoundReport& report) {
  int ms = report.ms.empty() ? 1 : report.ms.back() + 1;
  for (int i = static_cast<int>(report.ms.size()) - 1; i >= 0; --i) {
    if (report.sup_norm[i] >= 0.5) break;
    ms = report.ms[i];
  }
  return ms;
}

}  // namespace zener
