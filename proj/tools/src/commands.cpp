#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "output.hpp"
#include "zener/adiabatic.hpp"
#include "zener/estimates.hpp"
#include "zener/front.hpp"
#include "zener/spectral.hpp"
#include "zener/transfer.hpp"

namespace zener::cli {

namespace {

struct Artifacts {
  std::map<std::string, std::string> csv;  // file stem -> contents
  json results = json::object();
  std::vector<FittedBound> fits;
  int code = 0;
  std::string summary;
};

std::vector<int> span(Range r) {
  std::vector<int> v;
  for (int m = r.lo; m <= r.hi; ++m) v.push_back(m);
  return v;
}

FrontOptions front_options(const RunConfig& c, const FrontBlock& b) {
  FrontOptions o;
  o.integrator.step = c.integrator.step;
  o.integrator.scheme = Scheme::Magnus4;  // the tolerance needs order 4
  o.tolerance = b.tolerance;
  o.tail_tolerance = c.truncation.tail_tolerance;
  return o;
}

Artifacts cmd_spectrum(const RunConfig& c) {
  const FiberModel model(c.potential, c.truncation, c.k);
  const SpectrumBlock& s = c.spectrum;
  std::vector<SpectralFrame> frames(s.t_points);
  parallel_for(s.t_points, c.workers, [&](int i) {
    const double t = s.t_min + (s.t_max - s.t_min) * i / (s.t_points - 1);
    frames[i] = diagonalize(model.hamiltonian(t), t);
  });
  Artifacts a;
  Csv csv({"t", "alpha", "E", "label"});
  int degenerate = 0;
  for (const auto& f : frames) {
    degenerate += f.degenerate;
    for (int al = 1; al <= s.bands; ++al)
      csv.row() << f.t << al << f.E(al - 1) << label_map(al, f.t + c.k);
  }
  a.csv["spectrum"] = csv.str();
  json dm = json::array(), dt = json::array();
  for (int m = 1; (m - 0.5) * (m - 0.5) <= frames.front().E(s.bands - 1) + 1.0; ++m) {
    dm.push_back(window_upper(m, Half::I0));
    dt.push_back(window_upper(m, Half::I1));
  }
  a.results = {{"bands", s.bands},
               {"t_points", s.t_points},
               {"degenerate_frames", degenerate},
               {"guides", {{"d_m", dm}, {"d_tilde_m", dt}}}};
  a.summary = std::to_string(s.t_points) + " frames, " +
              std::to_string(degenerate) + " flagged degenerate";
  return a;
}

Artifacts cmd_propagate(const RunConfig& c) {
  const FiberModel model(c.potential, c.truncation, c.k);
  const PropagateBlock& p = c.propagate;
  const SpectralFrame f0 = diagonalize(model.hamiltonian(p.t0), p.t0);
  FiberState st;
  st.t = p.t0;
  st.amplitudes = f0.vecs.col(p.band - 1);
  Csv csv({"t", "norm_defect", "energy", "overlap", "tail_mass", "halving_estimate"});
  auto record = [&](const FiberState& s) {
    const SpectralFrame f = diagonalize(model.hamiltonian(s.t), s.t);
    const double ov = std::norm(f.vecs.col(p.band - 1).dot(s.amplitudes));
    const double en = s.amplitudes.dot(model.hamiltonian(s.t) * s.amplitudes).real();
    csv.row() << s.t << s.norm_defect << en << ov
              << tail_mass(s.amplitudes, c.truncation) << s.halving_estimate;
  };
  record(st);
  double worst_halving = 0.0;
  for (int i = 1; i < p.samples; ++i) {
    const double t = p.t0 + (p.t1 - p.t0) * i / (p.samples - 1);
    st = propagate_state(model, st, t, c.integrator);
    worst_halving = std::max(worst_halving, st.halving_estimate);
    record(st);
  }
  const MatC U = propagate_matrix(model, p.t0, p.t1, c.integrator);
  Artifacts a;
  a.csv["propagate"] = csv.str();
  a.results = {{"unitarity_defect", unitarity_defect(U)},
               {"final_norm_defect", st.norm_defect},
               {"max_halving_estimate", worst_halving},
               {"steps", step_count(p.t0, p.t1, c.integrator.step)}};
  a.summary = "unitarity defect " + fmt17(unitarity_defect(U));
  return a;
}

Artifacts cmd_adiabatic(const RunConfig& c) {
  const AdiabaticBlock& b = c.adiabatic;
  const std::vector<int> ms = span(b.m);
  std::vector<AdiabaticErrorReport> rep(ms.size());
  parallel_for(static_cast<int>(ms.size()), c.workers, [&](int i) {
    Truncation tr = adiabatic_truncation(ms[i], b.buffer, c.truncation.tail_tolerance);
    tr.M = std::max(tr.M, c.truncation.M);
    const FiberModel model(c.potential, tr);
    rep[i] = adiabatic_error(model, ms[i], b.half, c.integrator, b.buffer);
  });
  Artifacts a;
  Csv csv({"m", "error", "bound", "ratio", "unitarity_defect", "intertwining_defect"});
  std::vector<double> xs, err, bnd, ratio;
  for (const auto& r : rep) {
    csv.row() << r.m << r.error << r.bound << r.error / r.bound << r.unitarity_defect
              << r.intertwining_defect;
    xs.push_back(r.m);
    err.push_back(r.error);
    bnd.push_back(r.bound);
    ratio.push_back(r.error / r.bound);
  }
  a.csv["adiabatic"] = csv.str();
  const FittedBound fb = fit_max_ratio("adiabatic/" + std::string(to_string(b.half)),
                                       "b(m)/<m>", xs, err, bnd);
  a.fits.push_back(fb);
  json res = {{"half", to_string(b.half)}, {"buffer", b.buffer}};
  if (xs.size() >= 3) {
    const double slope = log_log_slope(xs, err);
    const double rslope = log_log_slope(xs, ratio);
    res["log_log_slope"] = slope;
    res["ratio_slope"] = rslope;
    res["violation"] = rslope > 0.1;
    if (rslope > 0.1) a.code = 4;
  }
  a.results = res;
  a.summary = "C = " + fmt17(fb.C);
  return a;
}

Artifacts cmd_lz(const RunConfig& c, const RunOptions& opt) {
  const LzBlock& b = c.lz;
  const double r = c.potential.decay_exponent();
  std::vector<int> ms = span(b.m);
  for (int m : span(b.calibration))
    if (m < b.m.lo || m > b.m.hi) ms.push_back(m);
  std::sort(ms.begin(), ms.end());
  const int n = static_cast<int>(ms.size());
  std::vector<TransferMatrix> tm(n);
  std::vector<double> disc(n, std::numeric_limits<double>::quiet_NaN());
  parallel_for(n, c.workers, [&](int i) {
    tm[i] = transfer_matrix(c.potential, ms[i], b.half);
    if (b.oracle) {
      const Mat2 d = tm[i].matrix - transfer_oracle(c.potential, ms[i], b.half, b.tolerance);
      disc[i] = Eigen::JacobiSVD<Mat2>(d).singularValues()(0);
    }
  });
  auto in_range = [&](int m) { return m >= b.m.lo && m <= b.m.hi; };

  Artifacts a;
  Csv csv({"m", "half", "theta", "S00_re", "S00_im", "S01_re", "S01_im", "S10_re",
           "S10_im", "S11_re", "S11_im", "alpha_re", "alpha_im", "alpha_prime_re",
           "alpha_prime_im", "beta_re", "beta_im", "c1_re", "c1_im", "c2",
           "lambda_re", "lambda_im", "omega1", "omega2", "det_abs",
           "oracle_discrepancy", "model"});
  bool converged = true;
  for (int i = 0; i < n; ++i) {
    if (!in_range(ms[i])) continue;
    const TransferMatrix& t = tm[i];
    const Mat2& S = t.matrix;
    converged = converged && t.quadrature_converged;
    csv.row() << t.m << std::string(to_string(t.half)) << t.theta;
    for (int e = 0; e < 4; ++e) csv << S(e / 2, e % 2).real() << S(e / 2, e % 2).imag();
    csv << t.alpha.real() << t.alpha.imag() << t.alpha_prime.real()
        << t.alpha_prime.imag() << t.beta.real() << t.beta.imag() << t.c1.real()
        << t.c1.imag() << t.c2 << t.lambda.real() << t.lambda.imag() << t.omega1
        << t.omega2 << std::abs(S.determinant()) << disc[i]
        << transfer_error_model(t.m, r);
  }
  a.csv["lz"] = csv.str();

  json res = {{"half", to_string(b.half)}, {"quadrature_converged", converged}};
  if (b.oracle) {
    std::vector<double> xs, meas, model;
    for (int i = 0; i < n; ++i)
      if (ms[i] >= b.calibration.lo && ms[i] <= b.calibration.hi) {
        xs.push_back(ms[i]);
        meas.push_back(disc[i]);
        model.push_back(transfer_error_model(ms[i], r));
      }
    const FittedBound fb = fit_max_ratio("lz/" + std::string(to_string(b.half)),
                                         "log^8<m>/<m>^e", xs, meas, model);
    a.fits.push_back(fb);
    json budgets = json::array();
    for (int i = 0; i < n; ++i)
      if (in_range(ms[i]))
        budgets.push_back({{"m", ms[i]},
                           {"R_eff", fb.C * transfer_error_model(ms[i], r)},
                           {"discrepancy", disc[i]}});
    res["budgets"] = budgets;
    a.summary = "C = " + fmt17(fb.C);
  } else {
    a.summary = std::to_string(b.m.hi - b.m.lo + 1) + " matrices";
  }
  a.results = res;

  if (opt.dump_heff) {
    Csv h({"m", "t", "H00", "H01_re", "H01_im", "H11", "B00", "B01_re", "B01_im",
           "B11"});
    const double t0 = half_start(b.half), t1 = half_end(b.half);
    for (int m : span(b.m))
      for (int k = 0; k < b.heff_points; ++k) {
        const double t = t0 + (t1 - t0) * k / (b.heff_points - 1);
        const EffectiveHamiltonian2x2 e = h_eff(c.potential, m, t, b.half);
        h.row() << m << t << e.leading(0, 0).real() << e.leading(0, 1).real()
                << e.leading(0, 1).imag() << e.leading(1, 1).real()
                << e.correction(0, 0).real() << e.correction(0, 1).real()
                << e.correction(0, 1).imag() << e.correction(1, 1).real();
      }
    a.csv["lz_heff"] = h.str();
  }
  return a;
}

Artifacts cmd_front(const RunConfig& c) {
  const FrontBlock& b = c.front;
  const FrontSeries fs = front_series(c.potential, b.n0, b.N, front_options(c, b));
  Artifacts a;
  Csv csv({"N", "t_N", "P_formula", "P_exact", "A_abs", "energy_ratio", "survival",
           "tail_mass"});
  std::vector<double> xs, diff, one;
  for (size_t i = 0; i < fs.N.size(); ++i) {
    csv.row() << fs.N[i] << endpoint_time(fs.N[i]) << fs.P_formula[i] << fs.P_exact[i]
              << fs.A_abs[i] << fs.energy_ratio[i] << fs.survival[i] << fs.tail[i];
    xs.push_back(fs.N[i]);
    diff.push_back(std::abs(fs.P_exact[i] - fs.P_formula[i]));
    one.push_back(1.0);
  }
  a.csv["front"] = csv.str();
  const FittedBound fb = fit_max_ratio("front |P_exact - P_formula|", "1", xs, diff, one);
  a.fits.push_back(fb);
  a.results = {{"n0", fs.n0},
               {"M", fs.M},
               {"limit_estimate", fs.limit_estimate ? json(*fs.limit_estimate) : json(nullptr)},
               {"P_exact_final", fs.P_exact.back()},
               {"P_formula_final", fs.P_formula.back()},
               {"halving_estimate", fs.halving_estimate},
               {"steps_per_half_period", fs.steps}};
  a.summary = "P_exact(N) = " + fmt17(fs.P_exact.back());
  return a;
}

Artifacts cmd_energy(const RunConfig& c) {
  const FrontBlock& b = c.energy;
  const FrontSeries fs = front_series(c.potential, b.n0, b.N, front_options(c, b));
  Artifacts a;
  Csv csv({"N", "t_N", "energy_ratio", "deviation"});
  std::vector<double> xs, dev, model;
  for (size_t i = 0; i < fs.N.size(); ++i) {
    const double d = fs.energy_ratio[i] - 1.0;
    csv.row() << fs.N[i] << endpoint_time(fs.N[i]) << fs.energy_ratio[i] << d;
    if (2 * fs.N[i] >= b.N && fs.N[i] > 0) {
      xs.push_back(fs.N[i]);
      dev.push_back(std::abs(d));
      model.push_back(1.0 / b.n0);
    }
  }
  a.csv["energy"] = csv.str();
  const FittedBound fb = fit_max_ratio("energy |ratio - 1|", "1/n0", xs, dev, model);
  a.fits.push_back(fb);
  a.results = {{"n0", fs.n0},
               {"M", fs.M},
               {"window", json::array({(b.N + 1) / 2, b.N})},
               {"halving_estimate", fs.halving_estimate}};
  a.summary = "C = " + fmt17(fb.C);
  return a;
}

Artifacts cmd_bounds(const RunConfig& c) {
  const BoundsBlock& b = c.bounds;
  const KBoundReport rep =
      verify_k_bound(c.potential, b.m.lo, b.m.hi, b.half, c.truncation, b.t_points);
  Artifacts a;
  Csv csv({"m", "sup_norm", "b", "ratio"});
  for (size_t i = 0; i < rep.ms.size(); ++i)
    csv.row() << rep.ms[i] << rep.sup_norm[i] << rep.b[i]
              << (rep.b[i] > 0 ? rep.sup_norm[i] / rep.b[i] : 0.0);
  a.csv["bounds"] = csv.str();
  a.fits.push_back(rep.fit);
  a.results = {{"half", to_string(b.half)},
               {"residual_slope", rep.residual_slope},
               {"violation", rep.violation},
               {"m_star", m_star(rep)}};
  a.code = rep.violation ? 4 : 0;
  a.summary = "C_V = " + fmt17(rep.fit.C) + (rep.violation ? " (violation)" : "");
  return a;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "spectrum", "propagate", "adiabatic-check", "lz-matrix", "front", "energy", "bounds"};
  return names;
}

int run(const std::string& command, const RunConfig& c, const RunOptions& opt,
        std::ostream& log) {
  Artifacts a;
  if (command == "spectrum") a = cmd_spectrum(c);
  else if (command == "propagate") a = cmd_propagate(c);
  else if (command == "adiabatic-check") a = cmd_adiabatic(c);
  else if (command == "lz-matrix") a = cmd_lz(c, opt);
  else if (command == "front") a = cmd_front(c);
  else if (command == "energy") a = cmd_energy(c);
  else if (command == "bounds") a = cmd_bounds(c);
  else throw ConfigError("unknown command '" + command + "'");

  const auto dir = output_dir(c);
  json files = json::array();
  for (const auto& [stem, text] : a.csv) {
    write_text(dir / (stem + ".csv"), text);
    files.push_back(stem + ".csv");
  }
  json summary;
  summary["command"] = command;
  summary["config"] = echo(c);
  summary["results"] = a.results;
  json fits = json::array();
  for (const auto& f : a.fits) fits.push_back(fitted_bound_json(f));
  summary["fitted_bounds"] = fits;
  summary["csv"] = files;
  summary["exit_code"] = a.code;
  const std::string stem = command == "lz-matrix" ? "lz" : command == "adiabatic-check" ? "adiabatic" : command;
  write_json(dir / (stem + ".json"), summary);
  log << command << ": " << a.summary << " -> " << (dir / (stem + ".json")).string()
      << "\n";
  return a.code;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const NumericalError*>(&e)) return 3;
  return 1;
}

}  // namespace zener::cli
