#pragma once

#include <string>

#include <json.hpp>

#include "zener/model.hpp"
#include "zener/propagator.hpp"

namespace zener::cli {

using json = nlohmann::ordered_json;

struct Range {
  int lo = 0;
  int hi = 0;
};

struct SpectrumBlock {
  double t_min = -0.25;
  double t_max = 0.75;
  int t_points = 101;
  int bands = 12;
};

struct PropagateBlock {
  double t0 = -0.25;
  double t1 = 0.25;
  int band = 1;  // initial eigenvector phi_band(t0)
  int samples = 9;
};

struct AdiabaticBlock {
  Range m{6, 12};
  Half half = Half::I0;
  int buffer = 8;
};

struct LzBlock {
  Range m{2, 16};
  Half half = Half::I0;
  bool oracle = true;
  double tolerance = 1e-12;
  Range calibration{6, 12};  // m-range that fixes the budget constant
  int heff_points = 33;      // t-samples per matrix for --dump-heff
};

struct FrontBlock {
  int n0 = 12;
  int N = 40;
  double tolerance = 1e-9;
};

struct BoundsBlock {
  Range m{1, 32};
  Half half = Half::I0;
  int t_points = 21;
};

struct RunConfig {
  json potential_spec;
  Potential potential = Potential::zero();
  double k = 0.0;
  Truncation truncation;
  IntegratorConfig integrator;
  int workers = 1;
  std::string output_dir = "zener-out";
  SpectrumBlock spectrum;
  PropagateBlock propagate;
  AdiabaticBlock adiabatic;
  LzBlock lz;
  FrontBlock front;
  FrontBlock energy;
  BoundsBlock bounds;
};

// Throws ConfigError on malformed or out-of-range input.
RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);

Potential parse_potential(const json& j);

// Normalized echo of every field (defaults filled in), for JSON summaries.
json echo(const RunConfig& c);

}  // namespace zener::cli
