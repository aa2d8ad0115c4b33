#include "config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace zener::cli {

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

template <class T>
T field(const json& obj, const std::string& where, const char* key, T def) {
  if (!obj.contains(key)) return def;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

Range range_field(const json& obj, const std::string& where, const char* key,
                  Range def, int min_lo) {
  if (!obj.contains(key)) return def;
  const json& r = obj.at(key);
  if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
      !r[1].is_number_integer())
    throw ConfigError(where + "." + key + ": expected [lo, hi] integers");
  Range out{r[0].get<int>(), r[1].get<int>()};
  if (out.lo < min_lo || out.hi < out.lo)
    throw ConfigError(where + "." + key + ": need " + std::to_string(min_lo) +
                      " <= lo <= hi");
  return out;
}

Half half_field(const json& obj, const std::string& where, Half def) {
  if (!obj.contains("half")) return def;
  try {
    return parse_half(field<std::string>(obj, where, "half", ""));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ".half: " + e.what());
  }
}

const json& block(const json& j, const char* key) {
  static const json empty = json::object();
  return j.contains(key) ? j.at(key) : empty;
}

FrontBlock parse_front(const json& j, const char* name) {
  const json& b = block(j, name);
  const std::string w = name;
  check_keys(b, w, {"n0", "N", "tolerance"});
  FrontBlock f;
  f.n0 = field(b, w, "n0", f.n0);
  f.N = field(b, w, "N", f.N);
  f.tolerance = field(b, w, "tolerance", f.tolerance);
  if (f.n0 < 2) throw ConfigError(w + ".n0 must be >= 2");
  if (f.N < 0 || f.N > 400) throw ConfigError(w + ".N must be in [0, 400]");
  if (!(f.tolerance > 0.0)) throw ConfigError(w + ".tolerance must be > 0");
  return f;
}

json range_json(Range r) { return json::array({r.lo, r.hi}); }

json front_json(const FrontBlock& f) {
  return {{"n0", f.n0}, {"N", f.N}, {"tolerance", f.tolerance}};
}

}  // namespace

Potential parse_potential(const json& p) {
  if (!p.is_object()) throw ConfigError("potential: expected an object");
  const std::string w = "potential";
  if (p.contains("coefficients")) {
    check_keys(p, w, {"coefficients", "r", "label"});
    const json& c = p.at("coefficients");
    if (!c.is_object()) throw ConfigError("potential.coefficients: expected an object");
    std::map<int, cplx> table;
    for (const auto& [key, val] : c.items()) {
      int n = 0;
      try {
        size_t used = 0;
        n = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ConfigError("potential.coefficients: key '" + key + "' is not an integer");
      }
      cplx v;
      if (val.is_number()) {
        v = val.get<double>();
      } else if (val.is_array() && val.size() == 2 && val[0].is_number() &&
                 val[1].is_number()) {
        v = cplx(val[0].get<double>(), val[1].get<double>());
      } else {
        throw ConfigError("potential.coefficients." + key + ": expected number or [re, im]");
      }
      table[n] = v;
    }
    return Potential::table(std::move(table), field(p, w, "r", 0.0),
                            field<std::string>(p, w, "label", "table"));
  }
  check_keys(p, w, {"family", "c", "r", "cutoff", "label"});
  const std::string fam = field<std::string>(p, w, "family", "");
  if (fam == "zero") return Potential::zero();
  if (fam != "power")
    throw ConfigError("potential.family must be 'power' or 'zero' (or give coefficients)");
  const double c = field(p, w, "c", 0.0);
  const double r = field(p, w, "r", 1.0);
  const int cutoff = field(p, w, "cutoff", -1);
  return Potential::power(c, r, cutoff, field<std::string>(p, w, "label", "power"));
}

RunConfig parse_config(const json& j) {
  check_keys(j, "config",
             {"potential", "k", "truncation", "integrator", "workers", "output",
              "spectrum", "propagate", "adiabatic", "lz", "front", "energy",
              "bounds"});
  RunConfig c;
  c.potential_spec = j.contains("potential") ? j.at("potential") : json{{"family", "zero"}};
  c.potential = parse_potential(c.potential_spec);

  c.k = field(j, "config", "k", 0.0);
  if (!(c.k >= 0.0 && c.k < 1.0)) throw ConfigError("k must lie in [0, 1)");

  const json& tr = block(j, "truncation");
  check_keys(tr, "truncation", {"M", "tail_tolerance"});
  c.truncation.M = field(tr, "truncation", "M", c.truncation.M);
  c.truncation.tail_tolerance =
      field(tr, "truncation", "tail_tolerance", c.truncation.tail_tolerance);
  if (c.truncation.M > 256) throw ConfigError("truncation.M must be <= 256");
  try {
    validate(c.truncation);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("truncation: ") + e.what());
  }

  const json& in = block(j, "integrator");
  check_keys(in, "integrator", {"step", "scheme", "richardson"});
  c.integrator.step = field(in, "integrator", "step", c.integrator.step);
  try {
    c.integrator.scheme =
        parse_scheme(field<std::string>(in, "integrator", "scheme",
                                        to_string(c.integrator.scheme)));
    c.integrator.richardson =
        field(in, "integrator", "richardson", c.integrator.richardson);
    validate(c.integrator);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("integrator: ") + e.what());
  }

  c.workers = field(j, "config", "workers", 1);
  if (c.workers < 1 || c.workers > 256) throw ConfigError("workers must be in [1, 256]");

  const json& out = block(j, "output");
  check_keys(out, "output", {"dir"});
  c.output_dir = field<std::string>(out, "output", "dir", c.output_dir);

  const json& sp = block(j, "spectrum");
  check_keys(sp, "spectrum", {"t_min", "t_max", "t_points", "bands"});
  c.spectrum.t_min = field(sp, "spectrum", "t_min", c.spectrum.t_min);
  c.spectrum.t_max = field(sp, "spectrum", "t_max", c.spectrum.t_max);
  c.spectrum.t_points = field(sp, "spectrum", "t_points", c.spectrum.t_points);
  c.spectrum.bands = field(sp, "spectrum", "bands", c.spectrum.bands);
  if (c.spectrum.t_points < 2 || !(c.spectrum.t_max > c.spectrum.t_min))
    throw ConfigError("spectrum: need t_points >= 2 and t_max > t_min");
  if (c.spectrum.bands < 1 || c.spectrum.bands > c.truncation.dim())
    throw ConfigError("spectrum.bands must be in [1, 2M+1]");

  const json& pr = block(j, "propagate");
  check_keys(pr, "propagate", {"t0", "t1", "band", "samples"});
  c.propagate.t0 = field(pr, "propagate", "t0", c.propagate.t0);
  c.propagate.t1 = field(pr, "propagate", "t1", c.propagate.t1);
  c.propagate.band = field(pr, "propagate", "band", c.propagate.band);
  c.propagate.samples = field(pr, "propagate", "samples", c.propagate.samples);
  if (!(c.propagate.t1 > c.propagate.t0)) throw ConfigError("propagate: need t1 > t0");
  if (c.propagate.band < 1 || c.propagate.band > c.truncation.dim())
    throw ConfigError("propagate.band must be in [1, 2M+1]");
  if (c.propagate.samples < 2) throw ConfigError("propagate.samples must be >= 2");

  const json& ad = block(j, "adiabatic");
  check_keys(ad, "adiabatic", {"m_range", "half", "buffer"});
  c.adiabatic.m = range_field(ad, "adiabatic", "m_range", c.adiabatic.m, 2);
  c.adiabatic.half = half_field(ad, "adiabatic", c.adiabatic.half);
  c.adiabatic.buffer = field(ad, "adiabatic", "buffer", c.adiabatic.buffer);
  if (c.adiabatic.buffer < 1) throw ConfigError("adiabatic.buffer must be >= 1");

  const json& lz = block(j, "lz");
  check_keys(lz, "lz", {"m_range", "half", "oracle", "tolerance", "calibration",
                        "heff_points"});
  c.lz.half = half_field(lz, "lz", c.lz.half);
  const int lz_min = c.lz.half == Half::I0 ? 2 : 1;
  c.lz.m = range_field(lz, "lz", "m_range", c.lz.m, lz_min);
  c.lz.calibration = range_field(lz, "lz", "calibration", c.lz.calibration, lz_min);
  c.lz.oracle = field(lz, "lz", "oracle", c.lz.oracle);
  c.lz.tolerance = field(lz, "lz", "tolerance", c.lz.tolerance);
  c.lz.heff_points = field(lz, "lz", "heff_points", c.lz.heff_points);
  if (!(c.lz.tolerance > 0.0 && c.lz.tolerance < 1e-3))
    throw ConfigError("lz.tolerance must be in (0, 1e-3)");
  if (c.lz.heff_points < 2) throw ConfigError("lz.heff_points must be >= 2");

  c.front = parse_front(j, "front");
  c.energy = parse_front(j, "energy");

  const json& bd = block(j, "bounds");
  check_keys(bd, "bounds", {"m_range", "half", "t_points"});
  c.bounds.m = range_field(bd, "bounds", "m_range", c.bounds.m, 1);
  c.bounds.half = half_field(bd, "bounds", c.bounds.half);
  c.bounds.t_points = field(bd, "bounds", "t_points", c.bounds.t_points);
  if (c.bounds.t_points < 1) throw ConfigError("bounds.t_points must be >= 1");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

json echo(const RunConfig& c) {
  json j;
  j["potential"] = c.potential_spec;
  j["k"] = c.k;
  j["truncation"] = {{"M", c.truncation.M},
                     {"tail_tolerance", c.truncation.tail_tolerance}};
  j["integrator"] = {{"step", c.integrator.step},
                     {"scheme", to_string(c.integrator.scheme)},
                     {"richardson", c.integrator.richardson}};
  j["workers"] = c.workers;
  j["spectrum"] = {{"t_min", c.spectrum.t_min},
                   {"t_max", c.spectrum.t_max},
                   {"t_points", c.spectrum.t_points},
                   {"bands", c.spectrum.bands}};
  j["propagate"] = {{"t0", c.propagate.t0},
                    {"t1", c.propagate.t1},
                    {"band", c.propagate.band},
                    {"samples", c.propagate.samples}};
  j["adiabatic"] = {{"m_range", range_json(c.adiabatic.m)},
                    {"half", to_string(c.adiabatic.half)},
                    {"buffer", c.adiabatic.buffer}};
  j["lz"] = {{"m_range", range_json(c.lz.m)},
             {"half", to_string(c.lz.half)},
             {"oracle", c.lz.oracle},
             {"tolerance", c.lz.tolerance},
             {"calibration", range_json(c.lz.calibration)},
             {"heff_points", c.lz.heff_points}};
  j["front"] = front_json(c.front);
  j["energy"] = front_json(c.energy);
  j["bounds"] = {{"m_range", range_json(c.bounds.m)},
                 {"half", to_string(c.bounds.half)},
                 {"t_points", c.bounds.t_points}};
  return j;
}

}  // namespace zener::cli
