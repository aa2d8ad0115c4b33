#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "config.hpp"
#include "zener/estimates.hpp"

namespace zener::cli {

// Column-ordered CSV with %.17g floats.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  Csv& row();
  Csv& operator<<(double x);
  Csv& operator<<(int x);
  Csv& operator<<(const std::string& s);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fmt17(double x);

// ZENER_OUTPUT_DIR when set, else the configured directory.
std::filesystem::path output_dir(const RunConfig& c);

void write_text(const std::filesystem::path& p, const std::string& s);
void write_json(const std::filesystem::path& p, const json& j);

json fitted_bound_json(const FittedBound& fb);

// Runs f(0..n-1) on `workers` threads; results are indexed, so output order
// never depends on scheduling. The first exception (lowest index) rethrows.
void parallel_for(int n, int workers, const std::function<void(int)>& f);

}  // namespace zener::cli
