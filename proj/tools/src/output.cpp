#include "output.hpp"

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace zener::cli {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

Csv& Csv::row() {
  rows_.emplace_back();
  return *this;
}

Csv& Csv::operator<<(double x) {
  rows_.back().push_back(fmt17(x));
  return *this;
}

Csv& Csv::operator<<(int x) {
  rows_.back().push_back(std::to_string(x));
  return *this;
}

Csv& Csv::operator<<(const std::string& s) {
  rows_.back().push_back(s);
  return *this;
}

std::string Csv::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) {
    if (r.size() != header_.size())
      throw std::logic_error("csv row width does not match the header");
    line(r);
  }
  return os.str();
}

std::filesystem::path output_dir(const RunConfig& c) {
  const char* env = std::getenv("ZENER_OUTPUT_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path(c.output_dir);
}

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << s;
}

void write_json(const std::filesystem::path& p, const json& j) {
  write_text(p, j.dump(2) + "\n");
}

json fitted_bound_json(const FittedBound& fb) {
  return {{"name", fb.name},
          {"model", fb.model},
          {"C", fb.C},
          {"m_range", json::array({fb.m_lo, fb.m_hi})},
          {"max_ratio_location", fb.argmax}};
}

void parallel_for(int n, int workers, const std::function<void(int)>& f) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](int i) {
    try {
      f(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    const int w = std::min(workers, n);
    for (int id = 0; id < w; ++id)
      pool.emplace_back([&, id] {
        for (int i = id; i < n; i += w) run(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace zener::cli
