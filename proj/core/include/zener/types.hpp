#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace zener {

using cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr cplx I{0.0, 1.0};

// The Bloch period is normalized to 1. I0 = [-1/4, 1/4) holds the crossing at
// t = 0, I1 = [1/4, 3/4) the crossing at t = 1/2.
enum class Half { I0, I1 };

inline double half_start(Half h) { return h == Half::I0 ? -0.25 : 0.25; }
inline double half_end(Half h) { return h == Half::I0 ? 0.25 : 0.75; }
inline double half_center(Half h) { return h == Half::I0 ? 0.0 : 0.5; }

// Half-period endpoints t_l = -1/4 + l/2.
inline double endpoint_time(int l) { return -0.25 + 0.5 * l; }

const char* to_string(Half h);
Half parse_half(const std::string& s);

// <x> = sqrt(1 + x^2)
inline double bracket(double x) { return std::sqrt(1.0 + x * x); }

// Bad input: maps to exit code 2 in the CLI.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical aborts: exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationError : NumericalError {
  TruncationError(const std::string& what, int suggested)
      : NumericalError(what), suggested_M(suggested) {}
  int suggested_M;
};
struct WindowError : NumericalError {
  using NumericalError::NumericalError;
};
struct SzNagyError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace zener
