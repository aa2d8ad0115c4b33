#pragma once

#include "zener/types.hpp"

namespace zener {

// erf(z) = 2/sqrt(pi) int_0^z e^{-s^2} ds for |z| <= 50. Throws ConfigError
// outside that disc and NumericalError when e^{-z^2} overflows a double.
cplx erf_complex(cplx z);

}  // namespace zener
