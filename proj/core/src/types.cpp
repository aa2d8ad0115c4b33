#include "zener/types.hpp"

namespace zener {

const char* to_string(Half h) { return h == Half::I0 ? "I0" : "I1"; }

Half parse_half(const std::string& s) {
  if (s == "I0" || s == "i0" || s == "0") return Half::I0;
  if (s == "I1" || s == "i1" || s == "1") return Half::I1;
  throw ConfigError("half must be I0 or I1, got '" + s + "'");
}

}  // namespace zener
