#include "hent/double_double.hpp"

#include <cstdio>
#include <ostream>

namespace hent {

std::string to_string(DoubleDouble x) {
  if (!isfinite(x)) return std::to_string(x.hi());
  // Leading 17 digits from hi, then the residual scaled into the next 16.
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.16e", x.hi());
  const double lead = std::strtod(buf, nullptr);
  const DoubleDouble rest = x - lead;
  char tail[40];
  std::snprintf(tail, sizeof(tail), "%+.15e", to_double(rest));
  return std::string(buf) + " " + tail;
}

std::ostream& operator<<(std::ostream& os, DoubleDouble x) { return os << to_string(x); }

}  // namespace hent
