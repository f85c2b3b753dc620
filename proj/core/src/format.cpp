#include "tropica/format.hpp"

#include <cstdio>

namespace tropica {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace tropica
