#pragma once

#include <string>

namespace tropica {

// Decimal with 15 significant digits ("%.15g").
std::string format_number(double v);

}  // namespace tropica
