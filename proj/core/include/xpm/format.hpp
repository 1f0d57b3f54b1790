#pragma once

#include <string>

namespace xpm {

// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace xpm
