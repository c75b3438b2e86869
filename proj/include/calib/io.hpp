#pragma once

#include <string>

namespace calib {

// Decimal form with 17 significant digits, enough for every serialized
// double to round-trip bit for bit.
std::string format_double(double value);

// Minimal JSON string escaping (quotes, backslashes, control characters).
std::string json_escape(const std::string& s);

}  // namespace calib
