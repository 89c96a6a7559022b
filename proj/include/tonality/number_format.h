#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tonality {

// Shortest decimal string that parses back to exactly `value`.
// Throws ArgumentError for NaN or infinity.
std::string format_round_trip(double value);

// Fixed-point with `decimals` digits after the point, "-0.000000" normalized
// to "0.000000".
std::string format_fixed(double value, int decimals = 6);

// Strict parse of a finite decimal; the whole string must be consumed.
std::optional<double> parse_double(std::string_view text);

}  // namespace tonality
