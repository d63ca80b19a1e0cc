// Exact rational scalars. All coefficient arithmetic in the library is
// arbitrary-precision and exact; floating point never enters an assertion.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace dvbkit {

using Int = boost::multiprecision::cpp_int;

// Canonical form (lowest terms, positive denominator) is maintained by the
// backing type on every operation.
using Ratio = boost::multiprecision::cpp_rational;

inline Ratio ratio(long num, long den = 1) { return Ratio(num, den); }

std::string to_string(const Ratio& r);

// Parses "n", "-n" or "n/d". Returns nullopt on malformed input or d == 0.
std::optional<Ratio> parse_ratio(const std::string& text);

}  // namespace dvbkit
