#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace aarhus {

// Exact arithmetic everywhere. The kernel never touches floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "p/q" with q omitted when 1; p may carry a leading '-'.
std::string rat_str(const Rat& r);

// Inverse of rat_str. Throws std::invalid_argument on malformed input
// (callers in the io layer translate to ParseError with a line number).
Rat rat_parse(const std::string& s);

}  // namespace aarhus
