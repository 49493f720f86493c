#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace semmap {

// Edge weights are exact rationals. In raw mode every weight has denominator
// 1; the normalized mode produces proper fractions. Ranking never goes through
// floating point.
using Weight = boost::rational<std::int64_t>;

// "9" for integral weights, "3/4" otherwise.
std::string to_string(const Weight& w);

// Inverse of to_string. Throws std::invalid_argument on malformed input or a
// zero denominator.
Weight parse_weight(const std::string& text);

double to_double(const Weight& w);

}  // namespace semmap
