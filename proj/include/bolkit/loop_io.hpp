#pragma once
//
// Text format for loops:
//
//   # optional comment lines
//   loop <n>
//   <n lines of n whitespace-separated integers in 0..n-1>
//
// A stream may hold several loops back to back.
//

#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "bolkit/loop.hpp"

namespace bolkit {

// Throws Errc::parse_error for malformed text (bad header, row length,
// non-integer or out-of-range entries) and the validate_loop errors for
// well-formed tables that are not loops.
std::vector<CayleyTable> read_loops(std::istream& in);
// Exactly one loop; throws Errc::parse_error otherwise.
CayleyTable read_loop(std::istream& in);

void write_loop(std::ostream& out, const CayleyTable& loop, std::string_view comment = {});

}  // namespace bolkit
