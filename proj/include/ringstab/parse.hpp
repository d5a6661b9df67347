#pragma once

#include <string>

#include "ringstab/fraction.hpp"

namespace ringstab {

/// Position-carrying parse failure; message already includes line/column.
/// Thrown as Error with code ParseError.

/// Evaluates an expression over the fraction field of the ring.
///
/// Grammar: integers, identifiers (ring variables; "s" denotes sqrt(-5) in
/// the quadratic ring), unary minus, binary + - * /, ^ with a nonnegative
/// integer exponent, parentheses. Rationals are written p/q. Whitespace is
/// insignificant. line0/col0 offset reported positions (1-based).
FractionElement parse_fraction(const Ring& ring, const std::string& text,
                               int line0 = 1, int col0 = 1);

/// parse_fraction plus a membership check that the value lies in A.
RingElement parse_element(const Ring& ring, const std::string& text,
                          int line0 = 1, int col0 = 1);

}  // namespace ringstab
