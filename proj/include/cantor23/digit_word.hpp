#pragma once

#include <cstdint>
#include <vector>

#include "cantor23/rational.hpp"

namespace cantor23 {

// Positional digits of a nonnegative integer, most significant digit first.
// Canonical: no leading zero except for the single word [0].
struct DigitWord {
  unsigned base = 10;
  std::vector<std::uint8_t> digits;

  // Reconstructs the integer value (round-trip with base_digits).
  Int value() const;
  bool canonical() const;
};

// Exact base-b expansion of y >= 0, for 2 <= b <= 16.
DigitWord base_digits(const Int& y, unsigned base);

}  // namespace cantor23
