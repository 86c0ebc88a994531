#pragma once

#include <cstdint>
#include <vector>

#include "cantor23/rational.hpp"

namespace cantor23 {

// Eventually periodic ternary expansion of a rational in [0,1]:
//   x = 0.(preperiod)(period)(period)...
// Canonical: shortest period, then shortest preperiod. Triadic rationals get
// their terminating expansion padded with period [0]; x = 1 is the one value
// with no terminating fractional form and is represented as period [2].
struct TernaryProfile {
  std::vector<std::uint8_t> preperiod;
  std::vector<std::uint8_t> period;
};

// Exact profile of x in [0,1]. Cost is O(preperiod + period) which can be
// Theta(den(x)); den(x) > max_den is rejected with budget_error.
TernaryProfile ternary_profile(const Rat& x, unsigned long max_den = 10000);

// Exact value of a profile (round-trip inverse of ternary_profile).
Rat profile_value(const TernaryProfile& p);

// Result of streaming the fractional ternary digits of x in [0,1) until the
// first digit 1, termination, or a proven cycle. Digits collected in `digits`
// are all 0 or 2.
//   hit_one: a digit 1 appeared right after `digits`; `rem` in [0,1) is the
//            value left after consuming it, scaled by 3^(digits.size()+1).
//   terminated: the expansion ends (all further digits 0) after `digits`.
//   cycle: digits are 0/2 forever; digits[cycle_start..) is one exact period
//          (period start/length from Brent detection, not necessarily the
//          minimal ones, which exact reconstruction does not need).
struct TernaryScan {
  enum class Kind { hit_one, terminated, cycle } kind;
  std::vector<std::uint8_t> digits;
  std::size_t cycle_start = 0;
  Rat rem;
};

// pre: 0 <= x < 1. Throws budget_error after max_steps digits.
TernaryScan scan_ternary_02(const Rat& x, std::size_t max_steps = 100000);

}  // namespace cantor23
