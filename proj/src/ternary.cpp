#include "cantor23/ternary.hpp"

namespace cantor23 {

TernaryProfile ternary_profile(const Rat& x, unsigned long max_den) {
  if (x < 0 || x > 1) throw value_error("ternary_profile: x outside [0,1]");
  if (x == 1) return TernaryProfile{{}, {2}};
  if (x.get_den() > max_den || !fits_u64(Int(x.get_den())) ||
      to_u64(Int(x.get_den())) > (1ull << 27))
    throw budget_error("ternary_profile: denominator exceeds budget");
  const std::uint64_t den = to_u64(Int(x.get_den()));
  std::uint64_t num = to_u64(Int(x.get_num()));
  // Long division; remainders determine tails uniquely, so the first repeated
  // remainder yields the minimal preperiod and minimal period.
  std::vector<std::int32_t> seen(den, -1);
  std::vector<std::uint8_t> digits;
  TernaryProfile out;
  for (;;) {
    if (num == 0) {
      out.preperiod = digits;
      out.period = {0};
      return out;
    }
    if (seen[num] >= 0) {
      out.preperiod.assign(digits.begin(), digits.begin() + seen[num]);
      out.period.assign(digits.begin() + seen[num], digits.end());
      return out;
    }
    seen[num] = static_cast<std::int32_t>(digits.size());
    num *= 3;
    digits.push_back(static_cast<std::uint8_t>(num / den));
    num %= den;
  }
}

Rat profile_value(const TernaryProfile& p) {
  if (p.period.empty()) throw value_error("profile_value: empty period");
  Int pre = 0, per = 0;
  for (std::uint8_t d : p.preperiod) pre = pre * 3 + d;
  for (std::uint8_t d : p.period) per = per * 3 + d;
  Int p3pre = pow3(p.preperiod.size());
  Int p3per = pow3(p.period.size());
  // x = pre/3^|pre| + per / (3^|pre| (3^|per| - 1))
  return make_rat(pre * (p3per - 1) + per, p3pre * (p3per - 1));
}

namespace {

// Brent cycle detection over long-division remainders: remainder state at a
// step determines the whole tail, so state(s) == state(c) proves digits[c..s)
// is a period. Checkpoint spacing doubles, so detection cost is O(pre + cyc).
TernaryScan scan_u64(std::uint64_t num, std::uint64_t den, std::size_t max_steps) {
  TernaryScan out;
  std::uint64_t check = num;
  std::size_t check_step = 0, power = 1;
  for (std::size_t step = 0;; ++step) {
    if (num == 0) {
      out.kind = TernaryScan::Kind::terminated;
      return out;
    }
    if (step > 0) {
      if (num == check) {
        out.kind = TernaryScan::Kind::cycle;
        out.cycle_start = check_step;
        return out;
      }
      if (step - check_step == power) {
        check = num;
        check_step = step;
        power <<= 1;
      }
    }
    if (step >= max_steps) throw budget_error("scan_ternary_02: step budget exceeded");
    num *= 3;
    unsigned d = static_cast<unsigned>(num / den);
    num -= static_cast<std::uint64_t>(d) * den;
    if (d == 1) {
      out.kind = TernaryScan::Kind::hit_one;
      out.rem = make_rat(Int(static_cast<unsigned long>(num)),
                         Int(static_cast<unsigned long>(den)));
      return out;
    }
    out.digits.push_back(static_cast<std::uint8_t>(d));
  }
}

TernaryScan scan_mpz(Int num, const Int& den, std::size_t max_steps) {
  TernaryScan out;
  const Int den2 = den * 2;
  Int check = num;
  std::size_t check_step = 0, power = 1;
  for (std::size_t step = 0;; ++step) {
    if (num == 0) {
      out.kind = TernaryScan::Kind::terminated;
      return out;
    }
    if (step > 0) {
      if (num == check) {
        out.kind = TernaryScan::Kind::cycle;
        out.cycle_start = check_step;
        return out;
      }
      if (step - check_step == power) {
        check = num;
        check_step = step;
        power <<= 1;
      }
    }
    if (step >= max_steps) throw budget_error("scan_ternary_02: step budget exceeded");
    num *= 3;
    unsigned d = 0;
    if (num >= den) {
      if (num >= den2) {
        num -= den2;
        d = 2;
      } else {
        num -= den;
        d = 1;
      }
    }
    if (d == 1) {
      out.kind = TernaryScan::Kind::hit_one;
      out.rem = make_rat(num, den);
      return out;
    }
    out.digits.push_back(static_cast<std::uint8_t>(d));
  }
}

}  // namespace

TernaryScan scan_ternary_02(const Rat& x, std::size_t max_steps) {
  if (x < 0 || x >= 1) throw value_error("scan_ternary_02: x outside [0,1)");
  Int num = x.get_num(), den = x.get_den();
  if (mpz_sizeinbase(den.get_mpz_t(), 2) <= 61)
    return scan_u64(to_u64(num), to_u64(den), max_steps);
  return scan_mpz(num, den, max_steps);
}

}  // namespace cantor23
