#include "cantor23/digit_word.hpp"

namespace cantor23 {

Int DigitWord::value() const {
  Int v = 0;
  for (std::uint8_t d : digits) v = v * base + d;
  return v;
}

bool DigitWord::canonical() const {
  if (base < 2) return false;
  if (digits.empty()) return false;
  if (digits.size() > 1 && digits[0] == 0) return false;
  for (std::uint8_t d : digits)
    if (d >= base) return false;
  return true;
}

DigitWord base_digits(const Int& y, unsigned base) {
  if (base < 2 || base > 16) throw value_error("base_digits: base out of range");
  if (sgn(y) < 0) throw value_error("base_digits: negative input");
  DigitWord w;
  w.base = base;
  // mpz_get_str uses divide-and-conquer conversion; digits come out most
  // significant first with no leading zeros.
  std::string s = y.get_str(static_cast<int>(base));
  w.digits.reserve(s.size());
  for (char c : s) {
    std::uint8_t d = (c <= '9') ? static_cast<std::uint8_t>(c - '0')
                                : static_cast<std::uint8_t>(c - 'a' + 10);
    w.digits.push_back(d);
  }
  return w;
}

}  // namespace cantor23
