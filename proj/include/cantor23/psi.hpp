#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cantor23/rational.hpp"

namespace cantor23 {

// Hausdorff dimension of the middle-third Cantor set, log 2 / log 3.
double gamma_dim();

// Enclosure lo <= psi_n <= hi with relative width at most 2^-64 (width 0 for
// exact schedules).
struct PsiBracket {
  Rat lo, hi;
  bool exact() const { return lo == hi; }
};

// Approximation speed schedule, defined directly in terms of the scale index
// n (the same schedule serves psi(2^n) in dyadic runs and psi(3^n) in triadic
// ones):
//   const:c            c, exact rational
//   power:a            n^-a
//   log_power:al:a     (ln n)^al * n^-a, n >= 2
//   thm_divergence     2^-(lnln n / lnlnln n), n >= 16
//   table:n=p/q,...    explicit values, exact
// Exponents are rationals or the special ratios log3/log2 and log2/log3.
// Irrational values are bracketed by directed-rounding interval arithmetic.
class PsiSpec {
 public:
  enum class Kind { constant, power, log_power, divergence, table };

  struct Exponent {
    bool is_log_ratio = false;
    Rat value;                      // used when !is_log_ratio
    int log_num = 3, log_den = 2;   // log(log_num)/log(log_den) otherwise
    double approx() const;
    std::string str() const;
  };

  static PsiSpec constant(const Rat& c);
  static PsiSpec power(const Exponent& a);
  static PsiSpec log_power(const Exponent& alpha, const Exponent& a);
  static PsiSpec divergence();
  static PsiSpec table(std::map<std::uint64_t, Rat> values);

  // Parses the spec strings listed above; throws value_error on bad input.
  static PsiSpec parse(const std::string& spec);

  Kind kind() const { return kind_; }
  std::uint64_t min_n() const;
  bool defined_at(std::uint64_t n) const;

  // pre: defined_at(n).
  PsiBracket bracket(std::uint64_t n) const;
  double approx(std::uint64_t n) const;

  // Canonical spec string; reports echo this.
  std::string str() const;

 private:
  Kind kind_ = Kind::constant;
  Rat const_value_;
  Exponent a_, alpha_;
  std::map<std::uint64_t, Rat> table_;
};

}  // namespace cantor23
