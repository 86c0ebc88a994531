#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cantor23 {

// Exact arithmetic backbone. Int is an arbitrary-precision integer, Rat an
// arbitrary-precision rational kept in canonical form (reduced, positive
// denominator). Canonical form is an invariant: every constructor and helper
// below either preserves it or establishes it.
using Int = mpz_class;
using Rat = mpq_class;

// Thrown when an exact computation would exceed its configured cost budget.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed user-supplied values (CLI/config surface).
struct value_error : std::invalid_argument {
  explicit value_error(const std::string& what) : std::invalid_argument(what) {}
};

inline Int int_pow(unsigned long base, unsigned long exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline Int pow2(unsigned long e) { return int_pow(2, e); }
inline Int pow3(unsigned long e) { return int_pow(3, e); }

// num/den as a canonical rational; den must be nonzero.
inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw value_error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(long num, unsigned long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline double to_double(const Rat& q) { return q.get_d(); }
inline double to_double(const Int& n) { return n.get_d(); }

// Parses "p", "-p" or "p/q" exactly. No decimals, no whitespace.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw value_error("empty rational");
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
    if (!ok) throw value_error("malformed rational: " + s);
  }
  size_t slash = s.find('/');
  if (slash == std::string::npos) {
    Int n;
    if (mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
      throw value_error("malformed rational: " + s);
    return Rat(n);
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (num.empty() || den.empty() || den.find('/') != std::string::npos)
    throw value_error("malformed rational: " + s);
  Int n, d;
  if (mpz_set_str(n.get_mpz_t(), num.c_str(), 10) != 0 ||
      mpz_set_str(d.get_mpz_t(), den.c_str(), 10) != 0 || d == 0)
    throw value_error("malformed rational: " + s);
  return make_rat(n, d);
}

// "p/q" or "p" when the denominator is 1.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool fits_u64(const Int& n) {
  return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Int& n) {
  // get_ui truncates to the low word, which is exactly what fits_u64 admits
  return mpz_get_ui(n.get_mpz_t());
}

}  // namespace cantor23
