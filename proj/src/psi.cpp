#include "cantor23/psi.hpp"

#include <mpfr.h>

#include <cmath>
#include <sstream>

namespace cantor23 {

double gamma_dim() { return std::log(2.0) / std::log(3.0); }

namespace {

constexpr mpfr_prec_t kPrec = 192;

// Minimal directed-rounding interval arithmetic over MPFR. Enough headroom
// (192 bits for a handful of operations) that final brackets are far inside
// the 2^-64 relative-width contract.
struct MI {
  mpfr_t lo, hi;
  MI() {
    mpfr_init2(lo, kPrec);
    mpfr_init2(hi, kPrec);
  }
  ~MI() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  MI(const MI& o) : MI() {
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
  }
  MI& operator=(const MI& o) {
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
    return *this;
  }

  static MI from_ui(unsigned long v) {
    MI r;
    mpfr_set_ui(r.lo, v, MPFR_RNDD);
    mpfr_set_ui(r.hi, v, MPFR_RNDU);
    return r;
  }
  static MI from_rat(const Rat& q) {
    MI r;
    mpfr_set_q(r.lo, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi, q.get_mpq_t(), MPFR_RNDU);
    return r;
  }
};

MI mi_log(const MI& x) {
  MI r;
  mpfr_log(r.lo, x.lo, MPFR_RNDD);
  mpfr_log(r.hi, x.hi, MPFR_RNDU);
  return r;
}

MI mi_neg(const MI& x) {
  MI r;
  mpfr_neg(r.lo, x.hi, MPFR_RNDD);
  mpfr_neg(r.hi, x.lo, MPFR_RNDU);
  return r;
}

MI mi_mul(const MI& a, const MI& b) {
  MI r;
  mpfr_t c[4];
  for (auto& t : c) mpfr_init2(t, kPrec);
  mpfr_mul(c[0], a.lo, b.lo, MPFR_RNDD);
  mpfr_mul(c[1], a.lo, b.hi, MPFR_RNDD);
  mpfr_mul(c[2], a.hi, b.lo, MPFR_RNDD);
  mpfr_mul(c[3], a.hi, b.hi, MPFR_RNDD);
  mpfr_set(r.lo, c[0], MPFR_RNDD);
  for (int i = 1; i < 4; ++i)
    if (mpfr_cmp(c[i], r.lo) < 0) mpfr_set(r.lo, c[i], MPFR_RNDD);
  mpfr_mul(c[0], a.lo, b.lo, MPFR_RNDU);
  mpfr_mul(c[1], a.lo, b.hi, MPFR_RNDU);
  mpfr_mul(c[2], a.hi, b.lo, MPFR_RNDU);
  mpfr_mul(c[3], a.hi, b.hi, MPFR_RNDU);
  mpfr_set(r.hi, c[0], MPFR_RNDU);
  for (int i = 1; i < 4; ++i)
    if (mpfr_cmp(c[i], r.hi) > 0) mpfr_set(r.hi, c[i], MPFR_RNDU);
  for (auto& t : c) mpfr_clear(t);
  return r;
}

// pre: b strictly positive or strictly negative (1/b is then decreasing on b,
// so [1/b.hi, 1/b.lo] encloses it either way).
MI mi_div(const MI& a, const MI& b) {
  MI inv;
  mpfr_ui_div(inv.lo, 1, b.hi, MPFR_RNDD);
  mpfr_ui_div(inv.hi, 1, b.lo, MPFR_RNDU);
  return mi_mul(a, inv);
}

MI mi_exp(const MI& x) {
  MI r;
  mpfr_exp(r.lo, x.lo, MPFR_RNDD);
  mpfr_exp(r.hi, x.hi, MPFR_RNDU);
  return r;
}

MI mi_exp2(const MI& x) {
  MI r;
  mpfr_exp2(r.lo, x.lo, MPFR_RNDD);
  mpfr_exp2(r.hi, x.hi, MPFR_RNDU);
  return r;
}

Rat mpfr_to_rat(const mpfr_t x) {
  if (mpfr_zero_p(x)) return Rat(0);
  Int z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  if (e >= 0) return Rat(Int(z << static_cast<unsigned long>(e)));
  return make_rat(z, pow2(static_cast<unsigned long>(-e)));
}

PsiBracket to_bracket(const MI& x) {
  PsiBracket b;
  b.lo = mpfr_to_rat(x.lo);
  b.hi = mpfr_to_rat(x.hi);
  if (b.lo > b.hi || sgn(b.lo) <= 0)
    throw value_error("psi bracket collapsed or non-positive");
  if ((b.hi - b.lo) * pow2(64) > b.hi)
    throw value_error("psi bracket wider than the 2^-64 contract");
  return b;
}

MI exponent_interval(const PsiSpec::Exponent& e) {
  if (!e.is_log_ratio) return MI::from_rat(e.value);
  MI num = mi_log(MI::from_ui(static_cast<unsigned long>(e.log_num)));
  MI den = mi_log(MI::from_ui(static_cast<unsigned long>(e.log_den)));
  return mi_div(num, den);
}

}  // namespace

double PsiSpec::Exponent::approx() const {
  if (is_log_ratio) return std::log(static_cast<double>(log_num)) / std::log(static_cast<double>(log_den));
  return to_double(value);
}

std::string PsiSpec::Exponent::str() const {
  if (is_log_ratio) {
    std::ostringstream os;
    os << "log" << log_num << "/log" << log_den;
    return os.str();
  }
  return rat_str(value);
}

PsiSpec PsiSpec::constant(const Rat& c) {
  // zero is allowed: "never approximable" is a legitimate schedule
  if (c < 0) throw value_error("psi const: value must be nonnegative");
  PsiSpec p;
  p.kind_ = Kind::constant;
  p.const_value_ = c;
  return p;
}

PsiSpec PsiSpec::power(const Exponent& a) {
  PsiSpec p;
  p.kind_ = Kind::power;
  p.a_ = a;
  if (!a.is_log_ratio && a.value <= 0) throw value_error("psi power: exponent must be positive");
  return p;
}

PsiSpec PsiSpec::log_power(const Exponent& alpha, const Exponent& a) {
  PsiSpec p;
  p.kind_ = Kind::log_power;
  p.alpha_ = alpha;
  p.a_ = a;
  if (!a.is_log_ratio && a.value <= 0) throw value_error("psi log_power: exponent must be positive");
  return p;
}

PsiSpec PsiSpec::divergence() {
  PsiSpec p;
  p.kind_ = Kind::divergence;
  return p;
}

PsiSpec PsiSpec::table(std::map<std::uint64_t, Rat> values) {
  if (values.empty()) throw value_error("psi table: empty");
  for (const auto& [n, v] : values)
    if (v < 0) throw value_error("psi table: values must be nonnegative");
  PsiSpec p;
  p.kind_ = Kind::table;
  p.table_ = std::move(values);
  return p;
}

std::uint64_t PsiSpec::min_n() const {
  switch (kind_) {
    case Kind::constant:
    case Kind::power:
      return 1;
    case Kind::log_power:
      return 2;
    case Kind::divergence:
      return 16;  // lnlnln n > 0 first holds here
    case Kind::table:
      return table_.begin()->first;
  }
  return 1;
}

bool PsiSpec::defined_at(std::uint64_t n) const {
  if (kind_ == Kind::table) return table_.count(n) > 0;
  return n >= min_n();
}

PsiBracket PsiSpec::bracket(std::uint64_t n) const {
  if (!defined_at(n)) throw value_error("psi: schedule undefined at n=" + std::to_string(n));
  switch (kind_) {
    case Kind::constant:
      return {const_value_, const_value_};
    case Kind::table: {
      const Rat& v = table_.at(n);
      return {v, v};
    }
    case Kind::power: {
      if (!a_.is_log_ratio && is_integer(a_.value) &&
          mpz_fits_ulong_p(a_.value.get_num_mpz_t())) {
        // integer exponent: n^-a exactly
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n),
                      mpz_get_ui(a_.value.get_num_mpz_t()));
        Rat v = make_rat(Int(1), p);
        return {v, v};
      }
      MI ln_n = mi_log(MI::from_ui(n));
      MI t = mi_mul(exponent_interval(a_), ln_n);
      return to_bracket(mi_exp(mi_neg(t)));  // n^-a = exp(-a ln n)
    }
    case Kind::log_power: {
      MI ln_n = mi_log(MI::from_ui(n));
      MI t = mi_mul(exponent_interval(a_), ln_n);               // a ln n
      MI s = mi_mul(exponent_interval(alpha_), mi_log(ln_n));   // alpha lnln n
      // (ln n)^alpha * n^-a = exp(alpha lnln n - a ln n)
      MI diff;
      mpfr_sub(diff.lo, s.lo, t.hi, MPFR_RNDD);
      mpfr_sub(diff.hi, s.hi, t.lo, MPFR_RNDU);
      return to_bracket(mi_exp(diff));
    }
    case Kind::divergence: {
      MI ll = mi_log(mi_log(MI::from_ui(n)));
      MI lll = mi_log(ll);
      return to_bracket(mi_exp2(mi_neg(mi_div(ll, lll))));
    }
  }
  throw value_error("psi: unknown kind");
}

double PsiSpec::approx(std::uint64_t n) const {
  if (!defined_at(n)) throw value_error("psi: schedule undefined at n=" + std::to_string(n));
  double nd = static_cast<double>(n);
  switch (kind_) {
    case Kind::constant:
      return to_double(const_value_);
    case Kind::table:
      return to_double(table_.at(n));
    case Kind::power:
      return std::pow(nd, -a_.approx());
    case Kind::log_power:
      return std::pow(std::log(nd), alpha_.approx()) * std::pow(nd, -a_.approx());
    case Kind::divergence: {
      double ll = std::log(std::log(nd));
      return std::exp2(-ll / std::log(ll));
    }
  }
  return 0.0;
}

namespace {

PsiSpec::Exponent parse_exponent(const std::string& s) {
  PsiSpec::Exponent e;
  if (s == "log3/log2") {
    e.is_log_ratio = true;
    e.log_num = 3;
    e.log_den = 2;
    return e;
  }
  if (s == "log2/log3") {
    e.is_log_ratio = true;
    e.log_num = 2;
    e.log_den = 3;
    return e;
  }
  e.value = parse_rat(s);
  return e;
}

}  // namespace

PsiSpec PsiSpec::parse(const std::string& spec) {
  if (spec == "thm_divergence") return divergence();
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw value_error("psi spec: malformed: " + spec);
  std::string tag = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (tag == "const") return constant(parse_rat(rest));
  if (tag == "power") return power(parse_exponent(rest));
  if (tag == "log_power") {
    auto c2 = rest.find(':');
    if (c2 == std::string::npos) throw value_error("psi spec: log_power needs alpha:a");
    return log_power(parse_exponent(rest.substr(0, c2)), parse_exponent(rest.substr(c2 + 1)));
  }
  if (tag == "table") {
    std::map<std::uint64_t, Rat> values;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw value_error("psi table: entries are n=p/q");
      std::string key = item.substr(0, eq);
      if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos ||
          key.size() > 19)
        throw value_error("psi table: bad index: " + key);
      values[std::stoull(key)] = parse_rat(item.substr(eq + 1));
    }
    return table(std::move(values));
  }
  throw value_error("psi spec: unknown tag: " + tag);
}

std::string PsiSpec::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant:
      os << "const:" << rat_str(const_value_);
      break;
    case Kind::power:
      os << "power:" << a_.str();
      break;
    case Kind::log_power:
      os << "log_power:" << alpha_.str() << ":" << a_.str();
      break;
    case Kind::divergence:
      os << "thm_divergence";
      break;
    case Kind::table: {
      os << "table:";
      bool first = true;
      for (const auto& [n, v] : table_) {
        if (!first) os << ",";
        os << n << "=" << rat_str(v);
        first = false;
      }
      break;
    }
  }
  return os.str();
}

}  // namespace cantor23
