#include "cantor23/cantor.hpp"

#include <algorithm>
#include <string>

namespace cantor23 {

namespace {

// #{a in [0, X]} with all N ternary digit positions in {0,2}, digit walk from
// the most significant position: a digit below the bound's digit can be
// chosen freely in {0,2} afterwards (2^rest each), a bound digit of 1 makes a
// tight prefix impossible, and a completed walk counts X itself.
std::uint64_t count_upto_u64(std::uint64_t X, int N) {
  std::uint8_t dig[40];
  std::uint64_t x = X;
  for (int i = N - 1; i >= 0; --i) {
    dig[i] = static_cast<std::uint8_t>(x % 3);
    x /= 3;
  }
  std::uint64_t count = 0;
  for (int i = 0; i < N; ++i) {
    if (dig[i] == 0) continue;
    count += 1ull << (N - 1 - i);  // prefix with digit 0 here, rest free
    if (dig[i] == 1) return count;
  }
  return count + 1;
}

Int count_upto_mpz(const Int& X) {
  std::string s = X.get_str(3);
  const int len = static_cast<int>(s.size());  // leading digits are 0, walk skips them
  Int count = 0;
  for (int i = 0; i < len; ++i) {
    int d = s[static_cast<std::size_t>(i)] - '0';
    if (d == 0) continue;
    count += Int(1) << static_cast<unsigned long>(len - 1 - i);
    if (d == 1) return count;
  }
  return count + 1;
}

Int count_upto(const Int& X, int N) {
  if (sgn(X) < 0) return 0;
  if (N <= 39 && fits_u64(X)) return Int(count_upto_u64(to_u64(X), N));
  return count_upto_mpz(X);
}

// Left-endpoint count in I with 3^N passed in to avoid recomputing it.
Int count_left(int N, const Int& P, const RationalInterval& I) {
  if (I.empty()) return 0;
  Rat loP = I.lo * P, hiP = I.hi * P;
  Int A = I.lo_open ? Int(floor_rat(loP) + 1) : ceil_rat(loP);
  Int B = I.hi_open ? Int(ceil_rat(hiP) - 1) : floor_rat(hiP);
  if (A < 0) A = 0;
  if (B > P - 1) B = P - 1;
  if (B < A) return 0;
  Int g_hi = count_upto(B, N);
  Int g_lo = (A == 0) ? Int(0) : count_upto(A - 1, N);
  return g_hi - g_lo;
}

Int count_in_interval_P(int N, const Int& P, const RationalInterval& I, Endpoints which) {
  switch (which) {
    case Endpoints::left:
      return count_left(N, P, I);
    case Endpoints::right:
      return count_left(N, P, I.mirror());
    case Endpoints::all:
      return count_left(N, P, I) + count_left(N, P, I.mirror());
  }
  return 0;
}

}  // namespace

std::vector<Rat> enumerate_endpoints(int N, Endpoints which) {
  if (N < 0) throw value_error("enumerate_endpoints: negative N");
  if (N > 16) throw budget_error("enumerate_endpoints: budget guard N <= 16");
  std::uint64_t p3[17];
  p3[0] = 1;
  for (int i = 1; i <= N; ++i) p3[i] = p3[i - 1] * 3;
  const Int P = pow3(static_cast<unsigned long>(N));
  const std::uint64_t total = 1ull << N;

  // bitmask -> digits in {0,2}; the map is monotone, so masks in increasing
  // order give left endpoints in increasing order
  std::vector<Rat> left;
  left.reserve(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::uint64_t a = 0;
    for (int i = 0; i < N; ++i)
      if (mask & (1ull << i)) a += 2 * p3[i];
    left.push_back(make_rat(Int(static_cast<unsigned long>(a)), P));
  }
  if (which == Endpoints::left) return left;

  std::vector<Rat> right;
  right.reserve(total);
  for (auto it = left.rbegin(); it != left.rend(); ++it) right.push_back(Rat(1) - *it);
  if (which == Endpoints::right) return right;

  std::vector<Rat> all;
  all.reserve(2 * total);
  std::merge(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(all));
  return all;
}

Int count_restricted_upto(const Int& X, int N) {
  if (N < 0) throw value_error("count_restricted_upto: negative N");
  Int top = pow3(static_cast<unsigned long>(N)) - 1;
  if (X > top) return count_upto(top, N);
  return count_upto(X, N);
}

Int count_endpoints_in_interval(int N, const RationalInterval& I, Endpoints which) {
  if (N < 0) throw value_error("count_endpoints_in_interval: negative N");
  return count_in_interval_P(N, pow3(static_cast<unsigned long>(N)), I, which);
}

// ---- Ball systems ----

BallSystem BallSystem::standard(int n, const Rat& radius) {
  BallSystem s;
  s.n = n;
  s.radius = radius;
  s.a_lo = 0;
  s.a_hi = pow2(static_cast<unsigned long>(n));
  return s;
}

BallSystem BallSystem::lattice(int n, const Rat& radius) {
  BallSystem s = standard(n, radius);
  s.a_hi -= 1;
  return s;
}

BallSystem BallSystem::dilate(const Rat& t) const {
  BallSystem s = *this;
  s.radius = radius * t;
  return s;
}

BallSystem BallSystem::translate(const Rat& t) const {
  BallSystem s = *this;
  s.theta = theta + t;
  return s;
}

bool BallSystem::merged() const { return a_lo < a_hi && 2 * radius > spacing(); }

namespace {

struct ClippedRange {
  Int a_min, a_max;  // inclusive; a_max < a_min means nothing survives
};

// Conservative index range of balls that can meet I; per-ball intersection
// settles exact boundary cases.
ClippedRange clip_range(const BallSystem& S, const RationalInterval& I) {
  Rat sp = S.spacing();
  Int a_min = ceil_rat((I.lo - S.theta - S.radius) / sp);
  Int a_max = floor_rat((I.hi - S.theta + S.radius) / sp);
  if (a_min < S.a_lo) a_min = S.a_lo;
  if (a_max > S.a_hi) a_max = S.a_hi;
  return {a_min, a_max};
}

RationalInterval hull_of(const BallSystem& S) {
  Rat sp = S.spacing();
  Rat c_lo = S.theta + Rat(S.a_lo) * sp;
  Rat c_hi = S.theta + Rat(S.a_hi) * sp;
  return {c_lo - S.radius, c_hi + S.radius, true, true};
}

void check_system(const BallSystem& S) {
  if (S.radius <= 0) throw value_error("ball system: radius must be positive");
  if (S.n < 0) throw value_error("ball system: negative n");
}

}  // namespace

Int count_endpoints_in_system(int N, const BallSystem& S, const RationalInterval& I,
                              Endpoints which, long ball_budget) {
  check_system(S);
  if (N < 0) throw value_error("count_endpoints_in_system: negative N");
  if (S.a_hi < S.a_lo || I.empty()) return 0;
  const Int P = pow3(static_cast<unsigned long>(N));
  if (S.a_lo == S.a_hi || S.merged())
    return count_in_interval_P(N, P, hull_of(S).intersect(I), which);

  ClippedRange cr = clip_range(S, I);
  if (cr.a_max < cr.a_min) return 0;
  if (cr.a_max - cr.a_min + 1 > ball_budget)
    throw budget_error("count_endpoints_in_system: ball budget exceeded");

  Rat sp = S.spacing();
  Int total = 0;
  Rat c = S.theta + Rat(cr.a_min) * sp;
  for (Int a = cr.a_min; a <= cr.a_max; ++a, c += sp) {
    RationalInterval ball{c - S.radius, c + S.radius, true, true};
    RationalInterval piece = ball.intersect(I);
    if (!piece.empty()) total += count_in_interval_P(N, P, piece, which);
  }
  return total;
}

// ---- Cantor CDF ----

namespace {

// Digit loop with Brent cycle detection, binary bits accumulated on the fly.
// Digit 1 at step t:  F = (bits...1) / 2^(t+1).
// Remainder 0:        F = bits / 2^t.
// Cycle (state at the checkpoint step recurs): the bits emitted since the
// checkpoint repeat forever, F = pre/2^p + per/(2^p (2^len - 1)).
Rat cdf_from_u64(std::uint64_t num, std::uint64_t den);

Rat cdf_cycle_value(const Int& acc_cp, unsigned long count_cp, const Int& acc,
                    unsigned long count) {
  unsigned long len = count - count_cp;
  Int per = acc - (acc_cp << len);
  Int p2cp = pow2(count_cp), p2len = pow2(len);
  return make_rat(acc_cp * (p2len - 1) + per, p2cp * (p2len - 1));
}

Rat cdf_from_mpz(Int num, const Int& den) {
  const Int den2 = den * 2;
  Int acc = 0, acc_cp = 0, check = num;
  unsigned long count = 0, count_cp = 0;
  std::size_t check_step = 0, power = 1;
  for (std::size_t step = 0;; ++step) {
    if (num == 0) return make_rat(acc, pow2(count));
    if (step > 0) {
      if (num == check) return cdf_cycle_value(acc_cp, count_cp, acc, count);
      if (step - check_step == power) {
        check = num;
        check_step = step;
        power <<= 1;
        acc_cp = acc;
        count_cp = count;
      }
    }
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
    if (d == 1) return make_rat(acc * 2 + 1, pow2(count + 1));
    acc = acc * 2 + (d >> 1);
    ++count;
  }
}

Rat cdf_from_u64(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t num0 = num;
  std::uint64_t acc = 0, acc_cp = 0, check = num;
  unsigned long count = 0, count_cp = 0;
  std::size_t check_step = 0, power = 1;
  for (std::size_t step = 0;; ++step) {
    if (num == 0) return make_rat(Int(static_cast<unsigned long>(acc)), pow2(count));
    if (step > 0) {
      if (num == check)
        return cdf_cycle_value(Int(static_cast<unsigned long>(acc_cp)), count_cp,
                               Int(static_cast<unsigned long>(acc)), count);
      if (step - check_step == power) {
        check = num;
        check_step = step;
        power <<= 1;
        acc_cp = acc;
        count_cp = count;
      }
    }
    if (count >= 62)  // bit accumulator would overflow; rare, redo in bignum
      return cdf_from_mpz(Int(static_cast<unsigned long>(num0)),
                          Int(static_cast<unsigned long>(den)));
    num *= 3;
    unsigned d = static_cast<unsigned>(num / den);
    num -= static_cast<std::uint64_t>(d) * den;
    if (d == 1)
      return make_rat(Int(static_cast<unsigned long>(acc * 2 + 1)), pow2(count + 1));
    acc = acc * 2 + (d >> 1);
    ++count;
  }
}

}  // namespace

Rat cantor_cdf_frac(const Int& num, const Int& den) {
  if (sgn(den) <= 0) throw value_error("cantor_cdf_frac: denominator must be positive");
  if (sgn(num) <= 0) return Rat(0);
  if (num >= den) return Rat(1);
  if (mpz_sizeinbase(den.get_mpz_t(), 2) <= 61) return cdf_from_u64(to_u64(num), to_u64(den));
  return cdf_from_mpz(num, den);
}

Rat cantor_cdf(const Rat& x) { return cantor_cdf_frac(x.get_num(), x.get_den()); }

Rat measure_of_interval(const RationalInterval& I) {
  if (I.empty()) return Rat(0);
  return cantor_cdf(I.hi) - cantor_cdf(I.lo);
}

Rat measure_of_system(const BallSystem& S, const RationalInterval& I, long ball_budget) {
  check_system(S);
  if (S.a_hi < S.a_lo || I.empty()) return Rat(0);
  if (S.a_lo == S.a_hi || S.merged())
    return measure_of_interval(hull_of(S).intersect(I));

  ClippedRange cr = clip_range(S, I);
  if (cr.a_max < cr.a_min) return Rat(0);
  if (cr.a_max - cr.a_min + 1 > ball_budget)
    throw budget_error("measure_of_system: ball budget exceeded");

  Rat sp = S.spacing();
  // Balls strictly inside I need no clipping; at most a couple per side do.
  Int a_in_min = ceil_rat((I.lo - S.theta + S.radius) / sp);
  Int a_in_max = floor_rat((I.hi - S.theta - S.radius) / sp);

  Rat mu = 0;
  Rat c = S.theta + Rat(cr.a_min) * sp;
  for (Int a = cr.a_min; a <= cr.a_max; ++a, c += sp) {
    if (a >= a_in_min && a <= a_in_max) {
      Rat lo = c - S.radius, hi = c + S.radius;
      mu += cantor_cdf_frac(hi.get_num(), hi.get_den()) -
            cantor_cdf_frac(lo.get_num(), lo.get_den());
    } else {
      RationalInterval piece =
          RationalInterval{c - S.radius, c + S.radius, true, true}.intersect(I);
      if (!piece.empty()) mu += measure_of_interval(piece);
    }
  }
  return mu;
}

Rat dist_to_cantor(const Rat& x) {
  if (x < 0) return Rat(-x);
  if (x > 1) return Rat(x - 1);
  if (x == 0 || x == 1) return Rat(0);
  TernaryScan sc = scan_ternary_02(x);
  if (sc.kind != TernaryScan::Kind::hit_one) return Rat(0);
  // x sits inside the level-(t+1) middle gap of its component; the gap edges
  // are the nearest points of the set.
  std::size_t t = sc.digits.size();
  Rat other = Rat(1) - sc.rem;
  Rat m = sc.rem < other ? sc.rem : other;
  return Rat(m / pow3(t + 1));
}

int separation_level(const RationalInterval& I) {
  if (I.is_unit()) return 0;
  Rat d = std::min(dist_to_cantor(I.lo), dist_to_cantor(I.hi));
  if (d == 0) throw value_error("separation_level: interval endpoint lies in the Cantor set");
  Int p = 1;
  for (int L = 0; L <= 4096; ++L) {
    // 3^-L < d  <=>  d.num * 3^L > d.den
    if (d.get_num() * p > d.get_den()) return L;
    p *= 3;
  }
  throw value_error("separation_level: no level below 4096 separates the interval");
}

}  // namespace cantor23
