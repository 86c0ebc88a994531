#pragma once

#include <vector>

#include "cantor23/interval.hpp"
#include "cantor23/ternary.hpp"

namespace cantor23 {

// Level-N endpoint families of the middle-third Cantor set. Left endpoints
// are a/3^N with every ternary digit of a in {0,2} (2^N of them); right
// endpoints are their mirror images 1 - a/3^N. The families are disjoint,
// so `all` has exactly 2^(N+1) members.
enum class Endpoints { left, right, all };

// Sorted exact endpoint values. Budget guard: N <= 16.
std::vector<Rat> enumerate_endpoints(int N, Endpoints which);

// #{a : 0 <= a <= X, every one of the N ternary digit positions of a is 0 or 2}.
// O(N) digit walk, no enumeration.
Int count_restricted_upto(const Int& X, int N);

// Exact |{endpoints of the chosen family} ∩ I| via the digit walk.
Int count_endpoints_in_interval(int N, const RationalInterval& I, Endpoints which);

// Union of open balls B(theta + a/2^n, radius), a in [a_lo, a_hi].
struct BallSystem {
  int n = 0;
  Rat radius;   // > 0
  Rat theta;    // translation of every center
  Int a_lo = 0, a_hi = 0;  // inclusive center index range

  // a in [0, 2^n]: the endpoint convention that includes both 0 and 1.
  static BallSystem standard(int n, const Rat& radius);
  // a in [0, 2^n - 1]: the convention of the truncated-spectral-sum lemma.
  static BallSystem lattice(int n, const Rat& radius);

  // Dilation acts about each ball's center: t*S scales every radius by t.
  BallSystem dilate(const Rat& t) const;
  BallSystem translate(const Rat& s) const;

  Rat spacing() const { return make_rat(Int(1), pow2(static_cast<unsigned long>(n))); }
  // True when adjacent balls strictly overlap; the union is then a single
  // open interval. Equal spacing and equal radii make merging all-or-nothing
  // (touching balls stay separate: the touch point is not in the union).
  bool merged() const;
  Int ball_count() const { return a_hi - a_lo + 1; }
};

Int count_endpoints_in_system(int N, const BallSystem& S, const RationalInterval& I,
                              Endpoints which, long ball_budget = 1l << 26);

// Cantor function (CDF of the Cantor measure mu), exact for any rational.
Rat cantor_cdf(const Rat& x);
// Same, for x = num/den given as a not necessarily reduced fraction.
Rat cantor_cdf_frac(const Int& num, const Int& den);

// mu(I); mu has no atoms, so openness of the ends is irrelevant.
Rat measure_of_interval(const RationalInterval& I);

// mu(S ∩ I), exact: balls are merged when overlapping, clipped to I, and
// the CDF is summed over the resulting disjoint intervals.
Rat measure_of_system(const BallSystem& S, const RationalInterval& I,
                      long ball_budget = 1l << 26);

// Exact distance from x to the Cantor set (0 iff x is in the set).
Rat dist_to_cantor(const Rat& x);

// Smallest L >= 0 with 3^-L strictly below the distance from both endpoints
// of I to the Cantor set; 0 for [0,1]. Throws value_error when an endpoint
// lies in the set (no level separates it).
int separation_level(const RationalInterval& I);

}  // namespace cantor23
