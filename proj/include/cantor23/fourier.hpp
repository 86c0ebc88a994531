#pragma once

#include <cstdint>

#include "cantor23/bump.hpp"
#include "cantor23/cantor.hpp"
#include "cantor23/interval.hpp"

namespace cantor23 {

// Truncated spectral identity. The direct side counts level-M left endpoints
// through a smooth plateau train of width 2^-(n+k) around the dyadic grid
// 2^-n Z, shifted by y. The frequency side expands the train in modes
// e(2^n m x) truncated at |m| <= 2^k T, with per-scale digit filters carrying
// the endpoint sum from level M down to level L.
struct FourierParams {
  int n = 1;
  int k = 1;
  int L = 0;
  int M = 1;
  int T = 8;
  int decay_n = 4;  // envelope exponent used for the tail bound
  Rat y;            // shift of the evaluation point
  RationalInterval I = RationalInterval::unit();
};

// Direct side: sum of the 1-periodic plateau train
//   F(u) = sum_{b in Z} bump(2^(n+k) (u - b 2^-n))
// at u = x + y over the level-M left endpoints x in I. Matches the frequency
// side up to the truncation tail when I is [0,1] or L is at least the
// separation level of I (the frequency side factors through level-L
// prefixes, which then lie in I exactly when x does). Budget: M <= 22.
double fourier_lhs(const FourierParams& p);

struct FourierRhs {
  double main = 0;        // truncated mode sum
  double zero_mode = 0;   // m = 0 contribution alone
  double tail_bound = 0;  // envelope bound on the discarded |m| > 2^k T modes
  double mode_error = 0;  // accumulated transform error over kept modes
  Int endpoints_L = 0;    // level-L endpoints inside I
};

// Frequency side. Mode m term:
//   phihat(m/2^k) 2^(M-L-k) e(2^n m y) E_L(m) prod_{j=L+1}^M (1+e(2^(n+1) m 3^-j))/2
// with E_L(m) the exact exponential sum over level-L endpoints in I. Angles
// are reduced exactly in integer arithmetic before any rounding. Summed with
// compensated accumulation, m = 0 term first then |m| ascending (conjugate
// pairs combined). Budget: 2^k T <= 10^6, L <= M <= 40.
FourierRhs fourier_rhs(const FourierParams& p, BumpCache& cache);

struct ProductBound {
  double lhs = 0;  // |prod_{j=L+1}^M (1 + e(2^(n+1) m 3^-j)) / 2|
  double rhs = 0;  // rho^w with rho = cos(pi/9)
  int window_changes = 0;
  bool ok = false;
};

// Checks |product| <= cos(pi/9)^w where w counts ternary digit changes of
// 2^(n+1) |m| in the window (L, M]. Budget: M <= 512.
ProductBound product_bound_check(int n, const Int& m, int L, int M);

enum class FinalCountVariant { lower, upper };

struct FinalCountResult {
  int M = 0;
  Int count = 0;
  Rat predicted;      // 2^(M-k) mu(I)
  double ratio = 0;   // count / predicted
};

// Endpoint-count consequence of the identity. The level M is pinned to the
// plateau scale 2^-(n+k):
//   lower: 3^(M+4) <= 2^(n+k) < 3^(M+5), count C_M inside the shrunk system
//          (radii 2^-(n+k)/5, theta ignored) intersected with I shrunk by 5
//          (I = [0,1] stays [0,1]);
//   upper: 3^(M-6) <= 2^(n+k) < 3^(M-5), count C_M inside the system dilated
//          by 45 and shifted by theta, intersected with I dilated by 5
//          (I = [0,1] stays [0,1]).
// Prediction in both cases: 2^(M-k) mu(I).
FinalCountResult final_count_ratio(FinalCountVariant v, int n, int k, const Rat& theta,
                                   const RationalInterval& I, long ball_budget = 1l << 26);

}  // namespace cantor23
