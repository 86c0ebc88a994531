#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "cantor23/rational.hpp"

namespace cantor23 {

// Smooth even cutoff: 1 on [-1,1], exp(1 - 1/(1 - (|x|-1)^2)) on 1 < |x| < 2,
// 0 outside [-2,2]. C^infinity; all derivatives vanish at |x| = 2 and match
// the plateau at |x| = 1.
double bump_value(double x);

struct TransformValue {
  double value = 0;
  double error_bound = 0;  // total certified error, quadrature + roundoff
};

// Fourier transform of the cutoff, real and even:
//   phihat(t) = 2 [ sin(2 pi t)/(2 pi t) + int_1^2 g(x) cos(2 pi t x) dx ].
// The plateau part is closed form, the glue part is adaptive 15-point
// Gauss-Kronrod. Fails (budget_error) if the panel budget cannot push the
// error estimate below 2^-precision_bits; precision_bits above 44 is
// rejected outright since double roundoff alone exceeds it.
TransformValue bump_transform(double t, int precision_bits = 40);

// Transform values on dyadic rationals m/2^k, cached by reduced key, plus
// empirically fitted decay envelopes |phihat(t)| <= C (1+|t|)^-n. The fit
// takes the max over a sample grid and adds 5% headroom; it is a measured
// envelope, not a proof, and callers treat it as such.
class BumpCache {
 public:
  explicit BumpCache(int precision_bits = 40) : precision_(precision_bits) {}

  double at(std::int64_t m, int k);
  double at_zero() { return at(0, 0); }
  double max_error() const { return err_; }
  int precision_bits() const { return precision_; }

  // Returns C for the given exponent, fitting on first use over [0, t_max]
  // with the given number of sample points.
  double envelope(int decay_n, double t_max, int sample_points = 257);

 private:
  int precision_;
  double err_ = 0;
  std::map<std::pair<std::int64_t, int>, double> values_;
  std::map<int, double> envelopes_;
};

}  // namespace cantor23
