#pragma once

#include <cstdint>
#include <functional>

#include "cantor23/digit_word.hpp"
#include "cantor23/rational.hpp"

namespace cantor23 {

// Number of adjacent unequal digit pairs in the base-b expansion of y >= 1.
int digit_changes(const Int& y, unsigned base);
int digit_changes_u64(std::uint64_t y, unsigned base);

// Ternary digit changes restricted to positions j in [max(L+1,2), M], where
// digit 1 is the least significant ternary digit of y and digits above the
// digit count of y are 0. pre: 0 <= L <= M.
int windowed_digit_changes_base3(const Int& y, int L, int M);

// Natural log of a positive big integer, accurate to a few ulp.
double log_of_int(const Int& y);

struct StewartMargin {
  int lhs = 0;          // D_2(y) + D_3(y)
  double rhs = 0.0;     // loglog y / (logloglog y + c) - 1
  bool satisfied = false;
};

// pre: y >= 16 (so loglog y and logloglog y are defined), c > 0.
StewartMargin stewart_margin(const Int& y, double c);

// ---- Ratio scans ----

// mode all:            row per integer y in [y_lo, y_hi], y_lo >= 2;
//                      ratio = (D_2(y) + D_3(y)) / ln y.
// mode powers_of_two:  row per exponent y in [y_lo, y_hi], y_lo >= 1;
//                      d2 = D_2(2^y) = 1, d3 = D_3(2^y),
//                      ratio = d3 / (y ln 2) = d3 / ln(2^y).
enum class ScanMode { all, powers_of_two };

struct ScanRow {
  std::uint64_t y = 0;
  int d2 = 0;
  int d3 = 0;
  double ratio = 0.0;
};

struct ScanSummary {
  double min_ratio = 0.0;
  std::uint64_t argmin = 0;  // smallest y attaining min_ratio
  std::uint64_t y_lo = 0, y_hi = 0;
};

// Streams rows in y order to `sink` and returns the running-minimum summary.
// Work is chunked with a fixed chunk size, workers fill chunk buffers, and
// buffers are drained in chunk order, so output does not depend on `jobs`.
ScanSummary scan_ratio(ScanMode mode, std::uint64_t y_lo, std::uint64_t y_hi,
                       const std::function<void(const ScanRow&)>& sink,
                       int jobs = 1);

}  // namespace cantor23
