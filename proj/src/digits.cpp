#include "cantor23/digits.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "cantor23/parallel.hpp"

namespace cantor23 {

int digit_changes_u64(std::uint64_t y, unsigned base) {
  if (y == 0) return 0;
  if (base == 2) {
    int width = 64 - std::countl_zero(y);
    std::uint64_t pairs = (y ^ (y >> 1)) & ((width > 1) ? ((1ull << (width - 1)) - 1) : 0ull);
    return std::popcount(pairs);
  }
  int changes = 0;
  unsigned prev = static_cast<unsigned>(y % base);
  y /= base;
  while (y != 0) {
    unsigned d = static_cast<unsigned>(y % base);
    changes += (d != prev);
    prev = d;
    y /= base;
  }
  return changes;
}

int digit_changes(const Int& y, unsigned base) {
  if (sgn(y) < 0) throw value_error("digit_changes: negative input");
  if (fits_u64(y)) return digit_changes_u64(to_u64(y), base);
  DigitWord w = base_digits(y, base);
  int changes = 0;
  for (std::size_t i = 1; i < w.digits.size(); ++i)
    changes += (w.digits[i] != w.digits[i - 1]);
  return changes;
}

int windowed_digit_changes_base3(const Int& y, int L, int M) {
  if (L < 0 || M < L) throw value_error("windowed_digit_changes_base3: need 0 <= L <= M");
  if (sgn(y) < 0) throw value_error("windowed_digit_changes_base3: negative input");
  if (M < 2) return 0;
  DigitWord w = base_digits(y, 3);
  const int len = static_cast<int>(w.digits.size());
  // digit j (1-indexed from the least significant position; 0 above len)
  auto digit = [&](int j) -> unsigned {
    return (j >= 1 && j <= len) ? w.digits[static_cast<std::size_t>(len - j)] : 0u;
  };
  int changes = 0;
  for (int j = std::max(L + 1, 2); j <= M; ++j)
    changes += (digit(j) != digit(j - 1));
  return changes;
}

double log_of_int(const Int& y) {
  if (sgn(y) <= 0) throw value_error("log_of_int: input must be positive");
  signed long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, y.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

StewartMargin stewart_margin(const Int& y, double c) {
  if (y < 16) throw value_error("stewart_margin: y must be >= 16");
  if (!(c > 0.0)) throw value_error("stewart_margin: c must be positive");
  StewartMargin m;
  m.lhs = digit_changes(y, 2) + digit_changes(y, 3);
  double ll = std::log(log_of_int(y));
  double lll = std::log(ll);
  m.rhs = ll / (lll + c) - 1.0;
  m.satisfied = static_cast<double>(m.lhs) >= m.rhs;
  return m;
}

namespace {

ScanRow row_all(std::uint64_t y) {
  ScanRow r;
  r.y = y;
  r.d2 = digit_changes_u64(y, 2);
  r.d3 = digit_changes_u64(y, 3);
  r.ratio = static_cast<double>(r.d2 + r.d3) / std::log(static_cast<double>(y));
  return r;
}

int ternary_changes_of_pow2(const Int& value) {
  std::string s = value.get_str(3);
  int changes = 0;
  for (std::size_t i = 1; i < s.size(); ++i) changes += (s[i] != s[i - 1]);
  return changes;
}

}  // namespace

ScanSummary scan_ratio(ScanMode mode, std::uint64_t y_lo, std::uint64_t y_hi,
                       const std::function<void(const ScanRow&)>& sink, int jobs) {
  if (y_hi < y_lo) throw value_error("scan_ratio: empty range");
  if (mode == ScanMode::all && y_lo < 2) throw value_error("scan_ratio: mode all needs y_lo >= 2");
  if (mode == ScanMode::powers_of_two && y_lo < 1)
    throw value_error("scan_ratio: mode powers_of_two needs y_lo >= 1");
  if (mode == ScanMode::powers_of_two && y_hi > 100000)
    throw budget_error("scan_ratio: powers_of_two exponent budget is 100000");

  ScanSummary sum;
  sum.y_lo = y_lo;
  sum.y_hi = y_hi;
  bool have_min = false;
  auto fold = [&](const ScanRow& r) {
    if (!have_min || r.ratio < sum.min_ratio) {
      sum.min_ratio = r.ratio;
      sum.argmin = r.y;
      have_min = true;
    }
    sink(r);
  };

  const std::int64_t chunk = (mode == ScanMode::all) ? 65536 : 256;
  chunked_run<std::vector<ScanRow>>(
      static_cast<std::int64_t>(y_lo), static_cast<std::int64_t>(y_hi) + 1, chunk, jobs,
      [mode](std::int64_t lo, std::int64_t hi) {
        std::vector<ScanRow> rows;
        rows.reserve(static_cast<std::size_t>(hi - lo));
        if (mode == ScanMode::all) {
          for (std::int64_t y = lo; y < hi; ++y)
            rows.push_back(row_all(static_cast<std::uint64_t>(y)));
        } else {
          const double ln2 = std::log(2.0);
          Int value = pow2(static_cast<unsigned long>(lo));
          for (std::int64_t y = lo; y < hi; ++y) {
            ScanRow r;
            r.y = static_cast<std::uint64_t>(y);
            r.d2 = 1;  // binary expansion of 2^y is 1 followed by zeros
            r.d3 = ternary_changes_of_pow2(value);
            r.ratio = static_cast<double>(r.d3) / (static_cast<double>(y) * ln2);
            rows.push_back(r);
            value <<= 1;
          }
        }
        return rows;
      },
      [&](std::vector<ScanRow>& rows) {
        for (const ScanRow& r : rows) fold(r);
      });
  return sum;
}

}  // namespace cantor23
