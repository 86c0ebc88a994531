#include "cantor23/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "cantor23/digits.hpp"

namespace cantor23 {

namespace {

// Neumaier compensated accumulation; order of add() calls fixes the result.
struct Neumaier {
  double s = 0, c = 0;
  void add(double x) {
    double t = s + x;
    c += (std::fabs(s) >= std::fabs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double get() const { return s + c; }
};

std::uint64_t pow3_u64(int e) {
  // 3^40 still fits; anything larger is a caller bug
  if (e < 0 || e > 40) throw value_error("pow3_u64: exponent out of range");
  std::uint64_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// numerator range [lo, hi] of level-N left endpoints a/3^N inside I
std::pair<Int, Int> level_range(const RationalInterval& I, int N) {
  Int p = pow3(N);
  Int lo = I.lo_open ? floor_rat(I.lo * p) + 1 : ceil_rat(I.lo * p);
  Int hi = I.hi_open ? ceil_rat(I.hi * p) - 1 : floor_rat(I.hi * p);
  if (lo < 0) lo = 0;
  if (hi > p - 1) hi = p - 1;
  return {lo, hi};
}

// all {0,2}-digit numerators of level N inside [lo, hi], ascending
std::vector<std::uint64_t> level_points(int N, const Int& lo, const Int& hi) {
  std::vector<std::uint64_t> out;
  if (lo > hi) return out;
  std::uint64_t l = fits_u64(lo) ? to_u64(lo) : ~0ull;
  std::uint64_t h = fits_u64(hi) ? to_u64(hi) : ~0ull;
  std::uint64_t count = 1ull << N;
  std::vector<std::uint64_t> place(N);
  for (int i = 0; i < N; ++i) place[i] = 2 * pow3_u64(i);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::uint64_t a = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1)
      a += place[static_cast<int>(__builtin_ctzll(m))];
    if (a >= l && a <= h) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::complex<double> unit_phase(double frac) {
  double a = 2.0 * M_PI * frac;
  return {std::cos(a), std::sin(a)};
}

void check_common(const FourierParams& p) {
  if (p.L < 0 || p.L > p.M) throw value_error("fourier: need 0 <= L <= M");
  if (p.n < 1 || p.k < 0 || p.n + p.k > 26)
    throw value_error("fourier: need n >= 1, k >= 0, n + k <= 26");
  if (p.T < 1) throw value_error("fourier: need T >= 1");
  if (p.I.empty()) throw value_error("fourier: empty interval");
  Rat ay = p.y > 0 ? p.y : Rat(-p.y);
  if (ay > 1 << 20) throw value_error("fourier: shift too large");
}

}  // namespace

double fourier_lhs(const FourierParams& p) {
  check_common(p);
  if (p.M > 22) throw budget_error("fourier_lhs: M above enumeration budget");
  auto [alo_i, ahi_i] = level_range(p.I, p.M);
  if (alo_i > ahi_i) return 0.0;
  std::uint64_t alo = to_u64(alo_i), ahi = to_u64(ahi_i);

  const int M = p.M;
  const double inv_p3M = 1.0 / static_cast<double>(pow3_u64(M));
  const double y_d = to_double(p.y);
  const double scale = std::ldexp(1.0, p.n + p.k);
  const double grid = std::ldexp(1.0, p.n);
  const double grid_inv = std::ldexp(1.0, -p.n);
  const int wb = (p.k == 0) ? 3 : 2;

  // split the digit mask so each iteration is two table lookups
  const int low_bits = M < 11 ? M : 11;
  const std::uint64_t low_mask = (1ull << low_bits) - 1;
  std::vector<std::uint64_t> lowtab(1ull << low_bits), hightab(1ull << (M - low_bits));
  for (std::uint64_t m = 0; m < lowtab.size(); ++m) {
    std::uint64_t a = 0;
    for (int i = 0; i < low_bits; ++i)
      if (m >> i & 1) a += 2 * pow3_u64(i);
    lowtab[m] = a;
  }
  for (std::uint64_t m = 0; m < hightab.size(); ++m) {
    std::uint64_t a = 0;
    for (int i = 0; i + low_bits < M; ++i)
      if (m >> i & 1) a += 2 * pow3_u64(i + low_bits);
    hightab[m] = a;
  }

  Neumaier total;
  const std::uint64_t n_masks = 1ull << M;
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    std::uint64_t a = lowtab[mask & low_mask] + hightab[mask >> low_bits];
    if (a < alo || a > ahi) continue;
    double u = static_cast<double>(a) * inv_p3M + y_d;
    long long b0 = llround(u * grid);
    double cell = 0;
    for (int db = -wb; db <= wb; ++db) {
      double arg = (u - static_cast<double>(b0 + db) * grid_inv) * scale;
      cell += bump_value(arg);
    }
    total.add(cell);
  }
  return total.get();
}

FourierRhs fourier_rhs(const FourierParams& p, BumpCache& cache) {
  check_common(p);
  if (p.L > 22) throw budget_error("fourier_rhs: L above enumeration budget");
  if (p.M > 40) throw budget_error("fourier_rhs: M above modulus budget");
  long long m_max = (1ll << p.k) * p.T;
  if (m_max > 1000000) throw budget_error("fourier_rhs: mode count above budget");

  FourierRhs out;
  auto [lo, hi] = level_range(p.I, p.L);
  std::vector<std::uint64_t> pts = level_points(p.L, lo, hi);
  out.endpoints_L = Int(static_cast<unsigned long>(pts.size()));
  if (pts.empty()) return out;
  const double cnt_d = static_cast<double>(pts.size());

  if ((2 * m_max + 1) * (static_cast<long long>(pts.size()) + (p.M - p.L) + 1) > 200000000ll)
    throw budget_error("fourier_rhs: work above budget");

  const double scale = std::ldexp(1.0, p.M - p.L - p.k);
  const std::uint64_t p3L = pow3_u64(p.L);
  const double p3L_d = static_cast<double>(p3L);
  const std::uint64_t p3M = pow3_u64(p.M);
  // fixed per-m multipliers, reduced ahead of the loop
  const std::uint64_t t_endpoint = to_u64(Int(pow2(p.n) % Int(static_cast<unsigned long>(p3L))));
  const std::uint64_t t_product = to_u64(Int(pow2(p.n + 1) % Int(static_cast<unsigned long>(p3M))));
  std::vector<std::uint64_t> p3j(p.M + 1);
  for (int j = 0; j <= p.M && j <= 40; ++j) p3j[j] = pow3_u64(j);

  const Int qy = p.y.get_den();
  const Int py_mod = [&] {
    Int r = p.y.get_num() % qy;
    if (r < 0) r += qy;
    return r;
  }();
  const Int t_shift = pow2(p.n) % qy;
  const double qy_d = qy.get_d();

  double phihat0 = cache.at(0, 0);
  out.zero_mode = scale * phihat0 * cnt_d;

  Neumaier main;
  main.add(out.zero_mode);
  for (long long m = 1; m <= m_max; ++m) {
    double ph = cache.at(m, p.k);

    // endpoint sum, angles reduced exactly mod 3^L
    std::complex<double> esum(0, 0);
    if (p.L == 0) {
      esum = cnt_d;
    } else {
      std::uint64_t tm = mulmod_u64(t_endpoint, static_cast<std::uint64_t>(m), p3L);
      for (std::uint64_t a : pts)
        esum += unit_phase(static_cast<double>(mulmod_u64(tm, a, p3L)) / p3L_d);
    }

    // scale-bridging product, angles reduced exactly mod 3^j
    std::complex<double> prod(1, 0);
    std::uint64_t v = mulmod_u64(t_product, static_cast<std::uint64_t>(m), p3M);
    for (int j = p.M; j > p.L; --j) {
      v %= p3j[j];
      std::complex<double> f =
          0.5 * (std::complex<double>(1, 0) + unit_phase(static_cast<double>(v) / static_cast<double>(p3j[j])));
      prod *= f;
    }

    // shift phase e(2^n m y), reduced exactly mod the shift denominator
    Int am = (t_shift * Int(static_cast<unsigned long>(m))) % qy;
    am = (am * py_mod) % qy;
    std::complex<double> phase_y = unit_phase(am.get_d() / qy_d);

    std::complex<double> term = ph * scale * phase_y * esum * prod;
    main.add(2.0 * term.real());
  }
  out.main = main.get();

  double C = cache.envelope(p.decay_n, std::max(16.0, static_cast<double>(p.T) + 2.0));
  out.tail_bound = cnt_d * std::ldexp(1.0, p.M - p.L) * 2.0 * C *
                   std::pow(1.0 + p.T, 1 - p.decay_n) / (p.decay_n - 1);
  out.mode_error = (2.0 * static_cast<double>(m_max) + 1.0) * scale * cnt_d * cache.max_error();
  return out;
}

ProductBound product_bound_check(int n, const Int& m, int L, int M) {
  if (n < 0 || L < 0 || L > M || M > 512)
    throw value_error("product_bound_check: need 0 <= L <= M <= 512, n >= 0");
  ProductBound out;
  Int y = pow2(n + 1) * (sgn(m) < 0 ? Int(-m) : m);
  out.window_changes = static_cast<int>(windowed_digit_changes_base3(y, L, M));

  double lhs = 1.0;
  Int v = y % pow3(M);
  for (int j = M; j > L; --j) {
    Int pj = pow3(j);
    v %= pj;
    double frac = to_double(make_rat(v, pj));
    lhs *= std::fabs(std::cos(M_PI * frac));
  }
  out.lhs = lhs;
  out.rhs = std::pow(std::cos(M_PI / 9.0), out.window_changes);
  out.ok = out.lhs <= out.rhs + 1e-12;
  return out;
}

FinalCountResult final_count_ratio(FinalCountVariant v, int n, int k, const Rat& theta,
                                   const RationalInterval& I, long ball_budget) {
  if (n < 1 || k < 0 || n + k > 64) throw value_error("final_count_ratio: bad scales");
  if (I.empty()) throw value_error("final_count_ratio: empty interval");
  // e = floor(log_3 2^(n+k))
  int e = static_cast<int>(static_cast<double>(n + k) * 0.6309297535714574);
  while (pow3(e + 1) <= pow2(n + k)) ++e;
  while (e > 0 && pow3(e) > pow2(n + k)) --e;

  FinalCountResult out;
  BallSystem sys;
  RationalInterval J = I;
  if (v == FinalCountVariant::lower) {
    out.M = e - 4;
    if (out.M < 1) throw value_error("final_count_ratio: scale too small for the lower form");
    sys = BallSystem::standard(n, make_rat(Int(1), 5 * pow3(out.M)));
    if (!I.is_unit()) J = I.dilate(make_rat(Int(1), Int(5)));
  } else {
    out.M = e + 6;
    sys = BallSystem::standard(n, make_rat(Int(45), pow3(out.M))).translate(theta);
    if (!I.is_unit()) J = I.dilate(Rat(5));
  }
  out.count = count_endpoints_in_system(out.M, sys, J, Endpoints::all, ball_budget);
  out.predicted = measure_of_interval(I) * make_rat(pow2(out.M), pow2(k));
  if (out.predicted == 0) throw value_error("final_count_ratio: zero prediction");
  out.ratio = out.count.get_d() / to_double(out.predicted);
  return out;
}

}  // namespace cantor23
