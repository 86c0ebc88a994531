#include "cantor23/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cantor23 {

const char* verdict_name(HitVerdict v) {
  switch (v) {
    case HitVerdict::hit: return "hit";
    case HitVerdict::miss: return "miss";
    case HitVerdict::uncertain: return "uncertain";
    case HitVerdict::psi_undefined: return "psi-undefined";
  }
  return "?";
}

namespace {

void tally(HitResult& r, std::uint64_t n, HitVerdict v) {
  r.rows.push_back({n, v});
  switch (v) {
    case HitVerdict::hit: ++r.hits; break;
    case HitVerdict::miss: ++r.misses; break;
    case HitVerdict::uncertain: ++r.uncertain; break;
    case HitVerdict::psi_undefined: ++r.undefined; break;
  }
}

Rat pow2_rat(long e) { return e >= 0 ? Rat(pow2(e)) : make_rat(Int(1), pow2(-e)); }
Rat pow3_rat(long e) { return e >= 0 ? Rat(pow3(e)) : make_rat(Int(1), pow3(-e)); }

// largest e with 3^e <= q
long floor_log3_rat(const Rat& q) {
  if (q <= 0) throw value_error("floor_log3: positive input required");
  long e = static_cast<long>(std::floor(std::log(to_double(q)) / std::log(3.0))) - 2;
  while (pow3_rat(e + 1) <= q) ++e;
  while (pow3_rat(e) > q) --e;
  return e;
}

long floor_log2_rat(const Rat& q) {
  if (q <= 0) throw value_error("floor_log2: positive input required");
  long e = static_cast<long>(std::floor(std::log(to_double(q)) / std::log(2.0))) - 2;
  while (pow2_rat(e + 1) <= q) ++e;
  while (pow2_rat(e) > q) --e;
  return e;
}

// floor(-log2 v) = -ceil(log2 v)
long floor_neg_log2(const Rat& v) {
  long f = floor_log2_rat(v);
  long c = (pow2_rat(f) == v) ? f : f + 1;
  return -c;
}

}  // namespace

HitResult hit_count(const Rat& alpha, int base, const PsiSpec& psi, std::uint64_t n_max) {
  if (base != 2 && base != 3) throw value_error("hit_count: base must be 2 or 3");
  if (n_max < 1 || n_max > 1000000) throw budget_error("hit_count: n_max out of budget");
  HitResult out;
  out.rows.reserve(n_max);
  const Int q = alpha.get_den();
  Int r = alpha.get_num() % q;
  if (r < 0) r += q;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    r *= base;
    r %= q;
    if (!psi.defined_at(n)) {
      tally(out, n, HitVerdict::psi_undefined);
      continue;
    }
    PsiBracket b = psi.bracket(n);
    Int dist = q - r;
    if (r < dist) dist = r;
    // dist/q < lo certifies a hit, dist/q >= hi certifies a miss
    if (dist * b.lo.get_den() < b.lo.get_num() * q)
      tally(out, n, HitVerdict::hit);
    else if (dist * b.hi.get_den() >= b.hi.get_num() * q)
      tally(out, n, HitVerdict::miss);
    else
      tally(out, n, HitVerdict::uncertain);
  }
  return out;
}

HitResult hit_count_sampled(const SampledPoint& x, int base, const PsiSpec& psi,
                            std::uint64_t n_max) {
  if (base != 2 && base != 3) throw value_error("hit_count_sampled: base must be 2 or 3");
  if (n_max < 1 || n_max > 1000000) throw budget_error("hit_count_sampled: n_max out of budget");
  if (x.depth < 1) throw value_error("hit_count_sampled: depth must be positive");
  HitResult out;
  out.rows.reserve(n_max);
  const Int den = pow3(x.depth);
  Int r = x.numerator;
  Int err = 1;  // base^n, the scaled truncation error numerator
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    r *= base;
    while (r >= den) r -= den;
    err *= base;
    if (!psi.defined_at(n)) {
      tally(out, n, HitVerdict::psi_undefined);
      continue;
    }
    PsiBracket b = psi.bracket(n);
    Int dist = den - r;
    if (r < dist) dist = r;
    // (dist + err)/den < lo certifies a hit even at the worst truncation;
    // (dist - err)/den >= hi certifies a miss the same way
    if ((dist + err) * b.lo.get_den() < b.lo.get_num() * den)
      tally(out, n, HitVerdict::hit);
    else if ((dist - err) * b.hi.get_den() >= b.hi.get_num() * den)
      tally(out, n, HitVerdict::miss);
    else
      tally(out, n, HitVerdict::uncertain);
  }
  return out;
}

SeriesResult series_eval(SeriesKind kind, const PsiSpec& psi, std::uint64_t n_max,
                         double eps, double h_c) {
  if (n_max < 3) throw value_error("series_eval: n_max must be at least 3");
  if (n_max > 100000000ull) throw budget_error("series_eval: n_max above budget");
  const double g = gamma_dim();
  const double ln2 = std::log(2.0);
  SeriesResult out;
  out.first_term = psi.min_n();
  if (kind == SeriesKind::main_convergence && out.first_term < 16) out.first_term = 16;

  double s = 0, comp = 0;
  auto add = [&](double x) {
    double t = s + x;
    comp += (std::fabs(s) >= std::fabs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    double term = 0;
    if (psi.defined_at(n)) {
      double p = psi.approx(n);
      switch (kind) {
        case SeriesKind::benchmark:
        case SeriesKind::lsv_triadic:
          term = std::pow(p, g);
          break;
        case SeriesKind::main_convergence:
          term = p;
          if (n >= 16) {
            double l1 = std::log(static_cast<double>(n));
            double l2 = std::log(l1), l3 = std::log(l2);
            term += std::exp2(-l1 / (l2 * l3)) * std::pow(p, g);
          }
          break;
        case SeriesKind::conditional:
          term = p + std::exp2(-eps * h_c * std::log(static_cast<double>(n) * ln2));
          break;
      }
    }
    add(term);
    if ((n & (n - 1)) == 0) out.rows.push_back({n, s + comp});
  }
  if (out.rows.empty() || out.rows.back().n != n_max) out.rows.push_back({n_max, s + comp});
  out.total = s + comp;

  // Growth hint from octave increments, a label about this data only. Flat
  // or growing increments (harmonic and worse) read as diverging; increments
  // that shrink octave over octave, however slowly, read as converging. The
  // median over the last five ratios rides out a single odd octave.
  std::vector<double> cp;
  for (const auto& row : out.rows)
    if ((row.n & (row.n - 1)) == 0) cp.push_back(row.partial);
  out.verdict_hint = "inconclusive";
  if (cp.size() >= 3) {
    std::vector<double> inc, q;
    for (std::size_t i = 1; i < cp.size(); ++i) inc.push_back(cp[i] - cp[i - 1]);
    for (std::size_t i = inc.size() >= 6 ? inc.size() - 5 : 1; i < inc.size(); ++i)
      if (inc[i - 1] > 0 && inc[i] > 0) q.push_back(inc[i] / inc[i - 1]);
    const double tiny = 1e-15 * std::max(1.0, std::fabs(out.total));
    if (inc.back() <= tiny) {
      out.verdict_hint = "converging";
    } else if (!q.empty()) {
      std::sort(q.begin(), q.end());
      const double med = q[q.size() / 2];
      if (med >= 0.995)
        out.verdict_hint = "diverging";
      else if (q.back() < 1.05)
        out.verdict_hint = "converging";
    }
  }
  return out;
}

std::vector<ConvergenceRow> convergence_audit(const PsiSpec& psi, std::uint64_t n_lo,
                                              std::uint64_t n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw value_error("convergence_audit: bad range");
  if (n_hi > 26) throw budget_error("convergence_audit: n_hi above exact-measure budget");
  const double g = gamma_dim();
  std::vector<ConvergenceRow> rows;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    if (!psi.defined_at(n)) continue;
    PsiBracket b = psi.bracket(n);
    if (b.lo <= 0) throw value_error("convergence_audit: schedule must be positive");
    ConvergenceRow row;
    row.n = n;
    row.psi_value = psi.approx(n);

    long k_hi_side = floor_neg_log2(b.hi) + 1;
    long k_lo_side = floor_neg_log2(b.lo) + 1;
    if (k_hi_side != k_lo_side) row.ambiguous = true;
    long k = k_hi_side;
    if (n >= 16) {
      row.log_branch_defined = true;
      double l1 = std::log(static_cast<double>(n));
      double l2 = std::log(l1), l3 = std::log(l2);
      long kl = 3 * static_cast<long>(std::floor(l1 / (l2 * l3)));
      if (kl < k) k = kl;
    }
    if (k < 1) k = 1;
    row.k_n = static_cast<int>(k);

    row.M = static_cast<int>(
        floor_log3_rat(pow2_rat(static_cast<long>(n) + k)) - 4);
    auto N_of = [&](const Rat& v) {
      return floor_log3_rat(Rat(5) * pow2_rat(static_cast<long>(n)) / v) + 2;
    };
    long N_hi_side = N_of(b.hi), N_lo_side = N_of(b.lo);
    if (N_hi_side != N_lo_side) row.ambiguous = true;
    row.N = static_cast<int>(N_hi_side);

    auto drop_ok = [&](const Rat& v) {
      Rat p3N = pow3_rat(-row.N), p3M = pow3_rat(-row.M);
      Rat cap = pow2_rat(9 - static_cast<long>(n));
      Rat r = v / pow2_rat(static_cast<long>(n));
      return r / 125 <= p3N && p3N <= 5 * r && 5 * r <= p3M && p3M <= cap;
    };
    bool d_hi = drop_ok(b.hi), d_lo = drop_ok(b.lo);
    if (d_hi != d_lo) row.ambiguous = true;
    row.valid_drop = d_hi && d_lo;

    auto mu_of = [&](const Rat& v) {
      if (v == 0) return Rat(0);
      BallSystem s = BallSystem::standard(static_cast<int>(n), v / Rat(pow2(n)));
      return measure_of_system(s, RationalInterval::unit());
    };
    row.mu_lo = mu_of(b.lo);
    row.mu_hi = mu_of(b.hi);
    row.bound_term =
        std::exp2(-static_cast<double>(k) * (1.0 - g)) * std::pow(row.psi_value, g);
    rows.push_back(row);
  }
  return rows;
}

ConnectionAudit connection_audit(int n, int N, const Rat& r, const Rat& theta,
                                 const RationalInterval& I) {
  if (n < 1 || N < 1) throw value_error("connection_audit: need n >= 1 and N >= 1");
  if (r <= 0) throw value_error("connection_audit: need r > 0");
  if (I.empty()) throw value_error("connection_audit: empty interval");
  if (make_rat(Int(5), pow3(N)) > r)
    throw value_error("connection_audit: need 3^-N <= r/5");
  if (!I.is_unit()) {
    Rat half = I.length() / 2;
    if (make_rat(Int(1), pow2(n)) >= half)
      throw value_error("connection_audit: need 2^-n below the half-length of I");
  }
  BallSystem B = BallSystem::standard(n, r).translate(theta);
  RationalInterval Ii = I.is_unit() ? I : I.dilate(make_rat(Int(1), Int(5)));
  RationalInterval Io = I.is_unit() ? I : I.dilate(Rat(5));

  ConnectionAudit out;
  out.count_inner =
      count_endpoints_in_system(N, B.dilate(make_rat(Int(1), Int(5))), Ii, Endpoints::all);
  out.count_outer = count_endpoints_in_system(N, B.dilate(Rat(5)), Io, Endpoints::all);
  out.mu = measure_of_system(B, I);
  out.lower = make_rat(out.count_inner, pow2(static_cast<unsigned long>(N) + 1));
  out.upper = make_rat(out.count_outer, pow2(static_cast<unsigned long>(N) - 1));
  out.ok = out.lower <= out.mu && out.mu <= out.upper;
  return out;
}

DroppingAudit dropping_audit(int n, int M, int N, const Rat& r, const Rat& theta) {
  if (n < 1 || M < 0 || N < 0) throw value_error("dropping_audit: bad levels");
  if (r <= 0) throw value_error("dropping_audit: need r > 0");
  DroppingAudit out;
  {
    Rat p3N = pow3_rat(-N), p3M = pow3_rat(-M);
    Rat cap = pow2_rat(9 - static_cast<long>(n));
    out.valid = r / 125 <= p3N && p3N <= 5 * r && 5 * r <= p3M && p3M <= cap;
  }
  BallSystem fine = BallSystem::standard(n, r).translate(theta).dilate(Rat(5));
  BallSystem coarse =
      BallSystem::standard(n, make_rat(Int(1), pow3(M))).translate(theta).dilate(Rat(5));
  out.count_fine = count_endpoints_in_system(N, fine, RationalInterval::unit(), Endpoints::all);
  out.count_coarse =
      count_endpoints_in_system(M, coarse, RationalInterval::unit(), Endpoints::all);
  if (out.count_coarse == 0)
    out.ratio = out.count_fine == 0 ? 0 : std::numeric_limits<double>::infinity();
  else
    out.ratio = out.count_fine.get_d() / out.count_coarse.get_d();
  return out;
}

ShiftingAudit shifting_audit(int n, const Rat& t, const Rat& theta, int M, int J,
                             const RationalInterval& I) {
  if (n < 1 || J < 0 || M < J) throw value_error("shifting_audit: need n >= 1, 0 <= J <= M");
  if (t <= 0) throw value_error("shifting_audit: need t > 0");
  if (I.empty()) throw value_error("shifting_audit: empty interval");
  if (!(Rat(2) * t * Rat(pow2(n)) < Rat(pow3(M - J))))
    throw value_error("shifting_audit: need 2 t 3^-(M-J) < 2^-n");
  BallSystem full = BallSystem::standard(n, t / Rat(pow3(M))).translate(theta);
  BallSystem part = BallSystem::standard(n, t / Rat(pow3(M - J))).translate(theta);
  ShiftingAudit out;
  out.count_full = count_endpoints_in_system(M, full, I, Endpoints::all);
  out.count_short = count_endpoints_in_system(M - J, part, I, Endpoints::all);
  out.ok = (out.count_short + 1) * pow2(static_cast<unsigned long>(J) + 1) >= out.count_full;
  return out;
}

namespace {

struct LevelSystem {
  std::uint64_t n = 0;
  Rat psi_val;
  Rat radius;
  bool empty = true;
  BallSystem sys;
};

RationalInterval system_hull(const BallSystem& s) {
  Rat lo = s.theta + make_rat(s.a_lo, pow2(static_cast<unsigned long>(s.n))) - s.radius;
  Rat hi = s.theta + make_rat(s.a_hi, pow2(static_cast<unsigned long>(s.n))) + s.radius;
  return RationalInterval::open(lo, hi);
}

// inclusive center-index range of balls of s that can meet I
std::pair<Int, Int> ball_range(const BallSystem& s, const RationalInterval& I) {
  Rat p2 = Rat(pow2(static_cast<unsigned long>(s.n)));
  Int lo = ceil_rat((I.lo - s.radius - s.theta) * p2);
  Int hi = floor_rat((I.hi + s.radius - s.theta) * p2);
  if (lo < s.a_lo) lo = s.a_lo;
  if (hi > s.a_hi) hi = s.a_hi;
  return {lo, hi};
}

}  // namespace

PairwiseResult chung_erdos_audit(const PsiSpec& psi, std::uint64_t n_lo, int window_cap,
                                 PsiSide side, const RationalInterval& I,
                                 long piece_budget) {
  if (n_lo < 16) throw value_error("chung_erdos_audit: n_lo must be at least 16");
  if (n_lo > 30) throw budget_error("chung_erdos_audit: n_lo above budget");
  if (window_cap < 0 || window_cap > 24)
    throw value_error("chung_erdos_audit: window cap out of range");
  if (I.empty()) throw value_error("chung_erdos_audit: empty interval");

  PairwiseResult out;
  out.n_lo = n_lo;
  {
    double l1 = std::log(static_cast<double>(n_lo));
    double l2 = std::log(l1), l3 = std::log(l2);
    out.n_plus = n_lo + static_cast<std::uint64_t>(std::floor(l1 / (l2 * l3)));
  }
  out.n_hi = std::min(out.n_plus, n_lo + static_cast<std::uint64_t>(window_cap));
  out.capped = out.n_hi < out.n_plus;
  if (out.n_hi > 44) throw budget_error("chung_erdos_audit: window end above budget");

  const std::size_t W = static_cast<std::size_t>(out.n_hi - n_lo + 1);
  std::vector<LevelSystem> lv(W);
  for (std::size_t t = 0; t < W; ++t) {
    std::uint64_t n = n_lo + t;
    if (!psi.defined_at(n))
      throw value_error("chung_erdos_audit: schedule undefined inside the window");
    PsiBracket b = psi.bracket(n);
    lv[t].n = n;
    lv[t].psi_val = (side == PsiSide::lower) ? b.lo : b.hi;
    lv[t].empty = (lv[t].psi_val == 0);
    if (!lv[t].empty) {
      lv[t].radius = lv[t].psi_val / Rat(pow2(n));
      lv[t].sys = BallSystem::standard(static_cast<int>(n), lv[t].radius);
    }
  }

  // cost estimate before any exact work
  {
    double work = 0;
    std::vector<double> cnt(W, 0), rad(W, 0);
    double ilen = to_double(I.hi - I.lo);
    for (std::size_t t = 0; t < W; ++t) {
      if (lv[t].empty) continue;
      rad[t] = to_double(lv[t].radius);
      double all = std::ldexp(1.0, static_cast<int>(lv[t].n)) + 1.0;
      cnt[t] = std::min(all, (ilen + 2 * rad[t]) * std::ldexp(1.0, static_cast<int>(lv[t].n)) + 2.0);
      work += cnt[t];
    }
    for (std::size_t i = 0; i < W; ++i)
      for (std::size_t j = i + 1; j < W; ++j)
        work += cnt[i] * ((rad[i] + rad[j]) * std::ldexp(1.0, static_cast<int>(lv[j].n)) + 4.0);
    if (work > static_cast<double>(piece_budget))
      throw budget_error("chung_erdos_audit: pairwise work above piece budget");
  }

  std::vector<Rat> mus(W, Rat(0));
  Rat sum_mu(0), sum_pairs(0);
  for (std::size_t t = 0; t < W; ++t) {
    if (!lv[t].empty) mus[t] = measure_of_system(lv[t].sys, I);
    out.mu_levels.push_back(mus[t]);
    sum_mu += mus[t];
  }

  auto pair_measure = [&](const LevelSystem& a, const LevelSystem& b) -> Rat {
    if (a.empty || b.empty) return Rat(0);
    if (a.sys.merged()) return measure_of_system(b.sys, system_hull(a.sys).intersect(I));
    auto [lo, hi] = ball_range(a.sys, I);
    Rat total(0);
    for (Int idx = lo; idx <= hi; ++idx) {
      Rat c = a.sys.theta + make_rat(idx, pow2(static_cast<unsigned long>(a.sys.n)));
      RationalInterval piece =
          RationalInterval::open(c - a.radius, c + a.radius).intersect(I);
      if (!piece.empty()) total += measure_of_system(b.sys, piece);
    }
    return total;
  };

  out.max_overlap_ratio = Rat(0);
  for (std::size_t i = 0; i < W; ++i) {
    for (std::size_t j = i; j < W; ++j) {
      Rat m = (i == j) ? mus[i] : pair_measure(lv[i], lv[j]);
      sum_pairs += (i == j) ? m : Rat(2) * m;
      PairRow row;
      row.i = lv[i].n;
      row.j = lv[j].n;
      row.mu = m;
      if (i < j) {
        Rat bnd = pow2_rat(static_cast<long>(lv[i].n) - static_cast<long>(lv[j].n)) *
                      lv[j].psi_val +
                  lv[i].psi_val * lv[j].psi_val;
        if (bnd > 0) {
          row.overlap_ratio = m / bnd;
          if (row.overlap_ratio > out.max_overlap_ratio) {
            out.max_overlap_ratio = row.overlap_ratio;
            out.ratio_i = lv[i].n;
            out.ratio_j = lv[j].n;
          }
        }
      }
      out.pairs.push_back(row);
    }
  }

  // union measure: every clipped ball as a segment, then one sweep
  std::vector<std::pair<Rat, Rat>> segs;
  for (std::size_t t = 0; t < W; ++t) {
    if (lv[t].empty) continue;
    if (lv[t].sys.merged()) {
      RationalInterval h = system_hull(lv[t].sys).intersect(I);
      if (!h.empty()) segs.emplace_back(h.lo, h.hi);
      continue;
    }
    auto [lo, hi] = ball_range(lv[t].sys, I);
    for (Int idx = lo; idx <= hi; ++idx) {
      Rat c = lv[t].sys.theta + make_rat(idx, pow2(static_cast<unsigned long>(lv[t].n)));
      RationalInterval piece =
          RationalInterval::open(c - lv[t].radius, c + lv[t].radius).intersect(I);
      if (!piece.empty()) segs.emplace_back(piece.lo, piece.hi);
    }
  }
  std::sort(segs.begin(), segs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  out.mu_union = Rat(0);
  std::size_t s0 = 0;
  while (s0 < segs.size()) {
    Rat lo = segs[s0].first, hi = segs[s0].second;
    std::size_t s1 = s0 + 1;
    // touching segments may merge: mu has no atoms
    while (s1 < segs.size() && segs[s1].first <= hi) {
      if (segs[s1].second > hi) hi = segs[s1].second;
      ++s1;
    }
    out.mu_union += cantor_cdf(hi) - cantor_cdf(lo);
    s0 = s1;
  }

  out.sum_mu = sum_mu;
  out.sum_pairs = sum_pairs;
  out.bound = (sum_pairs == 0) ? Rat(0) : Rat(sum_mu * sum_mu) / sum_pairs;
  out.ok = out.bound <= out.mu_union;
  return out;
}

}  // namespace cantor23
