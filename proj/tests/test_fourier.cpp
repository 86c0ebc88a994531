#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cantor23/cantor.hpp"
#include "cantor23/fourier.hpp"

using namespace cantor23;

TEST_CASE("bump: plateau, support, glue, symmetry") {
  CHECK(bump_value(0.0) == 1.0);
  CHECK(bump_value(1.0) == 1.0);
  CHECK(bump_value(-1.0) == 1.0);
  CHECK(bump_value(0.73) == 1.0);
  CHECK(bump_value(2.0) == 0.0);
  CHECK(bump_value(-2.0) == 0.0);
  CHECK(bump_value(2.5) == 0.0);
  CHECK(bump_value(-17.0) == 0.0);

  double g = bump_value(1.5);
  CHECK(g > 0.0);
  CHECK(g < 1.0);
  CHECK(bump_value(-1.5) == g);
  CHECK(bump_value(1.3) == bump_value(-1.3));

  // monotone on the glue: closer to the plateau means larger
  CHECK(bump_value(1.2) > bump_value(1.5));
  CHECK(bump_value(1.5) > bump_value(1.8));
  CHECK(bump_value(1.8) > bump_value(1.95));
}

TEST_CASE("bump transform: value at zero, parity, certified error") {
  auto t0 = bump_transform(0.0);
  CHECK(t0.value >= 2.0);
  CHECK(t0.value <= 4.0);
  CHECK(t0.value == doctest::Approx(3.206900322438).epsilon(1e-10));
  CHECK(t0.error_bound > 0.0);
  CHECK(t0.error_bound <= std::ldexp(1.0, -40));

  auto tp = bump_transform(1.37);
  auto tn = bump_transform(-1.37);
  CHECK(tp.value == tn.value);
  CHECK(tp.error_bound <= std::ldexp(1.0, -40));

  // the transform must decay: far out it is much smaller than at zero
  CHECK(std::fabs(bump_transform(40.0).value) < 1e-3);

  CHECK_THROWS_AS(bump_transform(0.5, 45), value_error);
  CHECK_THROWS_AS(bump_transform(0.5, 0), value_error);
}

TEST_CASE("bump cache: reduced keys, zero value, envelope is a real bound") {
  BumpCache cache;
  CHECK(cache.precision_bits() == 40);
  double v11 = cache.at(1, 1);
  CHECK(cache.at(2, 2) == v11);   // 2/4 reduces to 1/2
  CHECK(cache.at(-2, 2) == cache.at(-1, 1));
  CHECK(cache.at_zero() == doctest::Approx(3.206900322438).epsilon(1e-10));
  CHECK(cache.at(0, 7) == cache.at_zero());
  CHECK(cache.max_error() > 0.0);
  CHECK(cache.max_error() <= std::ldexp(1.0, -40));
  CHECK(cache.at(3, 2) == doctest::Approx(bump_transform(0.75).value).epsilon(1e-12));

  const double t_max = 40.0;
  double C = cache.envelope(4, t_max);
  CHECK(C > 0.0);
  CHECK(C < 10.0);
  // first fit wins; later calls with other grids return the cached constant
  CHECK(cache.envelope(4, 1.0) == C);

  // held-out grid, offset from any 1/16 sampling comb
  double worst = 0.0;
  for (int j = 0; j < 173; ++j) {
    double t = (j + 0.371) * (t_max / 173.0);
    double bound = C * std::pow(1.0 + t, -4.0);
    double ratio = std::fabs(bump_transform(t).value) / bound;
    if (ratio > worst) worst = ratio;
  }
  CHECK(worst <= 1.0);

  CHECK_THROWS_AS(cache.envelope(0, 10.0), value_error);
  CHECK_THROWS_AS(cache.envelope(4, -1.0), value_error);
}

TEST_CASE("fourier lhs: gap interval sees nothing, plateau-exact cell counts hits") {
  FourierParams g;
  g.n = 2;
  g.k = 2;
  g.L = 0;
  g.M = 5;
  g.I = RationalInterval::closed(make_rat(Int(2), Int(5)), make_rat(Int(3), Int(5)));
  CHECK(fourier_lhs(g) == 0.0);

  // k = 8 makes the train supports so narrow that only exact grid hits score,
  // and each scores the full plateau value 1. Level-4 left endpoints meeting
  // the grid 2^-2 Z: just 0.
  FourierParams p;
  p.n = 2;
  p.k = 8;
  p.L = 0;
  p.M = 4;
  CHECK(fourier_lhs(p) == 1.0);

  Int direct = count_endpoints_in_system(
      4, BallSystem::standard(2, make_rat(Int(1), Int(1) << 10)), RationalInterval::unit(),
      Endpoints::left);
  CHECK(direct == 1);

  FourierParams big;
  big.M = 23;
  CHECK_THROWS_AS(fourier_lhs(big), budget_error);
  FourierParams bad;
  bad.L = 3;
  bad.M = 2;
  CHECK_THROWS_AS(fourier_lhs(bad), value_error);
}

TEST_CASE("fourier rhs: zero mode identity and empty intersection") {
  BumpCache cache;

  FourierParams q;
  q.n = 1;
  q.k = 2;
  q.L = 3;
  q.M = 6;
  auto r = fourier_rhs(q, cache);
  Int eL = count_endpoints_in_interval(q.L, RationalInterval::unit(), Endpoints::left);
  CHECK(r.endpoints_L == eL);
  CHECK(r.endpoints_L == 8);
  // m = 0: every digit filter factor is 1, so the term is phihat(0) 2^(M-k)
  CHECK(r.zero_mode ==
        doctest::Approx(cache.at_zero() * std::ldexp(1.0, q.M - q.k)).epsilon(1e-12));
  CHECK(r.tail_bound > 0.0);
  CHECK(r.mode_error >= 0.0);

  FourierParams q2;
  q2.n = 2;
  q2.k = 5;
  q2.L = 0;
  q2.M = 5;
  auto r2 = fourier_rhs(q2, cache);
  CHECK(r2.zero_mode ==
        doctest::Approx(cache.at_zero() * std::ldexp(1.0, q2.M - q2.k)).epsilon(1e-12));

  FourierParams g;
  g.n = 1;
  g.k = 1;
  g.L = 5;
  g.M = 5;
  g.I = RationalInterval::closed(make_rat(Int(2), Int(5)), make_rat(Int(3), Int(5)));
  auto gr = fourier_rhs(g, cache);
  CHECK(gr.endpoints_L == 0);
  CHECK(gr.main == 0.0);
  CHECK(gr.zero_mode == 0.0);

  FourierParams wide;
  wide.k = 20;
  wide.T = 8;
  wide.L = 0;
  wide.M = 20;
  wide.n = 1;
  CHECK_THROWS_AS(fourier_rhs(wide, cache), budget_error);
}

TEST_CASE("fourier identity: L = M cell matches within the certified tail") {
  FourierParams p;
  p.n = 2;
  p.k = 3;
  p.L = 4;
  p.M = 4;
  p.T = 32;
  BumpCache cache;
  double lhs = fourier_lhs(p);
  auto rhs = fourier_rhs(p, cache);
  CHECK(lhs == doctest::Approx(8.740889776301).epsilon(1e-9));
  double allowed = rhs.tail_bound + rhs.mode_error + 1e-9 * std::max(1.0, std::fabs(lhs));
  CHECK(std::fabs(lhs - rhs.main) <= allowed);
  CHECK(rhs.endpoints_L == 16);
}

TEST_CASE("digit filter product bound: pinned windows") {
  // empty window: both sides 1
  auto e = product_bound_check(3, Int(7), 5, 5);
  CHECK(e.lhs == 1.0);
  CHECK(e.rhs == 1.0);
  CHECK(e.window_changes == 0);
  CHECK(e.ok);

  // m = 0: all factors are exactly 1, no digit changes anywhere
  auto z = product_bound_check(2, Int(0), 3, 9);
  CHECK(z.lhs == 1.0);
  CHECK(z.rhs == 1.0);
  CHECK(z.window_changes == 0);
  CHECK(z.ok);

  // 2^(n+1) m = 2: ternary digits ...0002, one change in (1, 3]
  auto a = product_bound_check(0, Int(1), 1, 3);
  CHECK(a.lhs == doctest::Approx(0.745395616).epsilon(1e-8));
  CHECK(a.rhs == doctest::Approx(std::cos(3.14159265358979323846 / 9.0)).epsilon(1e-12));
  CHECK(a.window_changes == 1);
  CHECK(a.ok);

  auto b = product_bound_check(0, Int(1), 1, 2);
  CHECK(b.lhs == doctest::Approx(0.7660444431).epsilon(1e-8));
  CHECK(b.window_changes == 1);
  CHECK(b.ok);

  CHECK_THROWS_AS(product_bound_check(1, Int(5), 0, 513), value_error);
  CHECK_THROWS_AS(product_bound_check(-1, Int(5), 0, 4), value_error);
  CHECK_THROWS_AS(product_bound_check(1, Int(5), 4, 2), value_error);
}

TEST_CASE("digit filter product bound: random sweep never violates") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> pick_n(0, 40);
  std::uniform_int_distribution<long> pick_m(-1000000, 1000000);
  std::uniform_int_distribution<int> pick_M(1, 60);
  for (int it = 0; it < 300; ++it) {
    int n = pick_n(rng);
    long m = pick_m(rng);
    int M = pick_M(rng);
    std::uniform_int_distribution<int> pick_L(0, M - 1);
    int L = pick_L(rng);
    auto r = product_bound_check(n, Int(m), L, M);
    CHECK(r.ok);
    CHECK(r.lhs <= r.rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("final count ratio: pinned lower and upper instances") {
  // lower, n=4, k=8: 3^7 <= 2^12 < 3^8 so M = 3, ball radius 1/135 at spacing
  // 1/16. Only 0 and 1 of the 16 level-3 endpoints meet the shrunk system.
  auto lo = final_count_ratio(FinalCountVariant::lower, 4, 8, Rat(0), RationalInterval::unit());
  CHECK(lo.M == 3);
  CHECK(lo.count == 2);
  Rat expect_lo = make_rat(Int(1), Int(32));
  CHECK(lo.predicted == expect_lo);
  CHECK(lo.ratio == doctest::Approx(64.0));

  // upper, n=2, k=2: 3^2 <= 2^4 < 3^3 so M = 8, radius 45/3^8 at spacing 1/4.
  // Hits cluster near 0, 1/4, 3/4, 1 (16 + 24 + 24 + 16); 1/2 sits in the gap.
  auto up = final_count_ratio(FinalCountVariant::upper, 2, 2, Rat(0), RationalInterval::unit());
  CHECK(up.M == 8);
  CHECK(up.count == 80);
  Rat expect_up = Rat(64);
  CHECK(up.predicted == expect_up);
  CHECK(up.ratio == doctest::Approx(1.25));

  // shifting the ball system moves grid points off the set and loses hits
  auto sh = final_count_ratio(FinalCountVariant::upper, 2, 2, make_rat(Int(1), Int(1000)),
                              RationalInterval::unit());
  CHECK(sh.count == 76);

  // an interval inside the central gap has measure zero: prediction collapses
  RationalInterval gap = RationalInterval::ball(make_rat(Int(1), Int(2)), make_rat(Int(1), Int(100)));
  CHECK_THROWS_AS(final_count_ratio(FinalCountVariant::upper, 6, 2, Rat(0), gap), value_error);

  CHECK_THROWS_AS(final_count_ratio(FinalCountVariant::lower, 1, 1, Rat(0), RationalInterval::unit()),
                  value_error);
  CHECK_THROWS_AS(final_count_ratio(FinalCountVariant::lower, 40, 30, Rat(0), RationalInterval::unit()),
                  value_error);
}
