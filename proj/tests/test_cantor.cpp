#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "cantor23/cantor.hpp"
#include "cantor23/sampling.hpp"

using namespace cantor23;

namespace {

// membership oracle for a ball system: nearest center decides
bool in_system(const BallSystem& S, const Rat& x) {
  Rat scaled = (x - S.theta) * pow2(static_cast<unsigned long>(S.n));
  Int a = floor_rat(scaled + make_rat(1, 2));
  if (a < S.a_lo) a = S.a_lo;
  if (a > S.a_hi) a = S.a_hi;
  Rat center = S.theta + make_rat(a, pow2(static_cast<unsigned long>(S.n)));
  Rat d = x - center;
  if (d < 0) d = -d;
  return d < S.radius;
}

Int count_oracle(int N, const RationalInterval& I, Endpoints which) {
  Int c = 0;
  for (const Rat& x : enumerate_endpoints(N, which))
    if (I.contains(x)) ++c;
  return c;
}

Int count_system_oracle(int N, const BallSystem& S, const RationalInterval& I,
                        Endpoints which) {
  Int c = 0;
  for (const Rat& x : enumerate_endpoints(N, which))
    if (I.contains(x) && in_system(S, x)) ++c;
  return c;
}

Rat random_unit_rat(std::uint64_t& st, unsigned long max_den) {
  unsigned long q = 1 + splitmix64_next(st) % max_den;
  unsigned long p = splitmix64_next(st) % (q + 1);
  return make_rat(Int(p), Int(q));
}

RationalInterval random_interval(std::uint64_t& st) {
  Rat a = random_unit_rat(st, 2000);
  Rat b = random_unit_rat(st, 2000);
  if (b < a) std::swap(a, b);
  RationalInterval I{a, b, (splitmix64_next(st) & 1) != 0, (splitmix64_next(st) & 1) != 0};
  return I;
}

}  // namespace

TEST_CASE("enumerate_endpoints on pinned examples") {
  std::vector<Rat> e = enumerate_endpoints(0, Endpoints::all);
  CHECK(e == std::vector<Rat>{Rat(0), Rat(1)});

  e = enumerate_endpoints(1, Endpoints::left);
  CHECK(e == std::vector<Rat>{Rat(0), make_rat(2, 3)});

  e = enumerate_endpoints(2, Endpoints::all);
  std::vector<Rat> want = {Rat(0),         make_rat(1, 9), make_rat(2, 9), make_rat(1, 3),
                           make_rat(2, 3), make_rat(7, 9), make_rat(8, 9), Rat(1)};
  CHECK(e == want);

  for (int N = 0; N <= 8; ++N) {
    CHECK(enumerate_endpoints(N, Endpoints::left).size() == (1u << N));
    CHECK(enumerate_endpoints(N, Endpoints::all).size() == (2u << N));
  }
  CHECK_THROWS_AS(enumerate_endpoints(17, Endpoints::all), budget_error);
  CHECK_THROWS_AS(enumerate_endpoints(-1, Endpoints::all), value_error);
}

TEST_CASE("count_endpoints_in_interval on pinned examples") {
  CHECK(count_endpoints_in_interval(2, RationalInterval::unit(), Endpoints::left) == 4);
  CHECK(count_endpoints_in_interval(2, RationalInterval::closed(Rat(0), make_rat(1, 3)),
                                    Endpoints::left) == 2);
  CHECK(count_endpoints_in_interval(1, RationalInterval::closed(make_rat(1, 2), Rat(1)),
                                    Endpoints::left) == 1);
}

TEST_CASE("interval counting equals enumeration on random intervals") {
  std::uint64_t st = 0xca4701;
  for (int i = 0; i < 120; ++i) {
    RationalInterval I = random_interval(st);
    for (int N : {0, 1, 2, 3, 5, 8, 10}) {
      for (Endpoints w : {Endpoints::left, Endpoints::right, Endpoints::all}) {
        CHECK(count_endpoints_in_interval(N, I, w) == count_oracle(N, I, w));
      }
    }
  }
}

TEST_CASE("count_endpoints_in_system on pinned examples") {
  // A_1 with radius 1/9 catches only the two outer endpoints of C_2
  BallSystem S = BallSystem::standard(1, make_rat(1, 9));
  CHECK(count_endpoints_in_system(2, S, RationalInterval::unit(), Endpoints::all) == 2);

  // interval strictly inside the central gap, disjoint from the ball system
  BallSystem tiny = BallSystem::standard(3, make_rat(1, 1000));
  RationalInterval gap = RationalInterval::closed(make_rat(17, 45), make_rat(19, 45));
  CHECK(count_endpoints_in_system(5, tiny, gap, Endpoints::all) == 0);

  // A_0 with radius 1/2: both balls, all four C_1 endpoints
  BallSystem half = BallSystem::standard(0, make_rat(1, 2));
  CHECK(count_endpoints_in_system(1, half, RationalInterval::unit(), Endpoints::all) == 4);
}

TEST_CASE("system counting equals enumeration on random systems") {
  std::uint64_t st = 0xca4702;
  for (int i = 0; i < 60; ++i) {
    int n = static_cast<int>(splitmix64_next(st) % 5);
    Rat r = random_unit_rat(st, 300);
    if (r == 0) r = make_rat(1, 300);
    BallSystem S = (splitmix64_next(st) & 1) ? BallSystem::standard(n, r)
                                             : BallSystem::lattice(n, r);
    if (splitmix64_next(st) & 1) S = S.translate(random_unit_rat(st, 64) - make_rat(1, 7));
    RationalInterval I = random_interval(st);
    for (int N : {0, 2, 4, 7, 10}) {
      for (Endpoints w : {Endpoints::left, Endpoints::right, Endpoints::all}) {
        CHECK(count_endpoints_in_system(N, S, I, w) == count_system_oracle(N, S, I, w));
      }
    }
  }
}

TEST_CASE("ball system merge semantics") {
  // strict overlap merges; touching balls stay separate
  CHECK(BallSystem::standard(2, make_rat(1, 7)).merged());      // 2/7 > 1/4
  CHECK_FALSE(BallSystem::standard(2, make_rat(1, 8)).merged());  // 2·(1/8) = 1/4 exactly
  CHECK_FALSE(BallSystem::standard(2, make_rat(1, 9)).merged());

  BallSystem S = BallSystem::standard(3, make_rat(1, 100));
  CHECK(S.ball_count() == 9);
  CHECK(BallSystem::lattice(3, make_rat(1, 100)).ball_count() == 8);
  CHECK(S.dilate(Rat(5)).radius == make_rat(5, 100));
  CHECK(S.translate(make_rat(1, 3)).theta == make_rat(1, 3));
  CHECK_THROWS_AS(count_endpoints_in_system(2, BallSystem::standard(3, Rat(-1)),
                                            RationalInterval::unit(), Endpoints::all),
                  value_error);
}

TEST_CASE("cantor_cdf on pinned examples") {
  CHECK(cantor_cdf(make_rat(1, 3)) == make_rat(1, 2));
  CHECK(cantor_cdf(make_rat(1, 4)) == make_rat(1, 3));
  CHECK(cantor_cdf(make_rat(1, 2)) == make_rat(1, 2));
  CHECK(cantor_cdf(make_rat(2, 9)) == make_rat(1, 4));
  CHECK(cantor_cdf(Rat(0)) == 0);
  CHECK(cantor_cdf(Rat(1)) == 1);
  CHECK(cantor_cdf(Rat(-5)) == 0);
  CHECK(cantor_cdf(Rat(2)) == 1);
  CHECK(cantor_cdf_frac(Int(2), Int(8)) == make_rat(1, 3));
}

TEST_CASE("cantor_cdf symmetry F(1-x) = 1 - F(x)") {
  std::uint64_t st = 0xca4703;
  for (int i = 0; i < 1000; ++i) {
    Rat x = random_unit_rat(st, 100000);
    CHECK(cantor_cdf(Rat(1 - x)) == 1 - cantor_cdf(x));
  }
}

TEST_CASE("measure on pinned examples") {
  for (int N : {0, 1, 2, 5, 10}) {
    RationalInterval B =
        RationalInterval::ball(Rat(0), make_rat(Int(1), Int(2 * pow3(N))));
    CHECK(measure_of_interval(B) ==
          make_rat(Int(1), pow2(static_cast<unsigned long>(N) + 1)));
  }
  CHECK(measure_of_interval(RationalInterval::ball(make_rat(1, 2), make_rat(1, 18))) == 0);
  CHECK(measure_of_interval(RationalInterval::unit()) == 1);

  // a system whose balls strictly overlap covers [0,1] entirely
  BallSystem cover = BallSystem::standard(3, make_rat(1, 8));
  CHECK(measure_of_system(cover, RationalInterval::unit()) == 1);
  // touching balls still capture full measure (the touch points are atoms of nothing)
  BallSystem touch = BallSystem::standard(4, make_rat(1, 32));
  CHECK(measure_of_system(touch, RationalInterval::unit()) == 1);
}

TEST_CASE("cdf sandwich around Cantor-centered intervals") {
  std::uint64_t st = 0xca4704;
  std::vector<Rat> pts = enumerate_endpoints(5, Endpoints::all);
  for (int i = 0; i < 40; ++i) {
    Rat z = pts[splitmix64_next(st) % pts.size()];
    Rat r = random_unit_rat(st, 200);
    if (r == 0) r = make_rat(1, 200);
    RationalInterval I = RationalInterval::ball(z, r);
    Rat mu = measure_of_interval(I);
    for (int L = 1; L <= 8; ++L) {
      if (!(make_rat(Int(3), pow3(L)) < r)) continue;  // need 3^(1-L) < radius
      Int inner = count_endpoints_in_interval(L, I.dilate(make_rat(1, 5)), Endpoints::all);
      Int outer = count_endpoints_in_interval(L, I.dilate(Rat(5)), Endpoints::all);
      CHECK(make_rat(inner, pow2(static_cast<unsigned long>(L) + 1)) <= mu);
      CHECK(mu <= make_rat(outer, pow2(static_cast<unsigned long>(L) - 1)));
    }
  }
}

TEST_CASE("measure of radius-3^-k balls at Cantor points is exactly 2^-k") {
  // at any point of the set, a ball of radius 3^-k contains exactly one
  // level-k cell and never reaches across a gap, so the regularity constants
  // at these radii are c1 = c2 = 1
  std::uint64_t st = 0xca4705;
  std::vector<Rat> pts = enumerate_endpoints(6, Endpoints::all);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    Rat z = pts[splitmix64_next(st) % pts.size()];
    int k = 1 + static_cast<int>(splitmix64_next(st) % 12);
    RationalInterval B = RationalInterval::ball(z, make_rat(Int(1), pow3(k)));
    Rat scaled = measure_of_interval(B) * pow2(k);
    CHECK(scaled == 1);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("distance to the Cantor set") {
  CHECK(dist_to_cantor(Rat(0)) == 0);
  CHECK(dist_to_cantor(Rat(1)) == 0);
  CHECK(dist_to_cantor(make_rat(1, 4)) == 0);
  CHECK(dist_to_cantor(make_rat(2, 9)) == 0);
  CHECK(dist_to_cantor(make_rat(1, 2)) == make_rat(1, 6));
  CHECK(dist_to_cantor(make_rat(5, 12)) == make_rat(1, 12));
  CHECK(dist_to_cantor(Rat(-1)) == 1);
}

TEST_CASE("separation level") {
  CHECK(separation_level(RationalInterval::unit()) == 0);
  CHECK(separation_level(RationalInterval::closed(make_rat(2, 5), make_rat(3, 5))) == 3);
  CHECK_THROWS_AS(separation_level(RationalInterval::closed(make_rat(1, 4), make_rat(2, 5))),
                  value_error);
}

TEST_CASE("ball budget guards") {
  BallSystem big = BallSystem::standard(30, make_rat(1, Int(pow2(40))));
  CHECK_THROWS_AS(count_endpoints_in_system(2, big, RationalInterval::unit(),
                                            Endpoints::all, 1000),
                  budget_error);
  CHECK_THROWS_AS(measure_of_system(big, RationalInterval::unit(), 1000), budget_error);
}
