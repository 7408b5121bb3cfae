#include "doctest.h"

#include <random>

#include "chaoslab/torus.hpp"

using namespace chaoslab;

namespace {

TorusPoint random_point(std::mt19937_64& rng, long max_den = 60) {
  std::uniform_int_distribution<long> den(1, max_den);
  long q = den(rng);
  std::uniform_int_distribution<long> num(-q, q);
  long r = den(rng);
  std::uniform_int_distribution<long> num2(-r, r);
  return TorusPoint(make_rat(num(rng), q), make_rat(num2(rng), r));
}

TorusPoint random_in_R(std::mt19937_64& rng, long k, long m) {
  for (;;) {
    TorusPoint p = random_point(rng);
    if (in_R(p, k, m)) return p;
  }
}

}  // namespace

TEST_CASE("torus points canonicalize into [-1/2, 1/2)") {
  TorusPoint p(Rat(3, 2), Rat(-7, 10));
  CHECK(p.x() == Rat(-1, 2));
  CHECK(p.y() == Rat(3, 10));
  CHECK(TorusPoint(p.x(), p.y()) == p);
  CHECK(parse_torus_point("(1/2, 1/3)") == TorusPoint(Rat(-1, 2), Rat(1, 3)));
  CHECK(to_string(TorusPoint(Rat(1, 4), Rat(-1, 3))) == "1/4, -1/3");
  CHECK(torus_dist(TorusPoint(Rat(-1, 2), 0), TorusPoint(Rat(2, 5), 0)) == Rat(1, 10));
  CHECK(torus_dist(TorusPoint(0, Rat(1, 4)), TorusPoint(Rat(1, 8), Rat(-1, 4))) == Rat(1, 2));
}

TEST_CASE("anosov family") {
  for (long k = 3; k <= 12; ++k)
    for (long m = 3; m <= 12; ++m) {
      AnosovMatrix A = AnosovMatrix::from_km(k, m);
      CHECK(A.det() == 1);
      CHECK(A.trace() == 2 + k * m);
    }
  CHECK_THROWS_AS(AnosovMatrix(2, 1, 1, 2), Error);
  CHECK_THROWS_AS(AnosovMatrix(1, 0, 0, 1), Error);
  CHECK_THROWS_AS(AnosovMatrix::from_km(2, 5), Error);
  CHECK_NOTHROW(AnosovMatrix(2, 1, 1, 1));
}

TEST_CASE("anosov_apply") {
  AnosovMatrix A = AnosovMatrix::from_km(3, 3);
  CHECK(anosov_apply(A, TorusPoint()) == TorusPoint());
  // (1/2 + 3/2, 3/2 + 10/2) = (2, 13/2) -> (0, 1/2) ~ (0, -1/2).
  CHECK(anosov_apply(A, TorusPoint(Rat(1, 2), Rat(1, 2))) == TorusPoint(0, Rat(-1, 2)));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    TorusPoint p = random_point(rng);
    CHECK(anosov_apply(A.inverse(), anosov_apply(A, p)) == p);
  }
}

TEST_CASE("annulus membership") {
  CHECK(in_P(TorusPoint(), 3));
  CHECK(in_Q(TorusPoint(), 3));
  CHECK(in_R(TorusPoint(), 3, 3));
  TorusPoint p(Rat(3, 10), Rat(1, 3));
  CHECK(in_P(p, 3));
  CHECK(in_Q(p, 3));  // 3/10 < 1/3
  CHECK_FALSE(in_Q(TorusPoint(Rat(2, 5), Rat(1, 3)), 3));
  CHECK_FALSE(in_P(TorusPoint(Rat(-1, 2), Rat(-1, 2)), 3));
  CHECK_FALSE(in_R(TorusPoint(Rat(9, 20), Rat(9, 20)), 3, 3));
}

TEST_CASE("twist maps") {
  const long k = 3, m = 3;
  CHECK(twist_f(TorusPoint(), k, m) == TorusPoint());
  CHECK(twist_f(TorusPoint(Rat(1, 4), Rat(1, 3)), k, m) == TorusPoint(Rat(1, 4), Rat(1, 3)));
  CHECK(twist_f(TorusPoint(0, Rat(1, 6)), k, m) == TorusPoint(Rat(-1, 2), Rat(1, 6)));
  CHECK(twist_h(TorusPoint(), k, m) == TorusPoint());
  CHECK(twist_h(TorusPoint(Rat(1, 3), Rat(1, 4)), k, m) == TorusPoint(Rat(1, 3), Rat(1, 4)));
  CHECK(twist_h(TorusPoint(Rat(1, 6), 0), k, m) == TorusPoint(Rat(1, 6), Rat(-1, 2)));
  CHECK_THROWS_AS(twist_f(TorusPoint(Rat(9, 20), Rat(9, 20)), k, m), Error);
  CHECK_THROWS_AS(twist_h(TorusPoint(Rat(9, 20), Rat(9, 20)), k, m), Error);
}

TEST_CASE("linked twist examples") {
  CHECK(linked_twist(TorusPoint(), 3, 3) == TorusPoint());
  CHECK(linked_twist(TorusPoint(Rat(2, 5), Rat(1, 3)), 3, 3) == TorusPoint(Rat(2, 5), Rat(1, 3)));
  CHECK(linked_twist(TorusPoint(Rat(3, 10), Rat(1, 3)), 3, 3) == TorusPoint(Rat(3, 10), Rat(7, 30)));
  // f: (1/6 + 1/2, 1/6) = (-1/3, 1/6); h: (-1/3, 1/6 - 1) = (-1/3, 1/6).
  CHECK(linked_twist(TorusPoint(Rat(1, 6), Rat(1, 6)), 3, 3) == TorusPoint(Rat(-1, 3), Rat(1, 6)));
  TorusPoint outside(Rat(9, 20), Rat(9, 20));
  CHECK(linked_twist(outside, 3, 3) == outside);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    const long k = 3 + t % 3, m = 3 + (t / 3) % 3;
    TorusPoint p = random_in_R(rng, k, m);
    TorusPoint g = linked_twist(p, k, m);
    CHECK(in_R(g, k, m));
    CHECK(linked_twist_inverse(g, k, m) == p);
  }
}

TEST_CASE("local linear radius is certified and maximal") {
  for (long k = 3; k <= 5; ++k)
    for (long m = 3; m <= 5; ++m) {
      const Rat r = local_linear_radius(k, m);
      CHECK(r == Rat(1, static_cast<unsigned long>(m * (k + 1))));
      AnosovMatrix A = AnosovMatrix::from_km(k, m);
      for (int i = -6; i <= 6; ++i)
        for (int j = -6; j <= 6; ++j) {
          TorusPoint p(r * i / 6, r * j / 6);
          CHECK(linked_twist(p, k, m) == anosov_apply(A, p));
        }
      const Rat beyond = r + Rat(1, 1000);
      TorusPoint corner(beyond, beyond);
      CHECK_FALSE(linked_twist(corner, k, m) == anosov_apply(A, corner));
    }
}

TEST_CASE("pillow quotient") {
  CHECK(pillow_project(TorusPoint(Rat(1, 4), Rat(1, 4))) ==
        pillow_project(TorusPoint(Rat(-1, 4), Rat(-1, 4))));
  CHECK(pillow_project(TorusPoint()).singular());
  CHECK(pillow_project(TorusPoint(Rat(-1, 2), Rat(-1, 2))).singular());
  CHECK(pillow_project(TorusPoint(Rat(-1, 2), 0)).singular());
  CHECK_FALSE(pillow_project(TorusPoint(Rat(1, 4), 0)).singular());
  PillowPoint q = pillow_project(TorusPoint(Rat(-1, 2), Rat(1, 3)));
  CHECK(q.lift() == TorusPoint(Rat(-1, 2), Rat(1, 3)));
  CHECK(q == pillow_project(TorusPoint(Rat(1, 2), Rat(-1, 3))));
  CHECK(pillow_project(TorusPoint(Rat(-1, 4), 0)).lift() == TorusPoint(Rat(1, 4), 0));
  CHECK(parse_pillow_point(to_string(q)) == q);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    TorusPoint p = random_point(rng);
    PillowPoint a = pillow_project(p);
    CHECK(a == pillow_project(-p));
    CHECK(PillowPoint(a.lift()) == a);
    CHECK(pillow_dist(a, pillow_project(-p)) == 0);
  }
}

TEST_CASE("disk map") {
  const long k = 3, m = 4;
  CHECK(disk_map(pillow_project(TorusPoint()), k, m) == pillow_project(TorusPoint()));
  CHECK_THROWS_AS(disk_map(pillow_project(TorusPoint(Rat(9, 20), Rat(9, 20))), k, m), Error);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    TorusPoint p = random_in_R(rng, k, m);
    PillowPoint q = pillow_project(p);
    CHECK(disk_map(q, k, m) == pillow_project(linked_twist(p, k, m)));
    CHECK(disk_map(q, k, m) == pillow_project(linked_twist(-p, k, m)));
    CHECK(disk_map_inverse(disk_map(q, k, m), k, m) == q);
  }
  // Class of a boundary point of R stays put.
  PillowPoint b = pillow_project(TorusPoint(Rat(2, 5), Rat(1, 3)));
  CHECK(disk_map(b, 3, 3) == b);
}
