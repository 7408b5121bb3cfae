#include "doctest.h"

#include <cstdlib>
#include <random>
#include <set>

#include "chaoslab/group_action.hpp"
#include "chaoslab/systems.hpp"

using namespace chaoslab;

namespace {

GroupWord cyc(std::size_t rank, std::initializer_list<std::pair<std::size_t, std::int64_t>> e) {
  return GroupWord::cyclic(rank, e);
}

std::size_t direct_period(const AnosovMatrix& A, const TorusPoint& p) {
  TorusPoint q = anosov_apply(A, p);
  std::size_t n = 1;
  while (!(q == p)) {
    q = anosov_apply(A, q);
    ++n;
  }
  return n;
}

// Rotation-free toy system whose equality is only up to tolerance.
class FuzzySystem final : public BaseSystem {
public:
  std::string name() const override { return "fuzzy"; }
  std::vector<std::string> generator_names(std::size_t) const override { return {"g"}; }
  Point apply(std::uint32_t, std::int64_t, const Point& x) const override { return x; }
  ExactDist dist(const Point& a, const Point& b, const Rat&) const override {
    return ExactDist::exact(torus_dist(a.as<TorusPoint>(), b.as<TorusPoint>()));
  }
  Point sample_ball(const Point& c, const Rat&, Rng&) const override { return c; }
  Point sample_point(Rng&) const override { return TorusPoint(); }
  Point parse_point(std::string_view t) const override { return parse_torus_point(t); }
  Point base_point() const override { return TorusPoint(); }
  bool exact_equality() const override { return false; }
  std::vector<double> render(const Point&) const override { return {}; }
};

}  // namespace

TEST_CASE("compose examples") {
  GroupWord v = cyc(3, {{2, -1}, {3, 4}});
  CHECK(compose(GroupWord(3), v) == v);
  CHECK(compose(cyc(1, {{1, 3}}), cyc(1, {{1, -1}})) == cyc(1, {{1, 2}}));
  CHECK(compose(cyc(3, {{1, 1}, {2, 1}}), v) == cyc(3, {{1, 1}, {3, 4}}));
  CHECK_THROWS_AS(compose(GroupWord(1), GroupWord(2)), Error);
}

TEST_CASE("group laws on random words") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> gen(0, 2), pw(-3, 3), len(0, 5);
  auto random_word = [&] {
    GroupWord w(3);
    for (std::size_t f = 1; f <= 3; ++f) {
      FreeWord fw;
      for (int i = len(rng); i > 0; --i) fw = fw * FreeWord::power(static_cast<std::uint32_t>(gen(rng)), pw(rng));
      w = w.with_factor(f, fw);
    }
    return w;
  };
  for (int t = 0; t < 300; ++t) {
    GroupWord a = random_word(), b = random_word(), c = random_word();
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(compose(inverse(a), a).is_identity());
    CHECK(compose(a, GroupWord(3)) == a);
    for (const auto& [i, fw] : a.factors()) {
      const auto& syl = fw.syllables();
      for (std::size_t j = 0; j < syl.size(); ++j) {
        CHECK(syl[j].power != 0);
        if (j) CHECK(syl[j].generator != syl[j - 1].generator);
      }
    }
    CHECK(parse_group_word(to_string(a), 3) == a);
  }
}

TEST_CASE("birkhoff witness") {
  GroupWord u = cyc(2, {{1, 4}});
  CHECK(birkhoff_witness(u, u).is_identity());
  CHECK(birkhoff_witness(cyc(1, {{1, 3}}), cyc(1, {{1, 5}})) == cyc(1, {{1, 2}}));
  CHECK(birkhoff_witness(cyc(2, {{1, 1}, {2, -2}}), cyc(2, {{2, 1}})) == cyc(2, {{1, -1}, {2, 3}}));
  CHECK_THROWS_AS(birkhoff_witness(GroupWord(1), GroupWord(2)), Error);
}

TEST_CASE("group word text form") {
  CHECK(to_string(cyc(2, {{1, 3}, {2, -1}})) == "{1:+3, 2:-1}");
  CHECK(parse_group_word("{1:+3, 2:-1}", 2) == cyc(2, {{1, 3}, {2, -1}}));
  GroupWord free = GroupWord::single(1, 1, FreeWord::power(0, 2) * FreeWord::power(1, -1));
  CHECK(to_string(free) == "{1:g0^2.g1^-1}");
  CHECK(parse_group_word("{1:g0^2.g1^-1}", 1) == free);
  CHECK(parse_group_word("{}", 4).is_identity());
  CHECK_THROWS_AS(parse_group_word("{3:+1}", 2), Error);
  CHECK_THROWS_AS(parse_group_word("1:+1", 2), Error);
}

TEST_CASE("product system acts coordinatewise") {
  SystemHandle s2 = shift_system(2);
  CHECK(product_system({s2}) == s2);
  auto prod = std::dynamic_pointer_cast<const ProductSystem>(product_system({s2, shift_system(2)}));
  REQUIRE(prod);
  BiSeq sigma = BiSeq::periodic_tails(2, {1}, {2, 1, 2}, -1, {2});
  BiSeq tau = BiSeq::periodic(2, {1, 2}, 0);
  Point x = prod->make_point({{1, sigma}, {2, tau}});
  Point y = prod->act(cyc(2, {{1, 1}}), x);
  CHECK(y == Point(prod->make_point({{1, shift(sigma, 1)}, {2, tau}})));
  CHECK(prod->act(GroupWord(2), x) == x);
  CHECK_THROWS_AS(prod->act(cyc(3, {{3, 1}}), x), Error);
  CHECK_THROWS_AS(s2->act(cyc(2, {{1, 1}}), BiSeq::constant(2, 1)), Error);
  CHECK(prod->parse_point(to_string(x)) == x);
}

TEST_CASE("action axioms on every system kind") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> pw(-4, 4);
  for (const char* spec : {"shift(3)", "anosov(3,4)", "anosov(2,1,1,1)", "linked_twist(3,5)",
                           "disk(4,3)", "affine(2,2)", "translation(1)", "identity(shift(2))",
                           "product(shift(2),anosov(3,3),disk(3,3))",
                           "cycle(shift(2),anosov(3,3))"}) {
    CAPTURE(spec);
    SystemHandle sys = make_system(spec);
    auto random_word = [&] {
      GroupWord w(sys->rank());
      const std::size_t factors = sys->rank() == 1 ? 1 : 3;
      for (std::size_t f = 1; f <= factors; ++f) {
        const auto gens = sys->generator_names(f);
        FreeWord fw;
        for (std::uint32_t g = 0; g < gens.size(); ++g) fw = fw * FreeWord::power(g, pw(rng));
        w = w.with_factor(f, fw);
      }
      return w;
    };
    for (int t = 0; t < 20; ++t) {
      Point x = sys->sample_point(rng);
      GroupWord u = random_word(), v = random_word();
      CHECK(sys->act(GroupWord(sys->rank()), x) == x);
      CHECK(sys->act(compose(u, v), x) == sys->act(u, sys->act(v, x)));
      CHECK(sys->parse_point(to_string(x)) == x);
      Point b = sys->sample_ball(x, Rat(1, 10), rng);
      CHECK(sys->dist(x, b, Rat(1, 1 << 20)).certainly_less(Rat(1, 10)));
    }
  }
}

TEST_CASE("orbit_ball") {
  SystemHandle s2 = shift_system(2);
  Point one = BiSeq::constant(2, 1);
  auto ball0 = orbit_ball(*s2, one, 0, Rat(1, 100));
  REQUIRE(ball0.size() == 1);
  CHECK(ball0[0].point == one);
  CHECK(orbit_ball(*s2, one, 5, Rat(1, 100)).size() == 1);

  SystemHandle an = anosov_system(AnosovMatrix::from_km(3, 3));
  Point half = TorusPoint(Rat(1, 2), Rat(1, 2));
  auto ball = orbit_ball(*an, half, 8, Rat(1, 100));
  // Direct iteration: (-1/2,-1/2) -> (0,-1/2) -> (-1/2,0) -> back.
  std::set<std::string> expected{"-1/2, -1/2", "0, -1/2", "-1/2, 0"};
  std::set<std::string> got;
  for (const auto& e : ball) got.insert(to_string(e.point));
  CHECK(got == expected);
  for (const auto& e : ball) {
    CHECK(an->act(e.word, half) == e.point);
    CHECK(got.count(to_string(an->act(GroupWord::cyclic(1, {{1, 1}}), e.point))) == 1);
  }

  // Shortest words first, then letter order (+ before -).
  Point p = BiSeq::periodic(2, {1, 2, 2}, 0);
  auto words = orbit_ball(*s2, p, 3, Rat(1, 100));
  REQUIRE(words.size() == 3);
  CHECK(words[1].word == GroupWord::cyclic(1, {{1, 1}}));
  CHECK(words[2].word == GroupWord::cyclic(1, {{1, -1}}));

  CHECK_THROWS_AS(orbit_ball(*s2, Point(BiSeq::periodic_tails(2, {1}, {2}, 0, {1})), 50, Rat(1, 100), 10),
                  Error);
  FuzzySystem fuzzy;
  CHECK(orbit_ball(fuzzy, TorusPoint(), 3, Rat(1, 10)).size() == 1);
}

TEST_CASE("is_finite_orbit") {
  SystemHandle s2 = shift_system(2);
  auto fixed = is_finite_orbit(*s2, BiSeq::constant(2, 1), 10);
  CHECK(fixed.status == Status::found);
  CHECK(fixed.points.size() == 1);

  AnosovMatrix A = AnosovMatrix::from_km(3, 4);
  SystemHandle an = anosov_system(A);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> den(1, 50);
  for (int t = 0; t < 40; ++t) {
    long q = den(rng);
    std::uniform_int_distribution<long> num(0, q - 1);
    TorusPoint p(make_rat(num(rng), q), make_rat(num(rng), q));
    auto r = is_finite_orbit(*an, p, 100000);
    REQUIRE(r.status == Status::found);
    CHECK(r.points.size() == direct_period(A, p));
    CHECK(recheck(*an, r));
  }

  auto dense = is_finite_orbit(*s2, dense_orbit_seed(2), 50);
  CHECK(dense.status == Status::exhausted);
  FuzzySystem fuzzy;
  CHECK_THROWS_AS(is_finite_orbit(fuzzy, TorusPoint(), 10), Error);
}

TEST_CASE("product orbits are products of factor orbits") {
  AnosovMatrix A = AnosovMatrix::from_km(3, 3);
  AnosovMatrix B = AnosovMatrix::from_km(4, 3);
  auto prod = std::dynamic_pointer_cast<const ProductSystem>(
      product_system({anosov_system(A), anosov_system(B), shift_system(2)}));
  TorusPoint a(Rat(1, 5), Rat(2, 5)), b(Rat(1, 7), Rat(3, 7));
  BiSeq c = BiSeq::periodic(2, {1, 1, 2, 1, 2}, 0);
  Point x = prod->make_point({{1, a}, {2, b}, {3, c}});
  auto r = is_finite_orbit(*prod, x, 1000000);
  REQUIRE(r.status == Status::found);
  CHECK(r.points.size() == direct_period(A, a) * direct_period(B, b) * 5);
  auto ball = orbit_ball(*prod, x, 200, Rat(1, 100));
  CHECK(ball.size() == r.points.size());
}
