#include "doctest.h"

#include <cmath>
#include <random>

#include "chaoslab/symbolic_shift.hpp"

using namespace chaoslab;

namespace {

BiSeq random_seq(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> sym(1, n);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<int> clen(0, 8);
  std::uniform_int_distribution<int> off(-6, 6);
  auto word = [&](int l) {
    Word w(static_cast<std::size_t>(l));
    for (auto& s : w) s = sym(rng);
    return w;
  };
  return BiSeq::periodic_tails(n, word(len(rng)), word(clen(rng)), off(rng), word(len(rng)));
}

// Independent partial sum of the series over |i| <= r.
Rat brute_rho(const BiSeq& s, const BiSeq& t, int r) {
  Rat sum = 0;
  for (int i = -r; i <= r; ++i)
    if (s.at(i) != t.at(i)) sum += pow2(-(i < 0 ? -i : i)) / 2;
  return sum;
}

}  // namespace

TEST_CASE("symbol_at examples") {
  CHECK(symbol_at(BiSeq::constant(2, 1), -1000) == 1);
  BiSeq p = BiSeq::periodic(2, {1, 2}, 0);
  CHECK(symbol_at(p, 0) == 1);
  CHECK(symbol_at(p, 3) == 2);
  BiSeq c = BiSeq::periodic_tails(2, {1}, {2}, 0, {1});
  CHECK(symbol_at(c, 0) == 2);
  CHECK(symbol_at(c, 1) == 1);
}

TEST_CASE("canonical form decides equality") {
  BiSeq a = BiSeq::periodic_tails(2, {1, 1}, {1, 2}, 3, {1, 2, 1, 2});
  BiSeq b = BiSeq::periodic_tails(2, {1}, {1, 1, 2}, 2, {1, 2});
  for (int i = -20; i <= 20; ++i) REQUIRE(a.at(i) == b.at(i));
  CHECK(a == b);
  CHECK(BiSeq::periodic(2, {1, 2, 1, 2}, 0) == BiSeq::periodic(2, {1, 2}, 2));
  CHECK(BiSeq::periodic_tails(3, {2}, {2, 2}, 7, {2}) == BiSeq::constant(3, 2));
  CHECK_THROWS_AS(BiSeq::periodic_tails(2, {}, {}, 0, {1}), Error);
  CHECK_THROWS_AS(BiSeq::periodic_tails(2, {3}, {}, 0, {1}), Error);
}

TEST_CASE("shift examples") {
  CHECK(shift(BiSeq::constant(2, 1), 5) == BiSeq::constant(2, 1));
  BiSeq c = BiSeq::periodic_tails(2, {1}, {2}, 0, {1});
  BiSeq moved = shift(c, 1);
  CHECK(moved.center_word() == Word{2});
  CHECK(moved.offset() == -1);
  BiSeq p7 = BiSeq::periodic(3, {1, 2, 3, 1, 1, 2, 2}, 0);
  BiSeq back = shift(p7, 7);
  for (int i = -20; i <= 20; ++i) CHECK(back.at(i) == p7.at(i));
  CHECK(back == p7);
}

TEST_CASE("shift laws on random sequences") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    BiSeq s = random_seq(rng, 3);
    CHECK(shift(s, 0) == s);
    CHECK(shift(shift(s, 3), -5) == shift(s, -2));
    BiSeq k = shift(s, 4);
    for (int i = -10; i <= 10; ++i) REQUIRE(k.at(i) == s.at(i + 4));
  }
}

TEST_CASE("rho examples") {
  BiSeq one = BiSeq::constant(2, 1);
  CHECK(rho(one, one, Rat(1, 1024)) == ExactDist::exact(Rat(0)));
  BiSeq at0 = BiSeq::periodic_tails(2, {1}, {2}, 0, {1});
  CHECK(rho(one, at0, Rat(1, 1024)) == ExactDist::exact(Rat(1, 2)));
  CHECK(rho(one, BiSeq::constant(2, 2), Rat(1, 1024)) == ExactDist::exact(Rat(3, 2)));
  CHECK_THROWS_AS(rho(one, BiSeq::constant(3, 1), Rat(1, 4)), Error);
  CHECK_THROWS_AS(rho(one, one, Rat(0)), Error);
}

TEST_CASE("rho matches the brute-force series") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    BiSeq s = random_seq(rng, 2 + t % 3);
    BiSeq u = random_seq(rng, 2 + t % 3);
    ExactDist d = rho(s, u, pow2(-60));
    REQUIRE(d.is_exact());
    Rat diff = d.value() - brute_rho(s, u, 60);
    CHECK(abs(diff) <= pow2(-60));
    CHECK(d.value() == rho(u, s, pow2(-60)).value());
    CHECK(d.value() <= Rat(3, 2));
    CHECK((sgn(d.value()) == 0) == (s == u));
    CHECK(rho_window(s, u, 30) == brute_rho(s, u, 30));
  }
}

TEST_CASE("rho with the dense point is an enclosure") {
  BiSeq seed = dense_orbit_seed(2);
  BiSeq one = BiSeq::constant(2, 1);
  ExactDist d = rho(seed, one, pow2(-20));
  CHECK_FALSE(d.is_exact());
  CHECK(d.width() <= pow2(-20));
  Rat truth_lo = brute_rho(seed, one, 40);
  CHECK(d.lo() <= truth_lo + pow2(-40));
  CHECK(d.hi() >= truth_lo);
}

TEST_CASE("periodic_point_near") {
  CHECK(periodic_window_radius(Rat(1, 4)) == 3);
  CHECK(periodic_window_radius(Rat(1, 16)) == 5);
  CHECK(periodic_point_near(BiSeq::constant(2, 1), Rat(1, 4)) == BiSeq::constant(2, 1));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    BiSeq s = random_seq(rng, 3);
    BiSeq tau = periodic_point_near(s, Rat(1, 4));
    CHECK(shift(tau, 7) == tau);
    ExactDist d = rho(s, tau, Rat(1, 1024));
    REQUIRE(d.is_exact());
    CHECK(d.value() <= Rat(1, 8));
    BiSeq fine = periodic_point_near(s, Rat(1, 8));
    for (int i = -3; i <= 3; ++i) CHECK(fine.at(i) == tau.at(i));
  }
}

TEST_CASE("dense orbit seed") {
  BiSeq seed = dense_orbit_seed(2);
  CHECK_FALSE(seed.eventually_periodic());
  // 1 2 11 12 21 22 111 ...
  const Word head{1, 2, 1, 1, 1, 2, 2, 1, 2, 2, 1, 1, 1};
  for (std::size_t i = 0; i < head.size(); ++i) CHECK(seed.at(static_cast<std::int64_t>(i)) == head[i]);
  CHECK(seed.at(-5) == 1);
  // "11" first appears at index 2.
  BiSeq k = shift(seed, 2);
  CHECK(k.at(0) == 1);
  CHECK(k.at(1) == 1);
  // "212" as its own entry: length-3 block starts at 2 + 8 = 10, rank 5.
  auto pos = dense_word_position(2, {2, 1, 2});
  REQUIRE(pos);
  CHECK(*pos == 25);
  CHECK(seed.at(25) == 2);
  CHECK(seed.at(26) == 1);
  CHECK(seed.at(27) == 2);
  CHECK(shift(seed, 3).dense_shift() == 3);
}

TEST_CASE("cantor encoding") {
  CHECK(cantor_encode(BiSeq::constant(2, 1), 10) == 0);
  CHECK(cantor_encode(BiSeq::constant(2, 2), 3) == Rat(26, 27));
  BiSeq s = BiSeq::periodic_tails(2, {1}, {2}, 0, {1});
  CHECK(cantor_encode(s, 2) == Rat(2, 3));
  CHECK(cantor_fold_index(1) == 0);
  CHECK(cantor_fold_index(2) == 1);
  CHECK(cantor_fold_index(3) == -1);
  CHECK(cantor_fold_index(4) == 2);

  std::mt19937_64 rng(5);
  for (int n : {2, 3}) {
    const int arity = 2 * n - 1;
    const int digits = 4;
    auto kept = cantor_stage_intervals(arity, digits);
    CHECK(kept.size() == static_cast<std::size_t>(std::pow(n, digits)));
    for (int t = 0; t < 50; ++t) {
      BiSeq x = random_seq(rng, n);
      Rat v = cantor_encode(x, digits);
      CHECK(v >= 0);
      CHECK(v <= 1);
      bool inside = false;
      for (const auto& [lo, hi] : kept) inside = inside || (lo <= v && v <= hi);
      CHECK(inside);
      Rat finer = cantor_encode(x, digits + 3);
      CHECK(finer - v >= 0);
      CHECK(finer - v < Rat(1, static_cast<unsigned long>(std::pow(arity, digits))));
    }
  }
}

TEST_CASE("text form round trip") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    BiSeq s = random_seq(rng, 4);
    CHECK(parse_biseq(to_string(s)) == s);
  }
  BiSeq seed = shift(dense_orbit_seed(3), 4);
  CHECK(to_string(seed) == "3 | 1 | @ -4 | *");
  CHECK(parse_biseq(to_string(seed)) == seed);
  CHECK(to_string(BiSeq::periodic_tails(2, {1}, {2}, 0, {1})) == "2 | 1 | 2 @ 0 | 1");
  CHECK_THROWS_AS(parse_biseq("2 | 1 | 2"), Error);
}
