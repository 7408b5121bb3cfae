#include "doctest.h"

#include "chaoslab/chaos_lab.hpp"
#include "chaoslab/systems.hpp"

using namespace chaoslab;

namespace {

std::shared_ptr<const ProductSystem> as_product(const SystemHandle& s) {
  auto p = std::dynamic_pointer_cast<const ProductSystem>(s);
  REQUIRE(p);
  return p;
}

SearchBudget small_budget() {
  SearchBudget b;
  b.word_len_max = 24;
  b.samples = 8;
  return b;
}

std::string claims_text(const WitnessReport& r) {
  std::string out;
  for (const auto& c : r.certificate)
    out += to_string(c.kind) + ' ' + to_string(c.word_a) + ' ' + to_string(c.a) + ' ' +
           to_string(c.b) + ' ' + to_string(c.observed) + '\n';
  return out;
}

}  // namespace

TEST_CASE("transitivity witness") {
  SystemHandle s2 = shift_system(2);
  Ball u{BiSeq::constant(2, 1), Rat(3, 4)};
  auto same = transitivity_witness(*s2, u, u, small_budget(), 1);
  CHECK(same.status == Status::found);
  CHECK(same.witness->is_identity());

  Ball v{BiSeq::constant(2, 2), Rat(3, 4)};
  auto r = transitivity_witness(*s2, u, v, small_budget(), 1);
  REQUIRE(r.status == Status::found);
  CHECK(recheck(*s2, r));
  // Manual construction oracle: a point agreeing with constant-1 near 0 and
  // all 2 far right, moved left by a large shift, lands in V.
  Point manual = BiSeq::periodic_tails(2, {1}, {1, 1, 1, 1, 1}, -2, {2});
  CHECK(s2->dist(s2->act(GroupWord::cyclic(1, {{1, 40}}), manual), v.center, Rat(1, 1024))
            .certainly_less(v.radius));

  // Small balls force the constructive fallback.
  Ball tiny_u{BiSeq::periodic(2, {1, 2}, 0), Rat(1, 64)};
  Ball tiny_v{BiSeq::periodic(2, {2, 2, 1}, 0), Rat(1, 64)};
  auto tiny = transitivity_witness(*s2, tiny_u, tiny_v, small_budget(), 3);
  REQUIRE(tiny.status == Status::found);
  CHECK(recheck(*s2, tiny));

  SystemHandle an = anosov_system(AnosovMatrix::from_km(3, 3));
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    Ball a{an->sample_point(rng), Rat(1, 10)};
    Ball b{an->sample_point(rng), Rat(1, 10)};
    auto w = transitivity_witness(*an, a, b, small_budget(), derive_seed(9, t));
    REQUIRE(w.status == Status::found);
    CHECK(w.witness->length() <= 24);
    CHECK(recheck(*an, w));
  }

  // Identity action: only balls that already meet are connected.
  SystemHandle id = identity_system(shift_system(2));
  CHECK(transitivity_witness(*id, Ball{BiSeq::constant(2, 1), Rat(1, 4)},
                             Ball{BiSeq::constant(2, 2), Rat(1, 4)}, small_budget(), 1)
            .status == Status::exhausted);
}

TEST_CASE("product transitivity witness") {
  CHECK(product_transitivity_witness({GroupWord(1), GroupWord(1)}).is_identity());
  GroupWord w = product_transitivity_witness(
      {GroupWord::cyclic(1, {{1, 3}}), GroupWord::cyclic(1, {{1, 5}})});
  CHECK(w == GroupWord::cyclic(2, {{1, 3}, {2, 5}}));
  CHECK(product_transitivity_witness({GroupWord::cyclic(1, {{1, -2}})}, 3) ==
        GroupWord::cyclic(3, {{1, -2}}));
  CHECK_THROWS_AS(product_transitivity_witness({GroupWord(2)}), Error);
  CHECK_THROWS_AS(product_transitivity_witness({GroupWord(1), GroupWord(1)}, 1), Error);

  auto prod = as_product(make_system("product(shift(2),shift(3))"));
  Ball u{prod->make_point({{1, BiSeq::constant(2, 1)}, {2, BiSeq::periodic(3, {1, 3}, 0)}}),
         Rat(1, 8)};
  Ball v{prod->make_point({{1, BiSeq::constant(2, 2)}, {2, BiSeq::constant(3, 2)}}), Rat(1, 8)};
  auto r = transitivity_witness(*prod, u, v, small_budget(), 4);
  REQUIRE(r.status == Status::found);
  CHECK(recheck(*prod, r));
  CHECK(r.witness->factors().size() == 2);

  // A product witness projects to factor witnesses.
  const Point& pu = r.points.front();
  for (std::size_t i = 1; i <= 2; ++i) {
    const auto& f = *prod->factor(i);
    Point ui = prod->coordinate(pu.as<ProductCoords>(), i);
    Point vi = prod->coordinate(v.center.as<ProductCoords>(), i);
    Point moved = f.act(GroupWord::single(1, 1, r.witness->factor(i)), ui);
    CHECK(f.dist(moved, vi, Rat(1, 1 << 20)).certainly_less(tilde_inverse(v.radius)));
  }
}

TEST_CASE("closed orbit density") {
  SystemHandle s2 = shift_system(2);
  auto r = closed_orbit_density(*s2, Rat(1, 8), 40, small_budget(), 7);
  CHECK(r.status == Status::certified_bound);
  CHECK(r.successes == 40);
  CHECK(recheck(*s2, r));

  SystemHandle an = anosov_system(AnosovMatrix::from_km(3, 5));
  auto ra = closed_orbit_density(*an, Rat(1, 10), 40, small_budget(), 7);
  CHECK(ra.status == Status::certified_bound);
  // Nearest-lattice oracle: denominators divide q = 6 (first q with 1/(2q) < 1/10).
  for (const auto& c : ra.certificate)
    if (c.kind == Claim::Kind::less) {
      const auto& y = c.a.as<TorusPoint>();
      CHECK(6 % y.x().get_den() == 0);
      CHECK(6 % y.y().get_den() == 0);
    }

  SystemHandle prod = make_system("product(shift(2),shift(2))");
  auto rp = closed_orbit_density(*prod, Rat(1, 4), 20, small_budget(), 7);
  CHECK(rp.status == Status::certified_bound);
  CHECK(recheck(*prod, rp));

  CHECK_THROWS_AS(closed_orbit_density(*make_system("affine(2,2)"), Rat(1, 8), 5, small_budget(), 1),
                  Error);
}

TEST_CASE("product periodic points") {
  auto prod = as_product(make_system("product(shift(2),shift(3))"));
  Point fixed = product_periodic_point(*prod, {});
  CHECK(is_finite_orbit(*prod, fixed, 10).points.size() == 1);

  BiSeq p7 = BiSeq::periodic(2, {1, 2, 2, 1, 2, 1, 1}, 0);
  auto one = is_finite_orbit(*prod, product_periodic_point(*prod, {{1, p7}}), 1000);
  REQUIRE(one.status == Status::found);
  CHECK(one.points.size() == 7);

  BiSeq p2 = BiSeq::periodic(2, {1, 2}, 0);
  BiSeq p3 = BiSeq::periodic(3, {1, 3, 3}, 0);
  auto two = is_finite_orbit(*prod, product_periodic_point(*prod, {{1, p2}, {2, p3}}), 1000);
  REQUIRE(two.status == Status::found);
  CHECK(two.points.size() == 6);

  auto no_fixed = as_product(make_system("product(shift(2),translation(1))"));
  CHECK_THROWS_AS(product_periodic_point(*no_fixed, {}), Error);

  auto cyc = as_product(make_system("cycle(shift(2),anosov(3,3))"));
  Point z = product_periodic_point(*cyc, {{5, BiSeq::periodic(2, {1, 1, 2}, 0)},
                                          {2, TorusPoint(Rat(1, 2), Rat(1, 2))}});
  auto rc = is_finite_orbit(*cyc, z, 10000);
  REQUIRE(rc.status == Status::found);
  CHECK(rc.points.size() == 9);
}

TEST_CASE("sensitivity") {
  CHECK(lift_sensitivity_constant(1, Rat(1, 2)) == Rat(1, 8));
  CHECK(lift_sensitivity_constant(3, Rat(1, 2)) == Rat(1, 32));
  for (int n = 1; n < 10; ++n)
    CHECK(lift_sensitivity_constant(n + 1, Rat(1, 3)) < lift_sensitivity_constant(n, Rat(1, 3)));

  SystemHandle s2 = shift_system(2);
  auto r = sensitivity_lower_bound(*s2, Rat(1, 2), {Rat(1, 8), Rat(1, 32)}, 30, small_budget(), 3);
  CHECK(r.status == Status::certified_bound);
  CHECK(recheck(*s2, r));

  SystemHandle tr = translation_system(2);
  auto ri = sensitivity_lower_bound(*tr, Rat(1, 8), {Rat(1, 64)}, 10, small_budget(), 3);
  CHECK(ri.status == Status::exhausted);

  auto prod = as_product(make_system("product(shift(2),translation(1))"));
  REQUIRE(prod->sensitivity_constant());
  CHECK(*prod->sensitivity_constant() == Rat(1, 8));
  auto rp = sensitivity_lower_bound(*prod, Rat(1, 8), {Rat(1, 16)}, 30, small_budget(), 3);
  CHECK(rp.status == Status::certified_bound);
  CHECK(rp.budget_used["lifted"] == 30);
  CHECK(recheck(*prod, rp));

  auto par = sensitivity_lower_bound(*prod, Rat(1, 8), {Rat(1, 16)}, 30, small_budget(), 3, 4);
  CHECK(claims_text(par) == claims_text(rp));
  CHECK(par.budget_used == rp.budget_used);
}

TEST_CASE("equicontinuity candidates") {
  SystemHandle tr = translation_system(1);
  for (int n = 1; n <= 3; ++n) CHECK(equicontinuity_candidates(*tr, n, 6, 10, 2).size() == 10);
  CHECK(equicontinuity_candidates(*shift_system(2), 3, 24, 10, 2).empty());
  CHECK(equicontinuity_candidates(*identity_system(anosov_system(AnosovMatrix::from_km(3, 3))), 2, 4,
                                  10, 2)
            .size() == 10);
}

TEST_CASE("dense orbit check") {
  SystemHandle s3 = shift_system(3);
  auto r = dense_orbit_check(*s3, Rat(1, 8), 20, small_budget(), 5);
  CHECK(r.property == "dense_orbit");
  CHECK(r.status == Status::found);
  CHECK(recheck(*s3, r));

  SystemHandle affine = affine_example_system(2, Rat(2));
  CHECK(affine->act(parse_group_word("{1:g0^2}", 1), affine->base_point()) ==
        Point(AffinePoint{{Rat(2), Rat(0)}}));
  CHECK(affine->act(parse_group_word("{1:g2^1}", 1), AffinePoint{{Rat(1), Rat(0)}}) ==
        Point(AffinePoint{{Rat(2), Rat(0)}}));
  SearchBudget b = small_budget();
  b.word_len_max = 8;
  auto ra = dense_orbit_check(*affine, Rat(1, 2), 10, b, 5);
  CHECK(ra.status == Status::found);
  CHECK(recheck(*affine, ra));

  auto rid = dense_orbit_check(*identity_system(shift_system(2)), Rat(1, 8), 5, small_budget(), 5);
  CHECK(rid.status == Status::exhausted);
}

TEST_CASE("chaos check") {
  auto s2 = chaos_check(*shift_system(2), Rat(1, 8), 20, small_budget(), 11);
  CHECK(s2.pass);
  CHECK(s2.dense.status == Status::found);
  CHECK(s2.closed.status == Status::certified_bound);
  CHECK(s2.sensitivity.status == Status::certified_bound);

  auto id = chaos_check(*identity_system(shift_system(2)), Rat(1, 8), 10, small_budget(), 11);
  CHECK_FALSE(id.pass);
  CHECK(id.dense.status == Status::exhausted);

  auto prod = chaos_check(*make_system("product(shift(2),shift(3))"), Rat(1, 8), 10, small_budget(), 11);
  CHECK(prod.pass);
  REQUIRE(prod.factors_consistent);
  CHECK(*prod.factors_consistent);
  CHECK(prod.factors.size() == 2);

  auto mixed = chaos_check(*make_system("product(shift(2),identity(shift(2)))"), Rat(1, 8), 10,
                           small_budget(), 11);
  CHECK_FALSE(mixed.pass);
  REQUIRE(mixed.factors_consistent);
  CHECK(*mixed.factors_consistent);
}
