#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "loopspace/homology.hpp"
#include "loopspace/space_expr.hpp"
#include "oracles.hpp"

using namespace loopspace;

namespace {

const CoefficientRing kRings[] = {
    CoefficientRing::integers(),        CoefficientRing::rationals(),
    CoefficientRing::prime_field(2),    CoefficientRing::prime_field(3),
    CoefficientRing::prime_field(5),    CoefficientRing::localized_integers({2, 3}),
};

/* Random expression, biased toward supported shapes; depth-limited. */
SpaceExpr random_expr(std::mt19937& rng, int depth) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  if (depth == 0) {
    switch (pick(0, 3)) {
      case 0:
        return SpaceExpr::point();
      case 1:
        return SpaceExpr::sphere(pick(2, 6));
      case 2:
        return SpaceExpr::moore(pick(3, 6), pick(-12, 12));
      default:
        return SpaceExpr::moore_group(
            pick(3, 6), {PrimePower{std::vector<long long>{2, 3, 5}[pick(0, 2)],
                         pick(1, 2)}});
    }
  }
  switch (pick(0, 6)) {
    case 0: {
      std::vector<SpaceExpr> kids;
      int count = pick(1, 3);
      for (int i = 0; i < count; ++i)
        kids.push_back(random_expr(rng, depth - 1));
      return SpaceExpr::wedge(std::move(kids));
    }
    case 1:
      return SpaceExpr::product(random_expr(rng, depth - 1),
                                random_expr(rng, depth - 1));
    case 2:
      return SpaceExpr::smash(random_expr(rng, depth - 1),
                              random_expr(rng, depth - 1));
    case 3:
      return SpaceExpr::half_smash(random_expr(rng, depth - 1),
                                   random_expr(rng, depth - 1));
    case 4:
      return SpaceExpr::susp(random_expr(rng, depth - 1));
    case 5:
      return SpaceExpr::loop(random_expr(rng, depth - 1));
    default:
      return random_expr(rng, 0);
  }
}

}  // namespace

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(SpaceExpr::sphere(1), validation_error);
  CHECK_THROWS_AS(SpaceExpr::moore(2, 3), validation_error);
  CHECK_THROWS_AS(SpaceExpr::moore_group(3, {PrimePower{4, 1}}),
                  validation_error);
  CHECK_THROWS_AS(SpaceExpr::moore_group(3, {PrimePower{2, 0}}),
                  validation_error);
}

TEST_CASE("space JSON round-trip") {
  SpaceExpr exprs[] = {
      SpaceExpr::point(),
      SpaceExpr::sphere(4),
      SpaceExpr::moore(5, -6),
      SpaceExpr::moore_group(4, {PrimePower{2, 2}, PrimePower{3, 1}}),
      SpaceExpr::wedge({SpaceExpr::sphere(2), SpaceExpr::sphere(3)}),
      SpaceExpr::product(SpaceExpr::sphere(3), SpaceExpr::sphere(4)),
      SpaceExpr::smash(SpaceExpr::sphere(2), SpaceExpr::moore(3, 2)),
      SpaceExpr::half_smash(SpaceExpr::moore(4, 3),
                            SpaceExpr::loop(SpaceExpr::sphere(3))),
      SpaceExpr::susp(SpaceExpr::sphere(2)),
  };
  for (const auto& e : exprs) CHECK(space_from_json(to_json(e)) == e);

  CHECK(space_from_json(json("point")) == SpaceExpr::point());
  CHECK_THROWS_AS(space_from_json(json("circle")), validation_error);
  CHECK_THROWS_AS(space_from_json(json{{"sphere", 2}, {"extra", 1}}),
                  validation_error);
  CHECK_THROWS_AS(space_from_json(json{{"moore_group", {4, json::array({6})}}}),
                  validation_error);

  // canonical text stays stable
  CHECK(to_text(SpaceExpr::moore(7, 4)) == "P^7(4)");
  CHECK(to_text(SpaceExpr::wedge({SpaceExpr::sphere(3),
                                  SpaceExpr::sphere(4)})) == "S^3 v S^4");
}

TEST_CASE("normalization rewrites Moore spaces") {
  // degree +-1 maps cone off: contractible
  CHECK(normalize(SpaceExpr::moore(5, 1)) == SpaceExpr::point());
  CHECK(normalize(SpaceExpr::moore(5, -1)) == SpaceExpr::point());

  // degree 0: the cofiber splits into the two cells
  CHECK(normalize(SpaceExpr::moore(7, 0)) ==
        SpaceExpr::wedge({SpaceExpr::sphere(6), SpaceExpr::sphere(7)}));

  // prime-power torsion is a single indecomposable summand
  CHECK(normalize(SpaceExpr::moore(7, 4)) ==
        SpaceExpr::moore_group(7, {PrimePower{2, 2}}));
  CHECK(normalize(SpaceExpr::moore(7, -9)) ==
        SpaceExpr::moore_group(7, {PrimePower{3, 2}}));

  // composite orders split by the Chinese remainder decomposition
  CHECK(normalize(SpaceExpr::moore(7, 12)) ==
        SpaceExpr::wedge({SpaceExpr::moore_group(7, {PrimePower{2, 2}}),
                          SpaceExpr::moore_group(7, {PrimePower{3, 1}})}));
  CHECK(normalize(SpaceExpr::moore_group(
            7, {PrimePower{2, 2}, PrimePower{3, 1}})) ==
        normalize(SpaceExpr::moore(7, 12)));
}

TEST_CASE("normalization structural rules") {
  SpaceExpr s3 = SpaceExpr::sphere(3);
  SpaceExpr s4 = SpaceExpr::sphere(4);

  // wedges flatten and drop points
  CHECK(normalize(SpaceExpr::wedge(
            {SpaceExpr::point(),
             SpaceExpr::wedge({s3, SpaceExpr::point(), s4})})) ==
        SpaceExpr::wedge({s3, s4}));
  CHECK(normalize(SpaceExpr::wedge({SpaceExpr::point()})) ==
        SpaceExpr::point());
  CHECK(normalize(SpaceExpr::wedge({s3})) == s3);

  // units for product and smash
  CHECK(normalize(SpaceExpr::product(SpaceExpr::point(), s3)) == s3);
  CHECK(normalize(SpaceExpr::smash(SpaceExpr::point(), s3)) ==
        SpaceExpr::point());

  // smashing with a sphere suspends
  CHECK(normalize(SpaceExpr::smash(s3, s4)) == SpaceExpr::sphere(7));
  CHECK(normalize(SpaceExpr::smash(SpaceExpr::moore(4, 3), s3)) ==
        SpaceExpr::moore_group(7, {PrimePower{3, 1}}));

  // suspension shifts spheres and Moore spaces
  CHECK(normalize(SpaceExpr::susp(s3)) == s4);
  CHECK(normalize(SpaceExpr::susp(SpaceExpr::moore(4, 6))) ==
        normalize(SpaceExpr::moore(5, 6)));

  // a co-H left factor splits the half-smash
  SpaceExpr y = SpaceExpr::loop(s3);
  SpaceExpr split = normalize(SpaceExpr::half_smash(SpaceExpr::moore(4, 3), y));
  REQUIRE(split.is(SpaceExpr::Kind::wedge));
  CHECK(split.kids[0] == SpaceExpr::moore_group(4, {PrimePower{3, 1}}));

  // loops distribute over products
  SpaceExpr lp = normalize(SpaceExpr::loop(SpaceExpr::product(s3, s4)));
  CHECK(lp == SpaceExpr::product(SpaceExpr::loop(s3), SpaceExpr::loop(s4)));
}

TEST_CASE("homology of Moore spaces over all rings") {
  SpaceExpr p43 = SpaceExpr::moore(4, 3);

  GradedGroup z = homology(p43, CoefficientRing::integers(), 6);
  CHECK(z.free_rank(0) == 1);
  CHECK(z.torsion_at(3) == std::vector<PrimePower>{{3, 1}});
  CHECK(z.free_rank(3) == 0);
  CHECK(z.free_rank(4) == 0);

  GradedGroup f3 = homology(p43, CoefficientRing::prime_field(3), 6);
  CHECK(f3.free_rank(3) == 1);
  CHECK(f3.free_rank(4) == 1);

  GradedGroup f2 = homology(p43, CoefficientRing::prime_field(2), 6);
  CHECK(f2.free_rank(3) == 0);
  CHECK(f2.free_rank(4) == 0);

  GradedGroup q = homology(p43, CoefficientRing::rationals(), 6);
  CHECK(q.free_rank(3) == 0);

  GradedGroup away3 = homology(p43, CoefficientRing::localized_integers({3}), 6);
  CHECK(away3.torsion_at(3).empty());

  // k = 0 splits into two cells
  GradedGroup split = homology(SpaceExpr::moore(7, 0),
                               CoefficientRing::integers(), 8);
  CHECK(split.free_rank(6) == 1);
  CHECK(split.free_rank(7) == 1);
  CHECK(split.torsion_at(6).empty());
}

TEST_CASE("half-smash homology: P^4(3) |x Loop(S^3)") {
  SpaceExpr e = SpaceExpr::half_smash(SpaceExpr::moore(4, 3),
                                      SpaceExpr::loop(SpaceExpr::sphere(3)));

  GradedGroup z = homology(e, CoefficientRing::integers(), 10);
  CHECK(z.free_rank(0) == 1);
  for (int d = 3; d <= 9; d += 2)
    CHECK(z.torsion_at(d) == std::vector<PrimePower>{{3, 1}});
  for (int d = 4; d <= 10; d += 2) CHECK(z.torsion_at(d).empty());

  GradedGroup f3 = homology(e, CoefficientRing::prime_field(3), 10);
  for (int d = 3; d <= 10; ++d) CHECK(f3.free_rank(d) == 1);
  CHECK(f3.free_rank(2) == 0);

  // integral route needs the co-H hypothesis on the left factor
  SpaceExpr torus_like =
      SpaceExpr::product(SpaceExpr::sphere(2), SpaceExpr::sphere(2));
  SpaceExpr bad = SpaceExpr::half_smash(torus_like, SpaceExpr::sphere(2));
  CHECK_THROWS_AS(homology(bad, CoefficientRing::integers(), 6),
                  unsupported_error);
  // field route works regardless of co-H
  CHECK_NOTHROW(homology(bad, CoefficientRing::prime_field(2), 6));
}

TEST_CASE("loop space series") {
  // Loop(S^3): one generator in degree 2
  PowerSeries ls3 = loop_series(SpaceExpr::sphere(3),
                                CoefficientRing::rationals(), 10);
  for (int d = 0; d <= 10; ++d) CHECK(ls3.c[d] == (d % 2 == 0 ? 1 : 0));

  // Loop(S^3 v S^4): tensor algebra on degrees 2 and 3
  PowerSeries lw = loop_series(
      SpaceExpr::wedge({SpaceExpr::sphere(3), SpaceExpr::sphere(4)}),
      CoefficientRing::rationals(), 12);
  const long long frozen[13] = {1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12};
  for (int d = 0; d <= 12; ++d) CHECK(lw.c[d] == frozen[d]);
  for (int d = 0; d <= 12; ++d)
    CHECK(lw.c[d] == oracle::free_words({2, 3}, d));

  // products multiply
  PowerSeries lp = loop_series(
      SpaceExpr::product(SpaceExpr::sphere(3), SpaceExpr::sphere(4)),
      CoefficientRing::rationals(), 10);
  for (int d = 0; d <= 10; ++d) {
    Int acc = 0;
    for (int i = 0; i <= d; ++i)
      if (i % 2 == 0 && (d - i) % 3 == 0) acc += 1;
    CHECK(lp.c[d] == acc);
  }

  // Moore-space loops over F_p: generators in degrees n-2 and n-1
  PowerSeries lm = loop_series(SpaceExpr::moore(4, 3),
                               CoefficientRing::prime_field(3), 8);
  for (int d = 0; d <= 8; ++d)
    CHECK(lm.c[d] == oracle::free_words({2, 3}, d));

  CHECK_THROWS_AS(loop_series(SpaceExpr::loop(SpaceExpr::sphere(3)),
                              CoefficientRing::rationals(), 6),
                  unsupported_error);
  CHECK_THROWS_AS(loop_series(SpaceExpr::sphere(3),
                              CoefficientRing::integers(), 6),
                  validation_error);
  // integral loop homology exists for spheres and their products
  GradedGroup zl = homology(SpaceExpr::loop(SpaceExpr::sphere(3)),
                            CoefficientRing::integers(), 8);
  for (int d = 0; d <= 8; d += 2) CHECK(zl.free_rank(d) == 1);
  CHECK_THROWS_AS(
      homology(SpaceExpr::loop(SpaceExpr::wedge(
                   {SpaceExpr::sphere(3), SpaceExpr::sphere(4)})),
               CoefficientRing::integers(), 6),
      unsupported_error);
}

TEST_CASE("randomized: normalization preserves homology, UCT consistency") {
  std::mt19937 rng(20260816);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    SpaceExpr e = random_expr(rng, trial % 3 + 1);
    SpaceExpr n1 = normalize(e);
    CHECK(normalize(n1) == n1);  // idempotent

    const int trunc = 10;
    for (const auto& ring : kRings) {
      GradedGroup before(trunc);
      try {
        before = homology(e, ring, trunc);
      } catch (const unsupported_error&) {
        continue;  // shape outside this ring's evaluator; nothing to compare
      }
      GradedGroup after = homology(n1, ring, trunc);
      CHECK(before == after);
      ++checked;
    }

    // universal coefficients: field dimensions from the integral answer
    GradedGroup z(trunc);
    try {
      z = homology(e, CoefficientRing::integers(), trunc);
    } catch (const unsupported_error&) {
      continue;
    }
    for (long long p : {2LL, 3LL, 5LL}) {
      CoefficientRing f = CoefficientRing::prime_field(p);
      GradedGroup hf = homology(e, f, trunc);
      PowerSeries expect = poincare_series(z, f, trunc);
      for (int d = 0; d <= trunc; ++d) CHECK(hf.free_rank(d) == expect.c[d]);
    }
    GradedGroup hq = homology(e, CoefficientRing::rationals(), trunc);
    for (int d = 0; d <= trunc; ++d)
      CHECK(hq.free_rank(d) == z.free_rank(d));
  }
  // the generator must actually exercise the comparison
  CHECK(checked > 3000);
}

TEST_CASE("capped complex JSON") {
  json j = {{"n", 7},
            {"m", 3},
            {"k", 1},
            {"c", {{"sphere", 3}}},
            {"whitehead_component_asserted", true}};
  CappedComplexSpec spec = capped_from_json(j);
  CHECK(spec.n == 7);
  CHECK(spec.m == 3);
  CHECK(spec.k == 1);
  CHECK(spec.c == SpaceExpr::sphere(3));
  CHECK(spec.whitehead_component_asserted);
  CHECK(spec.omega.empty());

  json round = to_json(spec);
  CappedComplexSpec back = capped_from_json(round);
  CHECK(back.n == spec.n);
  CHECK(back.c == spec.c);

  json missing = j;
  missing.erase("c");
  CHECK_THROWS_AS(capped_from_json(missing), validation_error);

  json bad_m = j;
  bad_m["m"] = 6;  // needs 2 <= m <= n-2
  CHECK_THROWS_AS(capped_from_json(bad_m), validation_error);

  json bad_n = j;
  bad_n["n"] = 3;
  CHECK_THROWS_AS(capped_from_json(bad_n), validation_error);
}
