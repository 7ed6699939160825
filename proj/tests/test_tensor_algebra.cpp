#include <catch2/catch_amalgamated.hpp>

#include "loopspace/tensor_algebra.hpp"
#include "oracles.hpp"

using namespace loopspace;

namespace {

Presentation uvw() {
  Presentation p;
  p.generators = {{"u", 2}, {"v", 3}, {"w", 2}};
  p.field = CoefficientRing::rationals();
  return p;
}

}  // namespace

TEST_CASE("relation grammar") {
  Presentation p = uvw();

  AlgebraElement comm = graded_commutator(p, "u", "v");
  CHECK(parse_element("u*v - v*u", p) == comm);
  CHECK(parse_element("[u,v]", p) == comm);
  CHECK(parse_element("  [ u , v ]  ", p) == comm);
  CHECK(parse_element("2*[u,v]", p) == comm.scaled(2));
  CHECK(parse_element("-[u,v]", p) == comm.scaled(-1));
  CHECK(to_text(comm, p) == "u*v - v*u");

  // |u| and |w| both even: [u,w] = uw - wu; odd-odd picks up the plus sign
  Presentation odd;
  odd.generators = {{"a", 3}, {"b", 5}};
  AlgebraElement ab = parse_element("a*b + b*a", odd);
  CHECK(graded_commutator(odd, "a", "b") == ab);

  // self-commutators: zero in even degree, twice the square in odd degree
  CHECK(graded_commutator(p, "u", "u").is_zero());
  CHECK(graded_commutator(odd, "a", "a") == parse_element("2*a*a", odd));

  // canonicalization merges and drops terms
  CHECK(parse_element("u*v - u*v + w*w", p) == parse_element("w*w", p));
  CHECK(parse_element("u*v - u*v", p).is_zero());
  CHECK(parse_element("3*u*2", p) == parse_element("6*u", p));

  // text round-trip on a mixed element
  AlgebraElement mixed = parse_element("2*u*w - v + w*u", p);
  CHECK(parse_element(to_text(mixed, p), p) == mixed);

  CHECK_THROWS_AS(parse_element("u + 1", p), validation_error);
  CHECK_THROWS_AS(parse_element("x", p), validation_error);
  CHECK_THROWS_AS(parse_element("[u v]", p), validation_error);
  CHECK_THROWS_AS(parse_element("u *", p), validation_error);
  CHECK_THROWS_AS(parse_element("u & v", p), validation_error);
}

TEST_CASE("presentation validation") {
  Presentation p = uvw();
  p.relations.push_back(graded_commutator(p, "u", "v"));
  CHECK_NOTHROW(validate_presentation(p));

  Presentation dup = uvw();
  dup.generators.push_back({"u", 4});
  CHECK_THROWS_AS(validate_presentation(dup), validation_error);

  Presentation bad_degree = uvw();
  bad_degree.generators.push_back({"t", 0});
  CHECK_THROWS_AS(validate_presentation(bad_degree), validation_error);

  Presentation bad_name = uvw();
  bad_name.generators.push_back({"1u", 2});
  CHECK_THROWS_AS(validate_presentation(bad_name), validation_error);

  Presentation inhomog = uvw();
  inhomog.relations.push_back(parse_element("u - v", inhomog));
  CHECK_THROWS_AS(validate_presentation(inhomog), validation_error);

  json j = to_json(p);
  CHECK(j.at("field") == "q");
  CHECK(j.at("generators")[0].at("name") == "u");
  CHECK(j.at("relations")[0] == "u*v - v*u");
}

TEST_CASE("free algebra dimensions") {
  PowerSeries f = free_algebra_dims({2, 2, 3}, 8);
  const long long frozen[9] = {1, 0, 2, 1, 4, 4, 9, 12, 22};
  for (int d = 0; d <= 8; ++d) {
    CHECK(f.c[d] == frozen[d]);
    CHECK(f.c[d] == oracle::free_words({2, 2, 3}, d));
  }

  Presentation p = uvw();
  PowerSeries via_pres = free_algebra_dims(p, 8);
  CHECK(via_pres.c == f.c);

  CHECK_THROWS_AS(free_algebra_dims({0, 2}, 4), validation_error);
}

TEST_CASE("quotient by a graded commutator: two generators") {
  Presentation p;
  p.generators = {{"u", 2}, {"v", 3}};
  p.field = CoefficientRing::rationals();
  p.relations.push_back(graded_commutator(p, "u", "v"));

  PowerSeries dims = quotient_dims(p, 12);
  for (int d = 0; d <= 12; ++d) {
    CHECK(dims.c[d] == oracle::commutative_monomials({2, 3}, d));
    CHECK(dims.c[d] == oracle::avoiding_words({2, 3}, 0, 1, d));
  }

  // same dimensions over any field for this relation
  Presentation p2 = p;
  p2.field = CoefficientRing::prime_field(2);
  PowerSeries dims2 = quotient_dims(p2, 12);
  CHECK(dims2.c == dims.c);
}

TEST_CASE("quotient with a bystander generator") {
  Presentation p = uvw();  // u, v, w; relation touches u, v only
  p.relations.push_back(graded_commutator(p, "u", "v"));

  PowerSeries dims = quotient_dims(p, 10);
  const long long frozen[6] = {1, 0, 2, 1, 4, 3};
  for (int d = 0; d <= 5; ++d) CHECK(dims.c[d] == frozen[d]);
  for (int d = 0; d <= 10; ++d)
    CHECK(dims.c[d] == oracle::avoiding_words({2, 3, 2}, 0, 1, d));
}

TEST_CASE("quotient by a monomial relation") {
  Presentation p;
  p.generators = {{"u", 2}, {"v", 2}};
  p.field = CoefficientRing::rationals();
  p.relations.push_back(parse_element("u*v", p));

  PowerSeries dims = quotient_dims(p, 12);
  for (int d = 0; d <= 12; ++d)
    CHECK(dims.c[d] == oracle::avoiding_words({2, 2}, 0, 1, d));
}

TEST_CASE("quotient by many-term relations matches dense elimination") {
  Presentation p = uvw();
  p.relations.push_back(parse_element("u*v - v*u + w*v", p));

  std::vector<int> degrees = {2, 3, 2};
  std::vector<std::map<std::vector<int>, long long>> relations = {
      {{{0, 1}, 1}, {{1, 0}, -1}, {{2, 1}, 1}},
  };

  for (long long prime : {0LL, 2LL, 3LL, 5LL}) {
    Presentation pf = p;
    pf.field = prime == 0 ? CoefficientRing::rationals()
                          : CoefficientRing::prime_field(prime);
    PowerSeries dims = quotient_dims(pf, 8);
    for (int d = 0; d <= 8; ++d)
      CHECK(dims.c[d] ==
            oracle::dense_quotient_dim(degrees, relations, d, prime));
  }
}

TEST_CASE("quotient by two relations, mixed paths") {
  Presentation p = uvw();
  p.relations.push_back(graded_commutator(p, "u", "w"));  // two terms
  p.relations.push_back(parse_element("v*v - u*w*u", p));  // degree 6

  std::vector<int> degrees = {2, 3, 2};
  std::vector<std::map<std::vector<int>, long long>> relations = {
      {{{0, 2}, 1}, {{2, 0}, -1}},
      {{{1, 1}, 1}, {{0, 2, 0}, -1}},
  };
  for (long long prime : {0LL, 3LL}) {
    Presentation pf = p;
    pf.field = prime == 0 ? CoefficientRing::rationals()
                          : CoefficientRing::prime_field(prime);
    PowerSeries dims = quotient_dims(pf, 8);
    for (int d = 0; d <= 8; ++d)
      CHECK(dims.c[d] ==
            oracle::dense_quotient_dim(degrees, relations, d, prime));
  }
}

TEST_CASE("coefficients that vanish mod p change the quotient") {
  Presentation p;
  p.generators = {{"u", 2}, {"v", 3}};
  p.relations.push_back(parse_element("2*u*v - 2*v*u", p));

  p.field = CoefficientRing::rationals();
  PowerSeries q_dims = quotient_dims(p, 10);
  for (int d = 0; d <= 10; ++d)
    CHECK(q_dims.c[d] == oracle::commutative_monomials({2, 3}, d));

  // over F_2 the relation is identically zero: free algebra
  p.field = CoefficientRing::prime_field(2);
  PowerSeries f2_dims = quotient_dims(p, 10);
  for (int d = 0; d <= 10; ++d)
    CHECK(f2_dims.c[d] == oracle::free_words({2, 3}, d));
}

TEST_CASE("quotient resource caps") {
  Presentation p = uvw();
  p.relations.push_back(graded_commutator(p, "u", "v"));

  // three generators default to the lower degree cap
  CHECK_THROWS_AS(quotient_dims(p, 15), resource_error);
  QuotientCaps raised;
  raised.degree_cap_many = 16;
  CHECK_NOTHROW(quotient_dims(p, 15, raised));

  QuotientCaps tiny;
  tiny.max_words = 4;
  CHECK_THROWS_AS(quotient_dims(p, 10, tiny), resource_error);

  Presentation dense = uvw();
  dense.relations.push_back(parse_element("u*v - v*u + w*v", dense));
  QuotientCaps tiny_general;
  tiny_general.general_max_words = 4;
  CHECK_THROWS_AS(quotient_dims(dense, 8, tiny_general), resource_error);

  Presentation zp = uvw();
  zp.field = CoefficientRing::integers();
  zp.relations.push_back(graded_commutator(zp, "u", "v"));
  CHECK_THROWS_AS(quotient_dims(zp, 6), unsupported_error);
}

TEST_CASE("loop homology presentation of a capped complex") {
  CappedComplexSpec spec;
  spec.n = 7;
  spec.m = 3;
  spec.k = 1;
  spec.c = SpaceExpr::sphere(3);
  spec.whitehead_component_asserted = true;

  LoopHomologyPresentation lh =
      loop_homology_presentation(spec, CoefficientRing::rationals(), 10);
  REQUIRE(lh.presentation.generators.size() == 3);
  CHECK(lh.presentation.generators[0] == Generator{"u", 2});
  CHECK(lh.presentation.generators[1] == Generator{"v", 3});
  CHECK(lh.presentation.generators[2] == Generator{"w", 2});
  REQUIRE(lh.presentation.relations.size() == 1);
  CHECK(lh.presentation.relations[0] ==
        graded_commutator(lh.presentation, "u", "v"));
  CHECK(lh.hypotheses_used.size() == 5);
  bool mentions_omega = false;
  for (const auto& h : lh.hypotheses_used)
    mentions_omega |= h.find("omega = 0 assumed") != std::string::npos;
  CHECK(mentions_omega);

  // frozen dimensions for the standard example
  PowerSeries dims = quotient_dims(lh.presentation, 5);
  const long long frozen[6] = {1, 0, 2, 1, 4, 3};
  for (int d = 0; d <= 5; ++d) CHECK(dims.c[d] == frozen[d]);

  // no cap component: just u and v
  CappedComplexSpec bare = spec;
  bare.c = SpaceExpr::point();
  LoopHomologyPresentation lb =
      loop_homology_presentation(bare, CoefficientRing::rationals(), 10);
  CHECK(lb.presentation.generators.size() == 2);

  // several classes get numbered names, ascending degree
  CappedComplexSpec wide = spec;
  wide.n = 9;
  wide.m = 4;
  wide.c = SpaceExpr::wedge({SpaceExpr::sphere(3), SpaceExpr::sphere(4)});
  LoopHomologyPresentation lw =
      loop_homology_presentation(wide, CoefficientRing::rationals(), 10);
  REQUIRE(lw.presentation.generators.size() == 4);
  CHECK(lw.presentation.generators[2] == Generator{"w1", 2});
  CHECK(lw.presentation.generators[3] == Generator{"w2", 3});

  // Moore-space cap: generators only over the matching field
  CappedComplexSpec moore = spec;
  moore.c = SpaceExpr::moore(4, 3);
  LoopHomologyPresentation m3 =
      loop_homology_presentation(moore, CoefficientRing::prime_field(3), 10);
  REQUIRE(m3.presentation.generators.size() == 4);
  CHECK(m3.presentation.generators[2] == Generator{"w1", 2});
  CHECK(m3.presentation.generators[3] == Generator{"w2", 3});
  LoopHomologyPresentation mq =
      loop_homology_presentation(moore, CoefficientRing::rationals(), 10);
  CHECK(mq.presentation.generators.size() == 2);
}

TEST_CASE("loop homology presentation hypotheses are enforced") {
  CappedComplexSpec spec;
  spec.n = 7;
  spec.m = 3;
  spec.k = 2;
  spec.c = SpaceExpr::point();
  spec.whitehead_component_asserted = true;

  CHECK_THROWS_AS(
      loop_homology_presentation(spec, CoefficientRing::rationals(), 8),
      validation_error);

  spec.k = 1;
  spec.whitehead_component_asserted = false;
  CHECK_THROWS_AS(
      loop_homology_presentation(spec, CoefficientRing::rationals(), 8),
      validation_error);

  spec.whitehead_component_asserted = true;
  CHECK_THROWS_AS(
      loop_homology_presentation(spec, CoefficientRing::integers(), 8),
      unsupported_error);

  spec.c = SpaceExpr::product(SpaceExpr::sphere(2), SpaceExpr::sphere(2));
  CHECK_THROWS_AS(
      loop_homology_presentation(spec, CoefficientRing::rationals(), 8),
      unsupported_error);
}

TEST_CASE("omega perturbations join the commutator relation") {
  CappedComplexSpec spec;
  spec.n = 8;
  spec.m = 3;
  spec.k = 1;
  spec.c = SpaceExpr::point();
  spec.whitehead_component_asserted = true;
  spec.omega = {"u*u*u"};

  LoopHomologyPresentation lh =
      loop_homology_presentation(spec, CoefficientRing::rationals(), 10);
  // u has degree 2, v degree 4; omega must land in degree n-2 = 6
  REQUIRE(lh.presentation.relations.size() == 1);
  CHECK(to_text(lh.presentation.relations[0], lh.presentation) ==
        "u*u*u + u*v - v*u");
  bool supplied = false;
  for (const auto& h : lh.hypotheses_used)
    supplied |= h.find("omega relations supplied") != std::string::npos;
  CHECK(supplied);

  CappedComplexSpec bad = spec;
  bad.omega = {"u*u"};  // degree 4, not n-2
  CHECK_THROWS_AS(
      loop_homology_presentation(bad, CoefficientRing::rationals(), 10),
      validation_error);

  CappedComplexSpec unknown = spec;
  unknown.omega = {"u*z"};
  CHECK_THROWS_AS(
      loop_homology_presentation(unknown, CoefficientRing::rationals(), 10),
      validation_error);

  // an omega cancelling the commutator leaves the free algebra
  CappedComplexSpec cancel = spec;
  cancel.omega = {"- u*v + v*u"};
  LoopHomologyPresentation lc =
      loop_homology_presentation(cancel, CoefficientRing::rationals(), 10);
  CHECK(lc.presentation.relations[0].is_zero());
  PowerSeries dims = quotient_dims(lc.presentation, 10);
  for (int d = 0; d <= 10; ++d)
    CHECK(dims.c[d] == oracle::free_words({2, 4}, d));
}
