#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringstab/criteria.hpp"
#include "ringstab/errors.hpp"
#include "testutil.hpp"

using namespace ringstab;
using namespace ringstab::testing;

TEST_CASE("minor ideals") {
  Ring zq = ring_quadratic();
  Plant anantharam = make_plant(zq, 1, 1, {"1 + s"}, {"2"});
  auto [t, minors] = minor_ideal(anantharam);
  CHECK(minors.at(IndexSet{{1}}) == parse_element(zq, "1 + s"));
  CHECK(minors.at(IndexSet{{2}}) == parse_element(zq, "2"));
  CHECK(ideal_equals(t, Ideal(zq, {parse_element(zq, "2"),
                                   parse_element(zq, "1 + s")})));

  Ring qxy = ring_polynomial({"x", "y"});
  auto [t2, m2] = minor_ideal(make_plant(qxy, 1, 1, {"x"}, {"y"}));
  CHECK(ideal_equals(t2, Ideal(qxy, {parse_element(qxy, "x"),
                                     parse_element(qxy, "y")})));

  // Zero plant: the identity block contributes the unit minor.
  auto [t3, m3] = minor_ideal(make_plant(qxy, 2, 2, {"0", "0", "0", "0"},
                                         {"1", "0", "0", "1"}));
  CHECK(ideal_contains_one(t3).has_value());
}

TEST_CASE("w-side minor ideals") {
  Ring qx = ring_polynomial({"x"});
  Plant siso = make_plant(qx, 1, 1, {"x"}, {"1 - x"});
  auto [t, tm] = minor_ideal(siso);
  auto [w, wm] = minor_ideal_W(siso);
  CHECK(tm == wm);  // SISO: identical families

  Ring qxy = ring_polynomial({"x", "y"});
  auto [w2, wm2] = minor_ideal_W(make_plant(qxy, 2, 2, {"0", "0", "0", "0"},
                                            {"1", "0", "0", "1"}));
  CHECK(ideal_contains_one(w2).has_value());

  // Common-denominator W satisfies the tau-paired identity
  // w_tau(I) = +- det(D)^{n-1} t_I.
  auto rng = make_rng(501);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix N = random_matrix(rng, qxy, 2, 2, 2);
    Matrix D = random_matrix(rng, qxy, 2, 2, 2);
    if (is_zero(det(D))) continue;
    Plant p(N, D);
    auto [ti, tmin] = minor_ideal(p);
    auto [wi, wmin] = minor_ideal_W(p);
    RingElement scale = power(det(D), 1);  // n - 1 = 1
    for (const auto& [I, tI] : tmin) {
      RingElement lhs = wmin.at(tau(I, 2, 2));
      RingElement rhs = mul(scale, tI);
      CHECK((lhs == rhs || lhs == neg(rhs)));
    }
  }
}

TEST_CASE("quotient sum and stabilizability") {
  Ring zq = ring_quadratic();
  StabilizabilityReport rep =
      is_stabilizable(make_plant(zq, 1, 1, {"1 + s"}, {"2"}));
  CHECK(rep.verdict);
  CHECK(ideal_equals(rep.quotient_ideals.at(IndexSet{{1}}),
                     Ideal(zq, {parse_element(zq, "3"),
                                parse_element(zq, "1 + s")})));
  CHECK(ideal_equals(rep.quotient_ideals.at(IndexSet{{2}}),
                     Ideal(zq, {parse_element(zq, "2"),
                                parse_element(zq, "1 + s")})));
  REQUIRE(rep.witness.has_value());
  RingElement acc = RingElement::zero(zq);
  for (const auto& term : *rep.witness) {
    acc = add(acc, mul(term.r, term.x));
    CHECK(ideal_membership(term.x, rep.quotient_ideals.at(term.I)));
  }
  CHECK(acc == RingElement::one(zq));

  Ring qxy = ring_polynomial({"x", "y"});
  StabilizabilityReport nrep = is_stabilizable(make_plant(qxy, 1, 1, {"x"}, {"y"}));
  CHECK_FALSE(nrep.verdict);
  CHECK(ideal_equals(nrep.quotient_ideals.at(IndexSet{{1}}),
                     Ideal(qxy, {parse_element(qxy, "x")})));
  CHECK(ideal_equals(nrep.quotient_ideals.at(IndexSet{{2}}),
                     Ideal(qxy, {parse_element(qxy, "y")})));

  Ring qx = ring_polynomial({"x"});
  StabilizabilityReport pos = is_stabilizable(make_plant(qx, 1, 1, {"x"}, {"1 - x"}));
  CHECK(pos.verdict);
}

TEST_CASE("witness terms satisfy the quotient definition") {
  // Every x in ((t_I) : t) must multiply every minor into (t_I).
  for (const auto& cp : plant_corpus()) {
    StabilizabilityReport rep = is_stabilizable(cp.plant);
    CHECK(rep.verdict == cp.stabilizable);
    for (const auto& [I, q] : rep.quotient_ideals) {
      Ideal tI_ideal(cp.plant.ring(), {rep.minors.at(I)});
      for (const auto& x : q.canonical_generators())
        for (const auto& [I2, tI2] : rep.minors)
          CHECK(ideal_membership(mul(x, tI2), tI_ideal));
    }
  }
}

TEST_CASE("projectivity of ideals") {
  Ring zq = ring_quadratic();
  auto r1 = is_ideal_projective(
      {parse_element(zq, "2"), parse_element(zq, "1 + s")}, zq);
  CHECK(r1.projective);
  RingElement acc = RingElement::zero(zq);
  for (const auto& [x, a] : r1.witness) acc = add(acc, x);
  CHECK(acc == RingElement::one(zq));

  Ring qxy = ring_polynomial({"x", "y"});
  CHECK_FALSE(is_ideal_projective(
                  {parse_element(qxy, "x"), parse_element(qxy, "y")}, qxy)
                  .projective);
  CHECK(is_ideal_projective({parse_element(qxy, "x*y - 1")}, qxy).projective);
  CHECK(is_ideal_projective({RingElement::zero(qxy)}, qxy).projective);
}

TEST_CASE("reduced minors") {
  Ring qxy = ring_polynomial({"x", "y"});
  Plant p = make_plant(qxy, 1, 1, {"x^2"}, {"x*y"});
  ReducedMinors rm = reduced_minors(p);
  CHECK(rm.gcd_of_minors == parse_element(qxy, "x"));
  CHECK(rm.reduced.at(IndexSet{{1}}) == parse_element(qxy, "x"));
  CHECK(rm.reduced.at(IndexSet{{2}}) == parse_element(qxy, "y"));
  CHECK_FALSE(reduced_minors_generate(p));

  Ring qx = ring_polynomial({"x"});
  Plant coprime = make_plant(qx, 1, 1, {"x"}, {"1 - x"});
  ReducedMinors rm2 = reduced_minors(coprime);
  CHECK(is_unit(rm2.gcd_of_minors));
  CHECK(reduced_minors_generate(coprime));

  Ring qq = ring_rationals();
  CHECK(reduced_minors_generate(make_plant(qq, 1, 1, {"3/4"}, {"1/2"})));

  Ring zq = ring_quadratic();
  CHECK_THROWS_AS(reduced_minors(make_plant(zq, 1, 1, {"1 + s"}, {"2"})), Error);
}

TEST_CASE("elementary factors") {
  Ring qxy = ring_polynomial({"x", "y"});
  Plant p = make_plant(qxy, 1, 1, {"x^2"}, {"x*y"});
  CHECK(associates(elementary_factor(p, IndexSet{{1}}),
                   parse_element(qxy, "x")));
  CHECK(associates(elementary_factor(p, IndexSet{{2}}),
                   parse_element(qxy, "y")));
  CHECK_FALSE(elementary_factors_coprime(p));

  // Unit denominator: the factor of the dE-rows selection is 1.
  Ring qx = ring_polynomial({"x"});
  Plant stable = make_plant(qx, 2, 2, {"x", "0", "x^2", "x"},
                            {"1", "0", "0", "1"});
  CHECK(is_unit(elementary_factor(stable, IndexSet{{3, 4}})));

  Plant coprime = make_plant(qx, 1, 1, {"x"}, {"1 - x"});
  RingElement f1 = elementary_factor(coprime, IndexSet{{1}});
  RingElement f2 = elementary_factor(coprime, IndexSet{{2}});
  CHECK(associates(f1, parse_element(qx, "x")));
  CHECK(associates(f2, parse_element(qx, "1 - x")));
  CHECK(elementary_factors_coprime(coprime));

  CHECK_THROWS_AS(
      elementary_factor(make_plant(ring_quadratic(), 1, 1, {"1 + s"}, {"2"}),
                        IndexSet{{1}}),
      Error);
  // Singular selection.
  Plant singular = make_plant(qx, 1, 1, {"0"}, {"x"});
  CHECK_THROWS_AS(elementary_factor(singular, IndexSet{{1}}), Error);
}

TEST_CASE("generalized elementary factors") {
  Ring zq = ring_quadratic();
  Plant anantharam = make_plant(zq, 1, 1, {"1 + s"}, {"2"});
  Ideal l2 = generalized_elementary_factor(anantharam, IndexSet{{2}});
  CHECK(ideal_equals(l2, Ideal(zq, {parse_element(zq, "2"),
                                    parse_element(zq, "1 + s")})));
  Ideal l1 = generalized_elementary_factor(anantharam, IndexSet{{1}});
  CHECK(ideal_equals(l1, Ideal(zq, {parse_element(zq, "3"),
                                    parse_element(zq, "1 + s")})));
  CHECK(ideal_contains_one(ideal_sum(l1, l2)).has_value());
  CHECK(gef_sum_is_ring(anantharam));

  Ring qxy = ring_polynomial({"x", "y"});
  Plant p = make_plant(qxy, 1, 1, {"x^2"}, {"x*y"});
  CHECK(ideal_equals(generalized_elementary_factor(p, IndexSet{{2}}),
                     Ideal(qxy, {parse_element(qxy, "y")})));
  CHECK_FALSE(gef_sum_is_ring(p));

  // Stable plant: the D-row selection gives the whole ring.
  Ring qx = ring_polynomial({"x"});
  Plant stable = make_plant(qx, 1, 1, {"x"}, {"1"});
  CHECK(ideal_contains_one(
            generalized_elementary_factor(stable, IndexSet{{2}}))
            .has_value());
  CHECK(gef_sum_is_ring(stable));

  // Zero minor: the zero ideal by the rank argument.
  Plant with_zero = make_plant(qx, 2, 1, {"x", "0"},
                               {"1", "0", "0", "1"});
  // I = {1, 2} selects rows [x 0; 1 0] with determinant 0.
  CHECK(generalized_elementary_factor(with_zero, IndexSet{{1, 2}})
            .is_zero_ideal());
}

TEST_CASE("lambda membership soundness: explicit K matrices") {
  for (const auto& cp : plant_corpus()) {
    int width = cp.plant.inputs() + cp.plant.outputs();
    for (const auto& I : all_index_sets(cp.plant.inputs(), width)) {
      Ideal lambda = generalized_elementary_factor(cp.plant, I);
      for (const auto& g : lambda.canonical_generators())
        CHECK(gef_membership_sound(cp.plant, I, g));
    }
  }
}

TEST_CASE("criterion agreement across the corpus") {
  for (const auto& cp : plant_corpus()) {
    CAPTURE(cp.name);
    StabilizabilityReport rep = is_stabilizable(cp.plant);
    CHECK(rep.verdict == cp.stabilizable);
    CHECK(gef_sum_is_ring(cp.plant) == cp.stabilizable);
    std::vector<RingElement> gens;
    for (const auto& [I, tI] : rep.minors) gens.push_back(tI);
    CHECK(is_ideal_projective(gens, cp.plant.ring()).projective ==
          cp.stabilizable);
    if (cp.plant.ring()->is_ufd()) {
      CHECK(reduced_minors_generate(cp.plant) == cp.stabilizable);
      CHECK(elementary_factors_coprime(cp.plant) == cp.stabilizable);
    }
  }
}

TEST_CASE("representation independence under unimodular right factors") {
  auto rng = make_rng(502);
  for (const auto& cp : plant_corpus()) {
    if (cp.plant.inputs() > 2) continue;
    for (int trial = 0; trial < 3; ++trial) {
      Matrix u = random_unimodular(rng, cp.plant.ring(), cp.plant.inputs());
      Plant moved(mat_mul(cp.plant.N(), u), mat_mul(cp.plant.D(), u));
      CHECK(is_stabilizable(moved).verdict == cp.stabilizable);
    }
  }
}

TEST_CASE("radical cross checks") {
  Ring qxy = ring_polynomial({"x", "y"});
  CrossCheckReport r = radical_cross_checks(make_plant(qxy, 1, 1, {"x^2"}, {"x*y"}));
  CHECK(r.all_ok);
  CHECK_FALSE(r.inconclusive);

  Ring zq = ring_quadratic();
  CrossCheckReport r2 =
      radical_cross_checks(make_plant(zq, 1, 1, {"1 + s"}, {"2"}));
  CHECK(r2.all_ok);

  // Principal minor ideal: the distinguished quotient is the whole ring.
  Ring qx = ring_polynomial({"x"});
  CrossCheckReport r3 = radical_cross_checks(make_plant(qx, 1, 1, {"x"}, {"1"}));
  CHECK(r3.all_ok);
}

TEST_CASE("ideal isomorphism certificates") {
  Ring qx = ring_polynomial({"x"});
  Ideal a(qx, {parse_element(qx, "x^2 + x")});
  Ideal b(qx, {parse_element(qx, "2*x^2 + 2*x")});
  IsoCertificate c1 = ideal_iso_certificate(a, b);
  CHECK(c1.verdict == IsoVerdict::Isomorphic);

  // Scaled pairs of non-principal ideals.
  Ring qxy = ring_polynomial({"x", "y"});
  Ideal m(qxy, {parse_element(qxy, "x"), parse_element(qxy, "y")});
  Ideal xm(qxy, {parse_element(qxy, "x^2"), parse_element(qxy, "x*y")});
  IsoCertificate c2 = ideal_iso_certificate(m, xm);
  CHECK(c2.verdict == IsoVerdict::Isomorphic);

  Ideal principal(qxy, {parse_element(qxy, "x")});
  IsoCertificate c3 = ideal_iso_certificate(m, principal);
  CHECK(c3.verdict == IsoVerdict::Inconclusive);
}
