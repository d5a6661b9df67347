#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringstab/errors.hpp"
#include "testutil.hpp"

using namespace ringstab;
using namespace ringstab::testing;

namespace {

std::vector<Ring> all_rings() {
  return {ring_integers(), ring_rationals(), ring_quadratic(),
          ring_polynomial({"x", "y"}), ring_cuspidal()};
}

}  // namespace

TEST_CASE("arithmetic examples") {
  Ring zq = ring_quadratic();
  RingElement a = parse_element(zq, "1 + s");
  RingElement b = parse_element(zq, "1 - s");
  CHECK(mul(a, b) == RingElement::from_int(zq, 6));

  Ring qxy = ring_polynomial({"x", "y"});
  RingElement x = parse_element(qxy, "x");
  CHECK(is_zero(mul(x, RingElement::zero(qxy))));

  Ring cu = ring_cuspidal();
  RingElement rel = parse_element(cu, "u*u*u - v*v");
  CHECK(is_zero(rel));
}

TEST_CASE("unit and zero predicates") {
  Ring zq = ring_quadratic();
  RingElement two = RingElement::from_int(zq, 2);
  CHECK_FALSE(is_unit(two));
  CHECK(is_nonzerodivisor(two));
  CHECK(is_unit(RingElement::from_int(zq, -1)));

  Ring qq = ring_rationals();
  CHECK(is_unit(parse_element(qq, "3/4")));
  CHECK_FALSE(is_unit(RingElement::zero(qq)));

  RingElement ops = parse_element(zq, "1 + s");  // norm 6
  CHECK_FALSE(is_unit(ops));

  Ring qx = ring_polynomial({"x"});
  CHECK(is_unit(parse_element(qx, "1/2")));
  CHECK_FALSE(is_unit(parse_element(qx, "x")));
}

TEST_CASE("exact division") {
  Ring zq = ring_quadratic();
  RingElement six = RingElement::from_int(zq, 6);
  RingElement a = parse_element(zq, "1 + s");
  auto q = exact_divide(six, a);
  REQUIRE(q.has_value());
  CHECK(*q == parse_element(zq, "1 - s"));
  CHECK_FALSE(exact_divide(a, RingElement::from_int(zq, 2)).has_value());

  Ring qxy = ring_polynomial({"x", "y"});
  auto q2 = exact_divide(parse_element(qxy, "x^2*y"), parse_element(qxy, "x"));
  REQUIRE(q2.has_value());
  CHECK(*q2 == parse_element(qxy, "x*y"));

  CHECK_THROWS_AS(exact_divide(six, RingElement::zero(zq)), Error);
}

TEST_CASE("exact division round trip on random pairs") {
  auto rng = make_rng(101);
  for (const Ring& ring : all_rings()) {
    for (int trial = 0; trial < 60; ++trial) {
      RingElement a = random_element(rng, ring);
      RingElement b = random_nonzero(rng, ring);
      if (auto q = exact_divide(a, b)) CHECK(mul(*q, b) == a);
      // Constructed multiples always divide.
      RingElement prod = mul(a, b);
      auto q2 = exact_divide(prod, b);
      REQUIRE(q2.has_value());
      CHECK(*q2 == a);
    }
  }
}

TEST_CASE("gcd examples and properties") {
  Ring qxy = ring_polynomial({"x", "y"});
  CHECK(gcd(parse_element(qxy, "x^2"), parse_element(qxy, "x*y")) ==
        parse_element(qxy, "x"));
  RingElement f = parse_element(qxy, "3*x*y - y^2");
  CHECK(associates(gcd(RingElement::zero(qxy), f), f));
  Ring qx = ring_polynomial({"x"});
  CHECK(gcd(parse_element(qx, "x + 1"), parse_element(qx, "x - 1")) ==
        RingElement::one(qx));

  CHECK_THROWS_AS(gcd(RingElement::from_int(ring_quadratic(), 2),
                      RingElement::from_int(ring_quadratic(), 4)),
                  Error);

  // gcd divides both inputs and is divided by common divisors from a
  // generated factor pool.
  auto rng = make_rng(102);
  for (const Ring& ring :
       std::vector<Ring>{ring_integers(), ring_polynomial({"x", "y"})}) {
    for (int trial = 0; trial < 40; ++trial) {
      RingElement common = random_nonzero(rng, ring, 4);
      RingElement a = mul(common, random_nonzero(rng, ring, 4));
      RingElement b = mul(common, random_nonzero(rng, ring, 4));
      RingElement g = gcd(a, b);
      CHECK(exact_divide(a, g).has_value());
      CHECK(exact_divide(b, g).has_value());
      CHECK(exact_divide(g, common).has_value());
    }
  }
}

TEST_CASE("squarefree part") {
  Ring qxy = ring_polynomial({"x", "y"});
  CHECK(squarefree_part(parse_element(qxy, "x^2*y")) ==
        parse_element(qxy, "x*y"));
  Ring zz = ring_integers();
  CHECK(squarefree_part(RingElement::from_int(zz, 12)) ==
        RingElement::from_int(zz, 6));
  CHECK(squarefree_part(RingElement::from_int(zz, -360)) ==
        RingElement::from_int(zz, 30));

  // Idempotence on squarefree inputs.
  RingElement f = parse_element(qxy, "x*y + 1");
  CHECK(associates(squarefree_part(f), f));
  auto rng = make_rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    RingElement g = random_nonzero(rng, qxy, 3);
    RingElement s = squarefree_part(g);
    CHECK(associates(squarefree_part(s), s));
  }

  CHECK_THROWS_AS(squarefree_part(RingElement::zero(zz)), Error);
  CHECK_THROWS_AS(squarefree_part(RingElement::from_int(ring_cuspidal(), 2)),
                  Error);
}

TEST_CASE("integral domain property") {
  auto rng = make_rng(104);
  for (const Ring& ring : all_rings()) {
    for (int trial = 0; trial < 1000; ++trial) {
      RingElement a = random_nonzero(rng, ring, 6);
      RingElement b = random_nonzero(rng, ring, 6);
      CHECK_FALSE(is_zero(mul(a, b)));
    }
  }
}

TEST_CASE("spec mismatch is rejected") {
  RingElement a = RingElement::from_int(ring_integers(), 1);
  RingElement b = RingElement::from_int(ring_rationals(), 1);
  CHECK_THROWS_AS(add(a, b), Error);
}

TEST_CASE("canonical text form round-trips") {
  auto rng = make_rng(105);
  for (const Ring& ring : all_rings()) {
    for (int trial = 0; trial < 120; ++trial) {
      RingElement e = random_element(rng, ring);
      CHECK(parse_element(ring, e.to_string()) == e);
    }
  }
  // A few fixed shapes.
  Ring zq = ring_quadratic();
  for (const char* text : {"0", "-7", "2 - 3*s", "-5*s", "1 + 1*s"}) {
    RingElement e = parse_element(zq, text);
    CHECK(parse_element(zq, e.to_string()) == e);
  }
}

TEST_CASE("cuspidal normal forms") {
  Ring cu = ring_cuspidal();
  RingElement u = parse_element(cu, "u");
  RingElement v = parse_element(cu, "v");
  // u^3 reduces to v^2 under the fixed order.
  CHECK(power(u, 3) == mul(v, v));
  // No monomial of a normal form is divisible by u^3.
  auto rng = make_rng(106);
  for (int trial = 0; trial < 100; ++trial) {
    RingElement e = random_element(rng, cu, 5);
    for (const auto& [m, c] : e.as_poly().terms()) CHECK(m[0] < 3);
  }
}
