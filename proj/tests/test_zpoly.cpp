#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rings/errors.hpp"
#include "rings/zpoly.hpp"

using namespace aw;

TEST_CASE("exact division by an integer") {
  ZPoly x = ZPoly::variable(0), y = ZPoly::variable(1);
  // (2x + 4y)/2 = x + 2y
  ZPoly f = x.scaled(2) + y.scaled(4);
  CHECK(f.exact_div_int(2) == x + y.scaled(2));

  // (x^2 + y^2 - (x+y)^2)/2 = -xy
  ZPoly g = x.pow(2) + y.pow(2) - (x + y).pow(2);
  CHECK(g.exact_div_int(2) == -(x * y));

  // (x^3 + y^3 - (x+y)^3)/2 has coefficient 3: indivisible
  ZPoly h = x.pow(3) + y.pow(3) - (x + y).pow(3);
  CHECK_THROWS_AS(h.exact_div_int(2), IndivisibleError);
}

TEST_CASE("indivisible error carries the offending monomial") {
  ZPoly x = ZPoly::variable(0), y = ZPoly::variable(1);
  ZPoly h = x.pow(3) + y.pow(3) - (x + y).pow(3);
  try {
    h.exact_div_int(2);
    CHECK(false);
  } catch (const IndivisibleError& e) {
    CHECK(!e.monomial().empty());
  }
}

TEST_CASE("compose and evaluate") {
  ZPoly x = ZPoly::variable(0), y = ZPoly::variable(1);
  ZPoly f = x * x + y;
  ZPoly g = f.compose({y, x});  // y^2 + x
  CHECK(g == y * y + x);
  CHECK(f.eval_int({mpz_class(3), mpz_class(4)}) == 13);

  RingSpec R = RingSpec::residue(5);
  RingElement v = f.eval(R, {RingElement::from_int(R, 3), RingElement::from_int(R, 4)});
  CHECK(v == RingElement::from_int(R, 3));
}

TEST_CASE("polynomial arithmetic sanity") {
  ZPoly x = ZPoly::variable(0), y = ZPoly::variable(1);
  CHECK((x + y) * (x - y) == x.pow(2) - y.pow(2));
  CHECK((x + y).pow(2) == x.pow(2) + (x * y).scaled(2) + y.pow(2));
  CHECK((x - x).is_zero());
}
