#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "rings/errors.hpp"
#include "rings/ring.hpp"

using namespace aw;

TEST_CASE("monomial exponent arithmetic") {
  RingSpec R = RingSpec::monomial_algebra(2, 2);  // F_2[t^{1/4}]
  RingElement a = RingElement::monomial(R, ExponentQ(1, 1, 2), 1);  // t^{1/2}
  RingElement b = RingElement::monomial(R, ExponentQ(1, 2, 2), 1);  // t^{1/4}
  RingElement c = RingElement::mul(a, b);
  CHECK(c == RingElement::monomial(R, ExponentQ(3, 2, 2), 1));  // t^{3/4}
  CHECK(c.str() == "t^(3/4)");
}

TEST_CASE("residue arithmetic") {
  RingSpec R = RingSpec::residue(4);
  RingElement three = RingElement::from_int(R, 3);
  CHECK(RingElement::add(three, three) == RingElement::from_int(R, 2));
}

TEST_CASE("monomial quotient arithmetic") {
  // F_2[s]/(s^3): (1+s)^2 = 1 + s^2
  RingSpec R = RingSpec::monomial_algebra(2, 0, 1, {ExponentQ(3, 0, 2)});
  RingElement one_plus_s =
      RingElement::add(RingElement::one(R), RingElement::monomial(R, ExponentQ(1, 0, 2), 1));
  RingElement sq = RingElement::mul(one_plus_s, one_plus_s);
  RingElement expect =
      RingElement::add(RingElement::one(R), RingElement::monomial(R, ExponentQ(2, 0, 2), 1));
  CHECK(sq == expect);
}

TEST_CASE("mismatched rings rejected") {
  RingSpec R = RingSpec::residue(4), S = RingSpec::residue(5);
  CHECK_THROWS_AS(RingElement::add(RingElement::one(R), RingElement::one(S)), StructuralError);
}

TEST_CASE("frobenius on monomial algebras") {
  RingSpec R = RingSpec::monomial_algebra(2, 2);  // F_2[t^{1/4}]
  RingElement t14 = RingElement::monomial(R, ExponentQ(1, 2, 2), 1);
  CHECK(t14.frobenius() == RingElement::monomial(R, ExponentQ(1, 1, 2), 1));

  RingSpec R2 = RingSpec::monomial_algebra(2, 1);  // F_2[t^{1/2}]
  RingElement x =
      RingElement::add(RingElement::one(R2), RingElement::monomial(R2, ExponentQ(1, 1, 2), 1));
  RingElement expect =
      RingElement::add(RingElement::one(R2), RingElement::monomial(R2, ExponentQ(1, 0, 2), 1));
  CHECK(x.frobenius() == expect);

  RingSpec Q = RingSpec::monomial_algebra(2, 0, 1, {ExponentQ(2, 0, 2)});  // F_2[u]/(u^2)
  RingElement u = RingElement::monomial(Q, ExponentQ(1, 0, 2), 1);
  CHECK(u.frobenius().is_zero());
}

TEST_CASE("frobenius requires characteristic p") {
  RingSpec R = RingSpec::residue(4);
  CHECK_THROWS_AS(RingElement::one(R).frobenius(), UnsupportedError);
}

TEST_CASE("level embedding") {
  RingSpec R1 = RingSpec::monomial_algebra(2, 1);
  RingElement t12 = RingElement::monomial(R1, ExponentQ(1, 1, 2), 1);
  RingElement e = t12.level_embed(2);
  CHECK(e.spec().level() == 2);
  CHECK(e == RingElement::monomial(e.spec(), ExponentQ(1, 1, 2), 1));

  RingSpec R0 = RingSpec::monomial_algebra(2, 0);
  RingElement x =
      RingElement::add(RingElement::one(R0), RingElement::monomial(R0, ExponentQ(1, 0, 2), 1));
  RingElement y = x.level_embed(3);
  CHECK(y.str() == "1+t^1");
}

TEST_CASE("ring axioms on random elements") {
  std::vector<RingSpec> specs = {
      RingSpec::integers(),
      RingSpec::residue(4),
      RingSpec::residue(9),
      RingSpec::monomial_algebra(2, 2),
      RingSpec::monomial_algebra(3, 1, 2),
      RingSpec::monomial_algebra(2, 1, 1, {ExponentQ(2, 0, 2)}),
      RingSpec::product({RingSpec::residue(4), RingSpec::monomial_algebra(2, 0)}),
  };
  std::mt19937_64 rng(12345);
  for (const auto& S : specs) {
    for (int it = 0; it < 60; ++it) {
      RingElement a = testing::random_element(S, rng);
      RingElement b = testing::random_element(S, rng);
      RingElement c = testing::random_element(S, rng);
      CHECK(RingElement::add(a, b) == RingElement::add(b, a));
      CHECK(RingElement::mul(a, b) == RingElement::mul(b, a));
      CHECK(RingElement::add(RingElement::add(a, b), c) == RingElement::add(a, RingElement::add(b, c)));
      CHECK(RingElement::mul(RingElement::mul(a, b), c) == RingElement::mul(a, RingElement::mul(b, c)));
      CHECK(RingElement::mul(a, RingElement::add(b, c)) ==
            RingElement::add(RingElement::mul(a, b), RingElement::mul(a, c)));
      CHECK(RingElement::add(a, RingElement::zero(S)) == a);
      CHECK(RingElement::mul(a, RingElement::one(S)) == a);
      CHECK(RingElement::add(a, RingElement::neg(a)).is_zero());
    }
  }
}

TEST_CASE("frobenius is a ring homomorphism") {
  std::vector<RingSpec> specs = {
      RingSpec::monomial_algebra(2, 2),
      RingSpec::monomial_algebra(3, 1),
      RingSpec::monomial_algebra(2, 1, 1, {ExponentQ(2, 0, 2)}),
      RingSpec::residue(5),
  };
  std::mt19937_64 rng(777);
  for (const auto& S : specs) {
    for (int it = 0; it < 40; ++it) {
      RingElement a = testing::random_element(S, rng);
      RingElement b = testing::random_element(S, rng);
      CHECK(RingElement::add(a, b).frobenius() == RingElement::add(a.frobenius(), b.frobenius()));
      CHECK(RingElement::mul(a, b).frobenius() == RingElement::mul(a.frobenius(), b.frobenius()));
    }
  }
}

TEST_CASE("level embed commutes with arithmetic and frobenius") {
  RingSpec R = RingSpec::monomial_algebra(2, 2);
  std::mt19937_64 rng(31);
  for (int it = 0; it < 40; ++it) {
    RingElement a = testing::random_element(R, rng);
    RingElement b = testing::random_element(R, rng);
    CHECK(RingElement::add(a, b).level_embed(4) ==
          RingElement::add(a.level_embed(4), b.level_embed(4)));
    CHECK(RingElement::mul(a, b).level_embed(4) ==
          RingElement::mul(a.level_embed(4), b.level_embed(4)));
    CHECK(a.frobenius().level_embed(4) == a.level_embed(4).frobenius());
  }
}

TEST_CASE("spec parse/print round trip") {
  std::vector<std::string> texts = {
      "integers",
      "residue{m=4}",
      "monomial_algebra{p=2, level=3}",
      "monomial_algebra{p=2, level=3, quotient=[t^1]}",
      "monomial_algebra{p=2, level=1, coeff_pow=2}",
      "product{residue{m=4}; residue{m=2}}",
      "quotient{base=monomial_algebra{p=2, level=0}, mod=1+t^1+t^2}",
  };
  for (const auto& t : texts) {
    RingSpec s = RingSpec::parse(t);
    CHECK(RingSpec::parse(s.str()) == s);
  }
}

TEST_CASE("element parse and canonical print") {
  RingSpec R = RingSpec::monomial_algebra(2, 2);
  RingElement e = RingElement::parse(R, "t^(3/4) + 1 + t^2");
  CHECK(e.str() == "1+t^(3/4)+t^2");  // ascending exponent order
  CHECK(RingElement::parse(R, e.str()) == e);

  RingSpec P = RingSpec::product({RingSpec::residue(4), RingSpec::residue(2)});
  RingElement pe = RingElement::parse(P, "(3 | 1)");
  CHECK(pe.str() == "(3 | 1)");

  RingSpec F4 = RingSpec::parse("quotient{base=monomial_algebra{p=2, level=0}, mod=1+t^1+t^2}");
  RingElement u = RingElement::parse(F4, "t");
  RingElement sq = RingElement::mul(u, u);  // u^2 = u + 1
  CHECK(sq == RingElement::parse(F4, "1+t"));
  CHECK(F4.size() == 4);
}

TEST_CASE("finite enumeration") {
  RingSpec Q = RingSpec::monomial_algebra(2, 0, 1, {ExponentQ(2, 0, 2)});
  auto elems = Q.enumerate();
  CHECK(elems.size() == 4);
  RingSpec P = RingSpec::product({RingSpec::residue(4), RingSpec::residue(4)});
  CHECK(P.enumerate().size() == 16);
  CHECK(P.size() == 16);
}

TEST_CASE("canonicalization is idempotent via parse") {
  RingSpec R = RingSpec::monomial_algebra(2, 1);
  std::mt19937_64 rng(99);
  for (int it = 0; it < 30; ++it) {
    RingElement a = testing::random_element(R, rng);
    RingElement reparsed = RingElement::parse(R, a.str());
    CHECK(reparsed == a);
    CHECK(reparsed.str() == a.str());
  }
}
