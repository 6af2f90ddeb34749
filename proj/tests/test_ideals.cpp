#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ideals/ideal.hpp"
#include "rings/errors.hpp"

using namespace aw;

namespace {
RingElement mono(const RingSpec& s, long num, unsigned dp, long c = 1) {
  return RingElement::monomial(s, ExponentQ(num, dp, s.p()), c);
}
}  // namespace

TEST_CASE("ideal product and membership over F_2[s]") {
  RingSpec R = RingSpec::monomial_algebra(2, 0);
  FGIdeal s_ideal(R, {mono(R, 1, 0)});
  FGIdeal sq = FGIdeal::product(s_ideal, s_ideal);
  CHECK(sq.contains(mono(R, 2, 0)));
  CHECK(!sq.contains(mono(R, 1, 0)));
  CHECK(s_ideal.contains(mono(R, 3, 0)));  // s^3 in (s^2)? no -- s^3 in (s): yes
  FGIdeal s2(R, {mono(R, 2, 0)});
  CHECK(s2.contains(mono(R, 3, 0)));  // polynomial division
}

TEST_CASE("ideal equality is permutation invariant") {
  RingSpec R = RingSpec::monomial_algebra(2, 0);
  FGIdeal a(R, {mono(R, 1, 0), mono(R, 2, 0)});
  FGIdeal b(R, {mono(R, 2, 0), mono(R, 1, 0)});
  CHECK(FGIdeal::equal(a, b));
  FGIdeal c(R, {mono(R, 2, 0)});
  CHECK(!FGIdeal::equal(a, c));
}

TEST_CASE("ideal ops in finite rings") {
  RingSpec R = RingSpec::residue(8);
  FGIdeal two(R, {RingElement::from_int(R, 2)});
  FGIdeal four = FGIdeal::product(two, two);
  CHECK(four.contains(RingElement::from_int(R, 4)));
  CHECK(!four.contains(RingElement::from_int(R, 2)));
  CHECK(FGIdeal::equal(FGIdeal::sum(two, four), two));
  CHECK(FGIdeal::equal(FGIdeal::power(two, 3), FGIdeal(R, {})));
}

TEST_CASE("colimit ideal m and its structure") {
  ColimitIdeal m = ColimitIdeal::standard_m(2, 4);
  CHECK(m.window() == 4);
  CHECK(m.level(0).gens()[0].str() == "t^1");
  CHECK(m.level(2).gens()[0].str() == "t^(1/4)");
  // compatibility was checked on construction; a bad family throws
  RingSpec base = RingSpec::monomial_algebra(2, 0);
  std::vector<FGIdeal> bad;
  bad.emplace_back(base, std::vector<RingElement>{mono(base, 1, 0)});
  RingSpec r1 = base.at_level(1);
  bad.emplace_back(r1, std::vector<RingElement>{mono(r1, 2, 0)});  // t^2 does not absorb t
  CHECK_THROWS_AS(ColimitIdeal(base, bad), StructuralError);
}

TEST_CASE("condition B: standard m holds with cross-level certificates") {
  ColimitIdeal m = ColimitIdeal::standard_m(2, 4);
  auto res = condition_b_check(m, 2);
  CHECK(res.verdict == Verdict3::Holds);
  REQUIRE(res.certificate["certificates"].size() > 0);
  // t^{1/2^N} = (t^{1/2^{N+1}})^2: the certificate points one level deeper
  auto c0 = res.certificate["certificates"][0];
  CHECK(c0["power_level"].get<int>() >= c0["level"].get<int>());
  CHECK(res.certificate["verified_through_level"].get<int>() == 3);

  auto res3 = condition_b_check(m, 3);
  CHECK(res3.verdict == Verdict3::Holds);
  CHECK(res3.certificate["verified_through_level"].get<int>() == 2);
}

TEST_CASE("condition B: idempotent generator in F_2 x F_2") {
  RingSpec R = RingSpec::product({RingSpec::residue(2), RingSpec::residue(2)});
  RingElement e = RingElement::parse(R, "(1 | 0)");
  FGIdeal I(R, {e});
  auto res = condition_b_check(I, 2);
  CHECK(res.verdict == Verdict3::Holds);
}

TEST_CASE("condition B: (s) fails in a single level") {
  RingSpec R = RingSpec::monomial_algebra(2, 0);
  FGIdeal I(R, {mono(R, 1, 0)});
  auto res = condition_b_check(I, 2);
  CHECK(res.verdict == Verdict3::Fails);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->str() == "t^1");
}

TEST_CASE("condition B: window exhaustion is inconclusive, not a failure") {
  // family I_N = (t) at every level: t needs t = x^2 with x = t^{1/2} in the
  // ideal, but the ideal never contains fractional powers
  RingSpec base = RingSpec::monomial_algebra(2, 0);
  std::vector<FGIdeal> levels;
  for (unsigned N = 0; N <= 3; ++N) {
    RingSpec rn = base.at_level(N);
    levels.emplace_back(rn, std::vector<RingElement>{mono(rn, 1, 0)});
  }
  ColimitIdeal I(base, levels);
  auto res = condition_b_check(I, 2);
  CHECK(res.verdict == Verdict3::InconclusiveAtWindow);
}

TEST_CASE("idempotency checks") {
  ColimitIdeal m = ColimitIdeal::standard_m(2, 3);
  CHECK(idempotency_check(m).verdict == Verdict3::Holds);

  RingSpec R = RingSpec::monomial_algebra(2, 0);
  CHECK(idempotency_check(FGIdeal(R, {})).verdict == Verdict3::Holds);  // zero ideal

  RingSpec Q = RingSpec::monomial_algebra(2, 0, 1, {ExponentQ(4, 0, 2)});  // F_2[s]/(s^4)
  FGIdeal I(Q, {mono(Q, 1, 0)});
  auto res = idempotency_check(I);
  CHECK(res.verdict == Verdict3::Fails);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->str() == "t^1");
}

TEST_CASE("verdict monotonicity in the window") {
  // growing the window never flips Holds to Fails/Inconclusive
  for (unsigned w = 2; w <= 5; ++w) {
    ColimitIdeal m = ColimitIdeal::standard_m(2, w);
    CHECK(idempotency_check(m).verdict == Verdict3::Holds);
    CHECK(condition_b_check(m, 2).verdict == Verdict3::Holds);
  }
}
