#ifndef AW_TESTS_HELPERS_HPP
#define AW_TESTS_HELPERS_HPP

#include <random>

#include "rings/ring.hpp"

namespace aw::testing {

// Deterministic random elements for property checks.
inline RingElement random_element(const RingSpec& s, std::mt19937_64& rng, int size_hint = 4) {
  switch (s.kind()) {
    case RingKind::Integer: {
      std::uniform_int_distribution<long> d(-50, 50);
      return RingElement::from_int(s, mpz_class(d(rng)));
    }
    case RingKind::Residue: {
      std::uniform_int_distribution<unsigned long> d(0, s.modulus().get_ui() - 1);
      return RingElement::from_int(s, mpz_class(d(rng)));
    }
    case RingKind::Monomial:
    case RingKind::Quotient: {
      std::uniform_int_distribution<int> nterms(0, size_hint);
      std::uniform_int_distribution<unsigned long> num(0, 6);
      std::uniform_int_distribution<unsigned> den(0, s.level());
      mpz_class cmax = s.kind() == RingKind::Monomial ? pow_ui(s.p(), s.coeff_pow()) : mpz_class(s.p());
      std::uniform_int_distribution<unsigned long> coef(0, cmax.get_ui() - 1);
      RingElement e = RingElement::zero(s);
      int k = nterms(rng);
      for (int i = 0; i < k; ++i) {
        ExponentQ ex(mpz_class(num(rng)), den(rng), s.p());
        e = RingElement::add(e, RingElement::monomial(s, ex, mpz_class(coef(rng))));
      }
      return e;
    }
    case RingKind::Product: {
      std::vector<RingElement> comps;
      for (const auto& f : s.factors()) comps.push_back(random_element(f, rng, size_hint));
      return RingElement::make_product(s, std::move(comps));
    }
  }
  return RingElement::zero(s);
}

}  // namespace aw::testing

#endif
