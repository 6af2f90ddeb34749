#ifndef AW_RINGS_ZPOLY_HPP
#define AW_RINGS_ZPOLY_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "rings/ring.hpp"

namespace aw {

// Sparse multivariate polynomial over Z.  Keys are exponent vectors with
// trailing zeros trimmed, so the same variable means the same thing across
// polynomials with different variable counts.
class ZPoly {
public:
  using Expo = std::vector<unsigned>;

  ZPoly() = default;

  static ZPoly constant(const mpz_class& c);
  static ZPoly variable(unsigned v);

  bool is_zero() const { return m_terms.empty(); }
  const std::map<Expo, mpz_class>& terms() const { return m_terms; }

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator-() const;
  ZPoly operator*(const ZPoly& o) const;
  bool operator==(const ZPoly& o) const { return m_terms == o.m_terms; }
  bool operator!=(const ZPoly& o) const { return !(*this == o); }

  ZPoly pow(unsigned long e) const;
  ZPoly scaled(const mpz_class& c) const;

  // Exact division of every coefficient by k; throws IndivisibleError with the
  // offending monomial otherwise.
  ZPoly exact_div_int(const mpz_class& k) const;

  // Substitute variables by other polynomials (vars beyond args map to 0).
  ZPoly compose(const std::vector<ZPoly>& args) const;

  // Evaluate in a ring: vars beyond args treated as an error.
  RingElement eval(const RingSpec& s, const std::vector<RingElement>& args) const;

  // Evaluate over Z directly.
  mpz_class eval_int(const std::vector<mpz_class>& args) const;

  unsigned var_count() const;
  std::string str(const std::string& xname = "x") const;

  void add_term(const Expo& e, const mpz_class& c);

private:
  std::map<Expo, mpz_class> m_terms;
};

}  // namespace aw

#endif
