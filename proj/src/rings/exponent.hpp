#ifndef AW_RINGS_EXPONENT_HPP
#define AW_RINGS_EXPONENT_HPP

#include <gmpxx.h>

#include <string>

namespace aw {

// Nonnegative rational with p-power denominator: num / p^denPow, kept reduced
// (denPow == 0 or p does not divide num).  These are the exponents of the
// fractional monomial algebras; comparison and arithmetic cross-multiply by
// powers of p instead of normalizing through mpq.
class ExponentQ {
public:
  ExponentQ() : m_num(0), m_den_pow(0) {}
  ExponentQ(mpz_class num, unsigned den_pow, unsigned p);

  const mpz_class& num() const { return m_num; }
  unsigned den_pow() const { return m_den_pow; }

  bool is_zero() const { return m_num == 0; }
  bool is_integral() const { return m_den_pow == 0; }

  // Sign of a - b.
  static int cmp(const ExponentQ& a, const ExponentQ& b, unsigned p);

  static ExponentQ add(const ExponentQ& a, const ExponentQ& b, unsigned p);
  // Requires a >= b.
  static ExponentQ sub(const ExponentQ& a, const ExponentQ& b, unsigned p);
  static ExponentQ mul_int(const ExponentQ& a, const mpz_class& k, unsigned p);
  // a * p (Frobenius direction).
  static ExponentQ times_p(const ExponentQ& a, unsigned p);

  bool operator==(const ExponentQ& o) const {
    return m_num == o.m_num && m_den_pow == o.m_den_pow;
  }
  bool operator!=(const ExponentQ& o) const { return !(*this == o); }

  // "3/4", "1", "0"; denominator printed as a plain integer p^denPow.
  std::string str(unsigned p) const;

private:
  mpz_class m_num;
  unsigned m_den_pow;
};

// Ordering functor for exponent-keyed maps; carries the prime.
struct ExponentLess {
  unsigned p;
  bool operator()(const ExponentQ& a, const ExponentQ& b) const {
    return ExponentQ::cmp(a, b, p) < 0;
  }
};

mpz_class pow_ui(const mpz_class& base, unsigned long e);

}  // namespace aw

#endif
