#include "rings/exponent.hpp"

#include "rings/errors.hpp"

namespace aw {

mpz_class pow_ui(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

ExponentQ::ExponentQ(mpz_class num, unsigned den_pow, unsigned p)
    : m_num(std::move(num)), m_den_pow(den_pow) {
  if (m_num < 0) throw StructuralError("negative exponent");
  if (m_num == 0) {
    m_den_pow = 0;
    return;
  }
  while (m_den_pow > 0 && mpz_divisible_ui_p(m_num.get_mpz_t(), p)) {
    m_num /= p;
    --m_den_pow;
  }
}

int ExponentQ::cmp(const ExponentQ& a, const ExponentQ& b, unsigned p) {
  // a.num / p^a.den  vs  b.num / p^b.den : cross-multiply.
  mpz_class lhs = a.m_num * pow_ui(p, b.m_den_pow);
  mpz_class rhs = b.m_num * pow_ui(p, a.m_den_pow);
  return ::cmp(lhs, rhs);
}

ExponentQ ExponentQ::add(const ExponentQ& a, const ExponentQ& b, unsigned p) {
  unsigned d = std::max(a.m_den_pow, b.m_den_pow);
  mpz_class n = a.m_num * pow_ui(p, d - a.m_den_pow) + b.m_num * pow_ui(p, d - b.m_den_pow);
  return ExponentQ(std::move(n), d, p);
}

ExponentQ ExponentQ::sub(const ExponentQ& a, const ExponentQ& b, unsigned p) {
  unsigned d = std::max(a.m_den_pow, b.m_den_pow);
  mpz_class n = a.m_num * pow_ui(p, d - a.m_den_pow) - b.m_num * pow_ui(p, d - b.m_den_pow);
  if (n < 0) throw StructuralError("exponent subtraction went negative");
  return ExponentQ(std::move(n), d, p);
}

ExponentQ ExponentQ::mul_int(const ExponentQ& a, const mpz_class& k, unsigned p) {
  return ExponentQ(a.m_num * k, a.m_den_pow, p);
}

ExponentQ ExponentQ::times_p(const ExponentQ& a, unsigned p) {
  if (a.m_den_pow > 0) return ExponentQ(a.m_num, a.m_den_pow - 1, p);
  return ExponentQ(a.m_num * p, 0, p);
}

std::string ExponentQ::str(unsigned p) const {
  if (m_den_pow == 0) return m_num.get_str();
  return m_num.get_str() + "/" + pow_ui(p, m_den_pow).get_str();
}

}  // namespace aw
