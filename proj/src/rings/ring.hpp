#ifndef AW_RINGS_RING_HPP
#define AW_RINGS_RING_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rings/exponent.hpp"

namespace aw {

class RingElement;

enum class RingKind {
  Integer,   // Z
  Residue,   // Z/m, m >= 2
  Monomial,  // (Z/p^a)[t^{1/p^level}], optionally mod a monomial ideal (t^q1,...)
  Product,   // R1 x ... x Rk
  Quotient,  // F_p[t^{1/p^level}] / (g) for a single non-monomial g
};

struct RingSpecData;

// Immutable description of a supported ring; cheap to copy (shared data).
class RingSpec {
public:
  RingSpec() = default;

  static RingSpec integers();
  static RingSpec residue(mpz_class m);
  static RingSpec monomial_algebra(unsigned p, unsigned level, unsigned coeff_pow = 1,
                                   std::vector<ExponentQ> quotient = {});
  static RingSpec product(std::vector<RingSpec> factors);
  static RingSpec quotient(const RingSpec& base, const RingElement& modulus);

  bool valid() const { return m_data != nullptr; }
  RingKind kind() const;

  const mpz_class& modulus() const;               // Residue
  unsigned p() const;                             // Monomial/Quotient
  unsigned level() const;                         // Monomial/Quotient
  unsigned coeff_pow() const;                     // Monomial (a in Z/p^a)
  const std::vector<ExponentQ>& quotient_exps() const;  // Monomial
  // Smallest quotient exponent, if any (the monomial ideal is principal).
  std::optional<ExponentQ> quotient_bound() const;
  const std::vector<RingSpec>& factors() const;   // Product
  const RingSpec& base() const;                   // Quotient
  const RingElement& quot_modulus() const;        // Quotient

  bool operator==(const RingSpec& o) const;
  bool operator!=(const RingSpec& o) const { return !(*this == o); }

  mpz_class characteristic() const;
  // True iff the characteristic is a prime p (Frobenius available).
  bool char_p(unsigned* p_out = nullptr) const;

  bool is_finite() const;
  mpz_class size() const;
  std::vector<RingElement> enumerate() const;

  // Monomial algebras: same ring data re-indexed at a deeper level.
  RingSpec at_level(unsigned new_level) const;

  std::string str() const;
  static RingSpec parse(const std::string& text);

private:
  explicit RingSpec(std::shared_ptr<const RingSpecData> d) : m_data(std::move(d)) {}
  std::shared_ptr<const RingSpecData> m_data;
};

using MonoMap = std::map<ExponentQ, mpz_class, ExponentLess>;

// Element of a RingSpec in canonical form.
class RingElement {
public:
  RingElement() = default;

  static RingElement zero(const RingSpec& s);
  static RingElement one(const RingSpec& s);
  static RingElement from_int(const RingSpec& s, const mpz_class& n);
  // c * t^e in a monomial algebra or quotient.
  static RingElement monomial(const RingSpec& s, const ExponentQ& e, const mpz_class& c);
  static RingElement make_product(const RingSpec& s, std::vector<RingElement> comps);

  const RingSpec& spec() const { return m_spec; }
  bool is_zero() const;
  bool is_one() const;

  static RingElement add(const RingElement& a, const RingElement& b);
  static RingElement neg(const RingElement& a);
  static RingElement sub(const RingElement& a, const RingElement& b);
  static RingElement mul(const RingElement& a, const RingElement& b);
  static bool eq(const RingElement& a, const RingElement& b);
  RingElement pow(unsigned long e) const;

  bool operator==(const RingElement& o) const { return eq(*this, o); }
  bool operator!=(const RingElement& o) const { return !eq(*this, o); }
  bool operator<(const RingElement& o) const;  // canonical total order (for sets)

  // x -> x^p; requires char p.
  RingElement frobenius() const;
  // Monomial algebras: reinterpret at a deeper level (injective hom).
  RingElement level_embed(unsigned new_level) const;

  const mpz_class& int_value() const { return m_int; }       // Integer/Residue
  const MonoMap& mono() const { return m_mono; }             // Monomial/Quotient
  const std::vector<RingElement>& components() const { return m_comps; }  // Product

  std::string str() const;
  static RingElement parse(const RingSpec& s, const std::string& text);

private:
  friend class RingSpec;
  RingSpec m_spec;
  mpz_class m_int;
  MonoMap m_mono{ExponentLess{2}};
  std::vector<RingElement> m_comps;

  void canonicalize();
};

void require_same_spec(const RingElement& a, const RingElement& b, const char* op);

}  // namespace aw

#endif
