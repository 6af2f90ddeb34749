#include "rings/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "rings/errors.hpp"

namespace aw {

struct RingSpecData {
  RingKind kind;
  mpz_class modulus;             // Residue
  unsigned p = 0;                // Monomial/Quotient
  unsigned level = 0;            // Monomial/Quotient
  unsigned coeff_pow = 1;        // Monomial
  std::vector<ExponentQ> quotient;
  std::vector<RingSpec> factors;
  RingSpec base;                      // Quotient
  std::shared_ptr<RingElement> qmod;  // Quotient modulus (over base)
};

RingSpec RingSpec::integers() {
  auto d = std::make_shared<RingSpecData>();
  d->kind = RingKind::Integer;
  return RingSpec(std::move(d));
}

RingSpec RingSpec::residue(mpz_class m) {
  if (m < 2) throw StructuralError("residue modulus must be >= 2");
  auto d = std::make_shared<RingSpecData>();
  d->kind = RingKind::Residue;
  d->modulus = std::move(m);
  return RingSpec(std::move(d));
}

RingSpec RingSpec::monomial_algebra(unsigned p, unsigned level, unsigned coeff_pow,
                                    std::vector<ExponentQ> quotient) {
  if (p < 2) throw StructuralError("monomial algebra needs a prime p >= 2");
  if (coeff_pow < 1) throw StructuralError("coefficient exponent must be >= 1");
  for (const auto& q : quotient)
    if (q.den_pow() > level) throw StructuralError("quotient exponent finer than the level");
  std::sort(quotient.begin(), quotient.end(),
            [p](const ExponentQ& a, const ExponentQ& b) { return ExponentQ::cmp(a, b, p) < 0; });
  quotient.erase(std::unique(quotient.begin(), quotient.end()), quotient.end());
  auto d = std::make_shared<RingSpecData>();
  d->kind = RingKind::Monomial;
  d->p = p;
  d->level = level;
  d->coeff_pow = coeff_pow;
  d->quotient = std::move(quotient);
  return RingSpec(std::move(d));
}

RingSpec RingSpec::product(std::vector<RingSpec> factors) {
  if (factors.empty()) throw StructuralError("product of rings must be nonempty");
  auto d = std::make_shared<RingSpecData>();
  d->kind = RingKind::Product;
  d->factors = std::move(factors);
  return RingSpec(std::move(d));
}

RingSpec RingSpec::quotient(const RingSpec& base, const RingElement& modulus) {
  if (base.kind() != RingKind::Monomial || !base.quotient_exps().empty() || base.coeff_pow() != 1)
    throw UnsupportedError("quotient base must be a free monomial algebra over F_p");
  if (modulus.spec() != base) throw StructuralError("quotient modulus lives in the wrong ring");
  if (modulus.is_zero()) throw StructuralError("quotient modulus is zero");
  auto d = std::make_shared<RingSpecData>();
  d->kind = RingKind::Quotient;
  d->p = base.p();
  d->level = base.level();
  d->base = base;
  d->qmod = std::make_shared<RingElement>(modulus);
  return RingSpec(std::move(d));
}

RingKind RingSpec::kind() const { return m_data->kind; }
const mpz_class& RingSpec::modulus() const { return m_data->modulus; }
unsigned RingSpec::p() const { return m_data->p; }
unsigned RingSpec::level() const { return m_data->level; }
unsigned RingSpec::coeff_pow() const { return m_data->coeff_pow; }
const std::vector<ExponentQ>& RingSpec::quotient_exps() const { return m_data->quotient; }
const std::vector<RingSpec>& RingSpec::factors() const { return m_data->factors; }
const RingSpec& RingSpec::base() const { return m_data->base; }
const RingElement& RingSpec::quot_modulus() const { return *m_data->qmod; }

std::optional<ExponentQ> RingSpec::quotient_bound() const {
  if (m_data->quotient.empty()) return std::nullopt;
  return m_data->quotient.front();  // sorted ascending; the ideal is (t^min)
}

bool RingSpec::operator==(const RingSpec& o) const {
  if (m_data == o.m_data) return true;
  if (!m_data || !o.m_data) return false;
  if (m_data->kind != o.m_data->kind) return false;
  switch (m_data->kind) {
    case RingKind::Integer:
      return true;
    case RingKind::Residue:
      return m_data->modulus == o.m_data->modulus;
    case RingKind::Monomial:
      return m_data->p == o.m_data->p && m_data->level == o.m_data->level &&
             m_data->coeff_pow == o.m_data->coeff_pow && m_data->quotient == o.m_data->quotient;
    case RingKind::Product:
      return m_data->factors == o.m_data->factors;
    case RingKind::Quotient:
      return m_data->base == o.m_data->base &&
             RingElement::eq(*m_data->qmod, *o.m_data->qmod);
  }
  return false;
}

mpz_class RingSpec::characteristic() const {
  switch (kind()) {
    case RingKind::Integer:
      return 0;
    case RingKind::Residue:
      return m_data->modulus;
    case RingKind::Monomial:
      return pow_ui(m_data->p, m_data->coeff_pow);
    case RingKind::Quotient:
      return m_data->p;
    case RingKind::Product: {
      mpz_class c = m_data->factors.front().characteristic();
      for (size_t i = 1; i < m_data->factors.size(); ++i) {
        mpz_class ci = m_data->factors[i].characteristic();
        if (c == 0 || ci == 0) return 0;
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), c.get_mpz_t(), ci.get_mpz_t());
        c = l;
      }
      return c;
    }
  }
  return 0;
}

bool RingSpec::char_p(unsigned* p_out) const {
  mpz_class c = characteristic();
  if (c == 0 || mpz_probab_prime_p(c.get_mpz_t(), 30) == 0) return false;
  if (p_out) *p_out = static_cast<unsigned>(c.get_ui());
  return true;
}

bool RingSpec::is_finite() const {
  switch (kind()) {
    case RingKind::Integer:
      return false;
    case RingKind::Residue:
    case RingKind::Quotient:
      return true;
    case RingKind::Monomial:
      return !m_data->quotient.empty();
    case RingKind::Product:
      return std::all_of(m_data->factors.begin(), m_data->factors.end(),
                         [](const RingSpec& f) { return f.is_finite(); });
  }
  return false;
}

namespace {

// Number of exponent slots below the quotient bound: q * p^level entries.
unsigned long monomial_slot_count(const RingSpec& s) {
  ExponentQ q = *s.quotient_bound();
  mpz_class n = q.num() * pow_ui(s.p(), s.level() - q.den_pow());
  return n.get_ui();
}

long quotient_poly_degree(const RingSpec& s) {
  // s_L-degree of the quotient modulus.
  const MonoMap& m = s.quot_modulus().mono();
  const ExponentQ& top = m.rbegin()->first;
  mpz_class d = top.num() * pow_ui(s.p(), s.level() - top.den_pow());
  return d.get_si();
}

}  // namespace

mpz_class RingSpec::size() const {
  switch (kind()) {
    case RingKind::Residue:
      return m_data->modulus;
    case RingKind::Monomial: {
      if (m_data->quotient.empty()) throw UnsupportedError("infinite monomial algebra");
      mpz_class coeffs = pow_ui(m_data->p, m_data->coeff_pow);
      return pow_ui(coeffs, monomial_slot_count(*this));
    }
    case RingKind::Quotient:
      return pow_ui(m_data->p, quotient_poly_degree(*this));
    case RingKind::Product: {
      mpz_class s = 1;
      for (const auto& f : m_data->factors) s *= f.size();
      return s;
    }
    default:
      throw UnsupportedError("size of an infinite ring");
  }
}

std::vector<RingElement> RingSpec::enumerate() const {
  std::vector<RingElement> out;
  switch (kind()) {
    case RingKind::Residue: {
      for (mpz_class i = 0; i < m_data->modulus; ++i) out.push_back(RingElement::from_int(*this, i));
      return out;
    }
    case RingKind::Monomial:
    case RingKind::Quotient: {
      unsigned p = m_data->p;
      unsigned long slots = kind() == RingKind::Monomial
                                ? monomial_slot_count(*this)
                                : static_cast<unsigned long>(quotient_poly_degree(*this));
      mpz_class coeff_mod =
          kind() == RingKind::Monomial ? pow_ui(p, m_data->coeff_pow) : mpz_class(p);
      unsigned long cm = coeff_mod.get_ui();
      std::vector<unsigned long> digits(slots, 0);
      while (true) {
        RingElement e = RingElement::zero(*this);
        for (unsigned long k = 0; k < slots; ++k) {
          if (digits[k] == 0) continue;
          ExponentQ ek(mpz_class(k), m_data->level, p);
          e = RingElement::add(e, RingElement::monomial(*this, ek, mpz_class(digits[k])));
        }
        out.push_back(std::move(e));
        unsigned long j = 0;
        for (; j < slots; ++j) {
          if (++digits[j] < cm) break;
          digits[j] = 0;
        }
        if (j == slots) break;
      }
      return out;
    }
    case RingKind::Product: {
      std::vector<std::vector<RingElement>> parts;
      for (const auto& f : m_data->factors) parts.push_back(f.enumerate());
      std::vector<size_t> idx(parts.size(), 0);
      while (true) {
        std::vector<RingElement> comps;
        for (size_t i = 0; i < parts.size(); ++i) comps.push_back(parts[i][idx[i]]);
        out.push_back(RingElement::make_product(*this, std::move(comps)));
        size_t j = 0;
        for (; j < parts.size(); ++j) {
          if (++idx[j] < parts[j].size()) break;
          idx[j] = 0;
        }
        if (j == parts.size()) break;
      }
      return out;
    }
    default:
      throw UnsupportedError("cannot enumerate an infinite ring");
  }
}

RingSpec RingSpec::at_level(unsigned new_level) const {
  if (kind() != RingKind::Monomial) throw UnsupportedError("at_level needs a monomial algebra");
  if (new_level < m_data->level) throw StructuralError("level can only grow");
  return monomial_algebra(m_data->p, new_level, m_data->coeff_pow, m_data->quotient);
}

std::string RingSpec::str() const {
  std::ostringstream os;
  switch (kind()) {
    case RingKind::Integer:
      os << "integers";
      break;
    case RingKind::Residue:
      os << "residue{m=" << m_data->modulus.get_str() << "}";
      break;
    case RingKind::Monomial: {
      os << "monomial_algebra{p=" << m_data->p << ", level=" << m_data->level;
      if (m_data->coeff_pow != 1) os << ", coeff_pow=" << m_data->coeff_pow;
      if (!m_data->quotient.empty()) {
        os << ", quotient=[";
        for (size_t i = 0; i < m_data->quotient.size(); ++i) {
          if (i) os << ", ";
          os << "t^" << m_data->quotient[i].str(m_data->p);
        }
        os << "]";
      }
      os << "}";
      break;
    }
    case RingKind::Product: {
      os << "product{";
      for (size_t i = 0; i < m_data->factors.size(); ++i) {
        if (i) os << "; ";
        os << m_data->factors[i].str();
      }
      os << "}";
      break;
    }
    case RingKind::Quotient:
      os << "quotient{base=" << m_data->base.str() << ", mod=" << m_data->qmod->str() << "}";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Elements

namespace {
MonoMap empty_mono(unsigned p) { return MonoMap(ExponentLess{p == 0 ? 2 : p}); }
}  // namespace

RingElement RingElement::zero(const RingSpec& s) {
  RingElement e;
  e.m_spec = s;
  switch (s.kind()) {
    case RingKind::Integer:
    case RingKind::Residue:
      e.m_int = 0;
      break;
    case RingKind::Monomial:
    case RingKind::Quotient:
      e.m_mono = empty_mono(s.p());
      break;
    case RingKind::Product:
      for (const auto& f : s.factors()) e.m_comps.push_back(zero(f));
      break;
  }
  return e;
}

RingElement RingElement::one(const RingSpec& s) { return from_int(s, 1); }

RingElement RingElement::from_int(const RingSpec& s, const mpz_class& n) {
  RingElement e = zero(s);
  switch (s.kind()) {
    case RingKind::Integer:
      e.m_int = n;
      break;
    case RingKind::Residue: {
      mpz_class r;
      mpz_mod(r.get_mpz_t(), n.get_mpz_t(), s.modulus().get_mpz_t());
      e.m_int = r;
      break;
    }
    case RingKind::Monomial:
    case RingKind::Quotient: {
      if (n != 0) e.m_mono[ExponentQ()] = n;
      e.canonicalize();
      break;
    }
    case RingKind::Product: {
      e.m_comps.clear();
      for (const auto& f : s.factors()) e.m_comps.push_back(from_int(f, n));
      break;
    }
  }
  return e;
}

RingElement RingElement::monomial(const RingSpec& s, const ExponentQ& e, const mpz_class& c) {
  if (s.kind() != RingKind::Monomial && s.kind() != RingKind::Quotient)
    throw UnsupportedError("monomial element needs a monomial algebra");
  if (e.den_pow() > s.level()) throw StructuralError("exponent finer than the ring level");
  RingElement r = zero(s);
  if (c != 0) r.m_mono[e] = c;
  r.canonicalize();
  return r;
}

RingElement RingElement::make_product(const RingSpec& s, std::vector<RingElement> comps) {
  if (s.kind() != RingKind::Product || comps.size() != s.factors().size())
    throw StructuralError("bad product element");
  for (size_t i = 0; i < comps.size(); ++i)
    if (comps[i].spec() != s.factors()[i]) throw StructuralError("product component ring mismatch");
  RingElement e;
  e.m_spec = s;
  e.m_comps = std::move(comps);
  return e;
}

void RingElement::canonicalize() {
  switch (m_spec.kind()) {
    case RingKind::Integer:
      return;
    case RingKind::Residue: {
      mpz_class r;
      mpz_mod(r.get_mpz_t(), m_int.get_mpz_t(), m_spec.modulus().get_mpz_t());
      m_int = r;
      return;
    }
    case RingKind::Monomial: {
      mpz_class cm = pow_ui(m_spec.p(), m_spec.coeff_pow());
      auto bound = m_spec.quotient_bound();
      for (auto it = m_mono.begin(); it != m_mono.end();) {
        mpz_class r;
        mpz_mod(r.get_mpz_t(), it->second.get_mpz_t(), cm.get_mpz_t());
        it->second = r;
        bool dead = it->second == 0;
        if (!dead && bound && ExponentQ::cmp(it->first, *bound, m_spec.p()) >= 0) dead = true;
        if (dead)
          it = m_mono.erase(it);
        else
          ++it;
      }
      return;
    }
    case RingKind::Quotient: {
      unsigned p = m_spec.p();
      for (auto it = m_mono.begin(); it != m_mono.end();) {
        mpz_class r;
        mpz_class pm(p);
        mpz_mod(r.get_mpz_t(), it->second.get_mpz_t(), pm.get_mpz_t());
        it->second = r;
        if (it->second == 0)
          it = m_mono.erase(it);
        else
          ++it;
      }
      // Reduce mod the quotient polynomial (leading coefficient is a unit).
      const MonoMap& g = m_spec.quot_modulus().mono();
      const ExponentQ& glead = g.rbegin()->first;
      const mpz_class& gc = g.rbegin()->second;
      mpz_class gcinv, pm(p);
      if (mpz_invert(gcinv.get_mpz_t(), gc.get_mpz_t(), pm.get_mpz_t()) == 0)
        throw InternalError("quotient modulus leading coefficient not invertible");
      while (!m_mono.empty()) {
        const ExponentQ& lead = m_mono.rbegin()->first;
        if (ExponentQ::cmp(lead, glead, p) < 0) break;
        ExponentQ shift = ExponentQ::sub(lead, glead, p);
        mpz_class factor = (m_mono.rbegin()->second * gcinv) % p;
        // subtract factor * t^shift * g
        for (const auto& [ge, gco] : g) {
          ExponentQ e = ExponentQ::add(ge, shift, p);
          mpz_class delta = (factor * gco) % p;
          auto it = m_mono.find(e);
          mpz_class cur = it == m_mono.end() ? mpz_class(0) : it->second;
          mpz_class nv = cur - delta;
          mpz_mod(nv.get_mpz_t(), nv.get_mpz_t(), pm.get_mpz_t());
          if (nv == 0) {
            if (it != m_mono.end()) m_mono.erase(it);
          } else {
            m_mono[e] = nv;
          }
        }
      }
      return;
    }
    case RingKind::Product:
      return;  // components canonicalize themselves
  }
}

bool RingElement::is_zero() const {
  switch (m_spec.kind()) {
    case RingKind::Integer:
    case RingKind::Residue:
      return m_int == 0;
    case RingKind::Monomial:
    case RingKind::Quotient:
      return m_mono.empty();
    case RingKind::Product:
      return std::all_of(m_comps.begin(), m_comps.end(),
                         [](const RingElement& c) { return c.is_zero(); });
  }
  return false;
}

bool RingElement::is_one() const { return eq(*this, one(m_spec)); }

void require_same_spec(const RingElement& a, const RingElement& b, const char* op) {
  if (a.spec() != b.spec())
    throw StructuralError(std::string(op) + ": elements of different rings");
}

RingElement RingElement::add(const RingElement& a, const RingElement& b) {
  require_same_spec(a, b, "add");
  RingElement r = a;
  switch (a.m_spec.kind()) {
    case RingKind::Integer:
    case RingKind::Residue:
      r.m_int += b.m_int;
      break;
    case RingKind::Monomial:
    case RingKind::Quotient:
      for (const auto& [e, c] : b.m_mono) {
        auto it = r.m_mono.find(e);
        if (it == r.m_mono.end())
          r.m_mono[e] = c;
        else
          it->second += c;
      }
      break;
    case RingKind::Product:
      for (size_t i = 0; i < r.m_comps.size(); ++i) r.m_comps[i] = add(r.m_comps[i], b.m_comps[i]);
      return r;
  }
  r.canonicalize();
  return r;
}

RingElement RingElement::neg(const RingElement& a) {
  RingElement r = a;
  switch (a.m_spec.kind()) {
    case RingKind::Integer:
    case RingKind::Residue:
      r.m_int = -r.m_int;
      break;
    case RingKind::Monomial:
    case RingKind::Quotient:
      for (auto& [e, c] : r.m_mono) c = -c;
      break;
    case RingKind::Product:
      for (auto& c : r.m_comps) c = neg(c);
      return r;
  }
  r.canonicalize();
  return r;
}

RingElement RingElement::sub(const RingElement& a, const RingElement& b) {
  return add(a, neg(b));
}

RingElement RingElement::mul(const RingElement& a, const RingElement& b) {
  require_same_spec(a, b, "mul");
  switch (a.m_spec.kind()) {
    case RingKind::Integer:
    case RingKind::Residue: {
      RingElement r = a;
      r.m_int *= b.m_int;
      r.canonicalize();
      return r;
    }
    case RingKind::Monomial:
    case RingKind::Quotient: {
      RingElement r = zero(a.m_spec);
      unsigned p = a.m_spec.p();
      for (const auto& [ea, ca] : a.m_mono)
        for (const auto& [eb, cb] : b.m_mono) {
          ExponentQ e = ExponentQ::add(ea, eb, p);
          auto it = r.m_mono.find(e);
          if (it == r.m_mono.end())
            r.m_mono[e] = ca * cb;
          else
            it->second += ca * cb;
        }
      r.canonicalize();
      return r;
    }
    case RingKind::Product: {
      RingElement r = a;
      for (size_t i = 0; i < r.m_comps.size(); ++i) r.m_comps[i] = mul(r.m_comps[i], b.m_comps[i]);
      return r;
    }
  }
  throw InternalError("mul: unhandled ring kind");
}

bool RingElement::eq(const RingElement& a, const RingElement& b) {
  require_same_spec(a, b, "eq");
  switch (a.m_spec.kind()) {
    case RingKind::Integer:
    case RingKind::Residue:
      return a.m_int == b.m_int;
    case RingKind::Monomial:
    case RingKind::Quotient: {
      if (a.m_mono.size() != b.m_mono.size()) return false;
      auto ia = a.m_mono.begin(), ib = b.m_mono.begin();
      for (; ia != a.m_mono.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
      return true;
    }
    case RingKind::Product:
      for (size_t i = 0; i < a.m_comps.size(); ++i)
        if (!eq(a.m_comps[i], b.m_comps[i])) return false;
      return true;
  }
  return false;
}

bool RingElement::operator<(const RingElement& o) const {
  return str() < o.str();
}

RingElement RingElement::pow(unsigned long e) const {
  RingElement acc = one(m_spec);
  RingElement base = *this;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

RingElement RingElement::frobenius() const {
  unsigned p = 0;
  if (!m_spec.char_p(&p))
    throw UnsupportedError("frobenius needs characteristic p; ring is " + m_spec.str());
  switch (m_spec.kind()) {
    case RingKind::Monomial: {
      // (sum c t^e)^p = sum c^p t^{pe}: multiply every exponent by p exactly.
      RingElement r = zero(m_spec);
      for (const auto& [e, c] : m_mono) r.m_mono[ExponentQ::times_p(e, p)] = c;
      r.canonicalize();
      return r;
    }
    default:
      return pow(p);
  }
}

RingElement RingElement::level_embed(unsigned new_level) const {
  RingSpec target = m_spec.at_level(new_level);
  RingElement r = *this;
  r.m_spec = target;
  return r;
}

std::string RingElement::str() const {
  std::ostringstream os;
  switch (m_spec.kind()) {
    case RingKind::Integer:
    case RingKind::Residue:
      return m_int.get_str();
    case RingKind::Monomial:
    case RingKind::Quotient: {
      if (m_mono.empty()) return "0";
      bool first = true;
      for (const auto& [e, c] : m_mono) {
        if (!first) os << "+";
        first = false;
        if (e.is_zero()) {
          os << c.get_str();
        } else {
          if (c != 1) os << c.get_str() << "*";
          if (e.is_integral())
            os << "t^" << e.str(m_spec.p());
          else
            os << "t^(" << e.str(m_spec.p()) << ")";
        }
      }
      return os.str();
    }
    case RingKind::Product: {
      os << "(";
      for (size_t i = 0; i < m_comps.size(); ++i) {
        if (i) os << " | ";
        os << m_comps[i].str();
      }
      os << ")";
      return os.str();
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c))
      throw StructuralError(std::string("expected '") + c + "' in " + what + ": " + s);
  }
  std::string ident() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    return s.substr(start, i - start);
  }
  mpz_class integer() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw StructuralError("expected integer in: " + s);
    return mpz_class(s.substr(start, i - start));
  }
  // Split `key=value` pairs of a `{...}` body at top level.
  std::string balanced_until(const std::string& stops) {
    skip_ws();
    size_t start = i;
    int depth = 0;
    while (i < s.size()) {
      char c = s[i];
      if (depth == 0 && stops.find(c) != std::string::npos) break;
      if (c == '{' || c == '[' || c == '(') ++depth;
      if (c == '}' || c == ']' || c == ')') --depth;
      ++i;
    }
    std::string out = s.substr(start, i - start);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }
};

ExponentQ parse_exponent(const std::string& text, unsigned p) {
  // "3/4", "1", "(3/4)"
  std::string t = text;
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  size_t slash = t.find('/');
  if (slash == std::string::npos) return ExponentQ(mpz_class(t), 0, p);
  mpz_class num(t.substr(0, slash));
  mpz_class den(t.substr(slash + 1));
  unsigned dp = 0;
  while (den > 1) {
    if (!mpz_divisible_ui_p(den.get_mpz_t(), p))
      throw StructuralError("exponent denominator is not a power of p: " + text);
    den /= p;
    ++dp;
  }
  return ExponentQ(num, dp, p);
}

}  // namespace

RingSpec RingSpec::parse(const std::string& text) {
  Cursor c{text};
  std::string head = c.ident();
  if (head == "integers" || head == "Z") return integers();
  if (head == "residue") {
    c.expect('{', "residue");
    std::map<std::string, std::string> kv;
    while (c.peek() != '}') {
      std::string k = c.ident();
      c.expect('=', "residue");
      kv[k] = c.balanced_until(",}");
      c.accept(',');
    }
    c.expect('}', "residue");
    return residue(mpz_class(kv.at("m")));
  }
  if (head == "monomial_algebra") {
    c.expect('{', "monomial_algebra");
    std::map<std::string, std::string> kv;
    while (c.peek() != '}') {
      std::string k = c.ident();
      c.expect('=', "monomial_algebra");
      kv[k] = c.balanced_until(",}");
      c.accept(',');
    }
    c.expect('}', "monomial_algebra");
    unsigned p = static_cast<unsigned>(mpz_class(kv.at("p")).get_ui());
    unsigned level = static_cast<unsigned>(mpz_class(kv.at("level")).get_ui());
    unsigned cp = kv.count("coeff_pow") ? static_cast<unsigned>(mpz_class(kv["coeff_pow"]).get_ui()) : 1;
    std::vector<ExponentQ> quot;
    if (kv.count("quotient")) {
      std::string q = kv["quotient"];
      if (q.empty() || q.front() != '[' || q.back() != ']')
        throw StructuralError("quotient must be a [...] list");
      Cursor qc{q};
      qc.expect('[', "quotient list");
      while (qc.peek() != ']') {
        std::string item = qc.balanced_until(",]");
        if (item.rfind("t^", 0) != 0) throw StructuralError("quotient entries look like t^e");
        quot.push_back(parse_exponent(item.substr(2), p));
        qc.accept(',');
      }
    }
    return monomial_algebra(p, level, cp, std::move(quot));
  }
  if (head == "product") {
    c.expect('{', "product");
    std::vector<RingSpec> fs;
    while (c.peek() != '}') {
      fs.push_back(parse(c.balanced_until(";}")));
      c.accept(';');
    }
    c.expect('}', "product");
    return product(std::move(fs));
  }
  if (head == "quotient") {
    c.expect('{', "quotient");
    std::map<std::string, std::string> kv;
    while (c.peek() != '}') {
      std::string k = c.ident();
      c.expect('=', "quotient");
      kv[k] = c.balanced_until(",}");
      c.accept(',');
    }
    c.expect('}', "quotient");
    RingSpec base = parse(kv.at("base"));
    return quotient(base, RingElement::parse(base, kv.at("mod")));
  }
  throw StructuralError("unknown ring spec: " + text);
}

RingElement RingElement::parse(const RingSpec& s, const std::string& text) {
  Cursor c{text};
  switch (s.kind()) {
    case RingKind::Integer:
    case RingKind::Residue:
      return from_int(s, c.integer());
    case RingKind::Product: {
      c.expect('(', "product element");
      std::vector<RingElement> comps;
      for (size_t i = 0; i < s.factors().size(); ++i) {
        std::string part = c.balanced_until("|)");
        comps.push_back(parse(s.factors()[i], part));
        if (i + 1 < s.factors().size()) c.expect('|', "product element");
      }
      c.expect(')', "product element");
      return make_product(s, std::move(comps));
    }
    case RingKind::Monomial:
    case RingKind::Quotient: {
      // sum of terms: [coef *] t ^ exp | coef ; separated by + or -
      RingElement acc = zero(s);
      unsigned p = s.p();
      bool negate = false;
      if (c.accept('-')) negate = true;
      while (!c.eof()) {
        mpz_class coef = 1;
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
          coef = c.integer();
          have_coef = true;
        }
        ExponentQ e;
        c.skip_ws();
        if (c.accept('*') || c.peek() == 't' || c.peek() == 's') {
          if (c.peek() == 't' || c.peek() == 's') {
            ++c.i;
            if (c.accept('^')) {
              c.skip_ws();
              std::string etext;
              if (c.peek() == '(') {
                size_t start = c.i;
                int depth = 0;
                do {
                  if (c.s[c.i] == '(') ++depth;
                  if (c.s[c.i] == ')') --depth;
                  ++c.i;
                } while (c.i < c.s.size() && depth > 0);
                etext = c.s.substr(start, c.i - start);
              } else {
                size_t start = c.i;
                while (c.i < c.s.size() &&
                       (std::isdigit(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '/'))
                  ++c.i;
                etext = c.s.substr(start, c.i - start);
              }
              e = parse_exponent(etext, p);
            } else {
              e = ExponentQ(1, 0, p);
            }
          }
        } else if (!have_coef) {
          throw StructuralError("cannot parse element term: " + text);
        }
        RingElement term = monomial(s, e, negate ? mpz_class(-coef) : coef);
        acc = add(acc, term);
        if (c.eof()) break;
        if (c.accept('+'))
          negate = false;
        else if (c.accept('-'))
          negate = true;
        else
          throw StructuralError("expected + or - in element: " + text);
      }
      return acc;
    }
  }
  throw InternalError("parse: unhandled ring kind");
}

}  // namespace aw
