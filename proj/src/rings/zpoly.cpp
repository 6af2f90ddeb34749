#include "rings/zpoly.hpp"
#include <unordered_map>

#include <sstream>

#include "rings/errors.hpp"

namespace aw {

namespace {
void trim(ZPoly::Expo& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}
}  // namespace

void ZPoly::add_term(const Expo& e0, const mpz_class& c) {
  if (c == 0) return;
  Expo e = e0;
  trim(e);
  auto it = m_terms.find(e);
  if (it == m_terms.end()) {
    m_terms.emplace(std::move(e), c);
  } else {
    it->second += c;
    if (it->second == 0) m_terms.erase(it);
  }
}

ZPoly ZPoly::constant(const mpz_class& c) {
  ZPoly r;
  r.add_term({}, c);
  return r;
}

ZPoly ZPoly::variable(unsigned v) {
  ZPoly r;
  Expo e(v + 1, 0);
  e[v] = 1;
  r.add_term(e, 1);
  return r;
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  ZPoly r = *this;
  for (const auto& [e, c] : o.m_terms) r.add_term(e, c);
  return r;
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& [e, c] : r.m_terms) c = -c;
  return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

namespace {

// Packed-exponent fast path: up to 8 variables, 8 bits each.  Witt structure
// polynomial derivation multiplies polynomials with thousands of terms, where
// map<vector> keys are the bottleneck.
constexpr unsigned kPackVars = 8;

bool packable(const ZPoly& a, unsigned limit) {
  for (const auto& [e, c] : a.terms()) {
    if (e.size() > kPackVars) return false;
    for (unsigned x : e)
      if (x > limit) return false;
  }
  return true;
}

uint64_t pack_expo(const ZPoly::Expo& e) {
  uint64_t k = 0;
  for (size_t i = 0; i < e.size(); ++i) k |= static_cast<uint64_t>(e[i]) << (8 * i);
  return k;
}

ZPoly::Expo unpack_expo(uint64_t k) {
  ZPoly::Expo e;
  for (unsigned i = 0; i < kPackVars; ++i) {
    unsigned x = static_cast<unsigned>((k >> (8 * i)) & 0xff);
    if (x) {
      e.resize(i + 1, 0);
      e[i] = x;
    }
  }
  return e;
}

}  // namespace

ZPoly ZPoly::operator*(const ZPoly& o) const {
  unsigned maxa = 0, maxb = 0;
  for (const auto& [e, c] : m_terms)
    for (unsigned x : e) maxa = std::max(maxa, x);
  for (const auto& [e, c] : o.m_terms)
    for (unsigned x : e) maxb = std::max(maxb, x);
  if (maxa + maxb <= 255 && packable(*this, 255) && packable(o, 255)) {
    std::vector<std::pair<uint64_t, const mpz_class*>> ta, tb;
    ta.reserve(m_terms.size());
    tb.reserve(o.m_terms.size());
    for (const auto& [e, c] : m_terms) ta.emplace_back(pack_expo(e), &c);
    for (const auto& [e, c] : o.m_terms) tb.emplace_back(pack_expo(e), &c);
    std::unordered_map<uint64_t, mpz_class> acc;
    acc.reserve(4 * std::max(ta.size(), tb.size()));
    for (const auto& [ka, ca] : ta)
      for (const auto& [kb, cb] : tb) {
        mpz_class& slot = acc[ka + kb];
        mpz_addmul(slot.get_mpz_t(), ca->get_mpz_t(), cb->get_mpz_t());
      }
    ZPoly r;
    for (auto& [k, c] : acc)
      if (c != 0) r.m_terms.emplace(unpack_expo(k), std::move(c));
    return r;
  }
  ZPoly r;
  for (const auto& [ea, ca] : m_terms)
    for (const auto& [eb, cb] : o.m_terms) {
      Expo e(std::max(ea.size(), eb.size()), 0);
      for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

ZPoly ZPoly::pow(unsigned long e) const {
  ZPoly acc = constant(1);
  ZPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

ZPoly ZPoly::scaled(const mpz_class& c) const {
  ZPoly r;
  if (c == 0) return r;
  for (const auto& [e, co] : m_terms) r.m_terms[e] = co * c;
  return r;
}

ZPoly ZPoly::exact_div_int(const mpz_class& k) const {
  if (k == 0) throw StructuralError("division by zero");
  ZPoly r;
  for (const auto& [e, c] : m_terms) {
    if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t())) {
      std::ostringstream mono;
      mono << c.get_str();
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) mono << "*x" << i << "^" << e[i];
      throw IndivisibleError("coefficient not divisible by " + k.get_str(), mono.str());
    }
    r.m_terms[e] = c / k;
  }
  return r;
}

ZPoly ZPoly::compose(const std::vector<ZPoly>& args) const {
  ZPoly r;
  for (const auto& [e, c] : m_terms) {
    ZPoly term = constant(c);
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      ZPoly a = v < args.size() ? args[v] : ZPoly();
      term = term * a.pow(e[v]);
    }
    r = r + term;
  }
  return r;
}

RingElement ZPoly::eval(const RingSpec& s, const std::vector<RingElement>& args) const {
  // power tables per variable
  std::vector<std::vector<RingElement>> pows(args.size());
  for (size_t v = 0; v < args.size(); ++v) pows[v].push_back(RingElement::one(s));
  RingElement acc = RingElement::zero(s);
  for (const auto& [e, c] : m_terms) {
    RingElement term = RingElement::from_int(s, c);
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (v >= args.size()) throw StructuralError("evaluation is missing a variable");
      while (pows[v].size() <= e[v]) pows[v].push_back(RingElement::mul(pows[v].back(), args[v]));
      term = RingElement::mul(term, pows[v][e[v]]);
    }
    acc = RingElement::add(acc, term);
  }
  return acc;
}

mpz_class ZPoly::eval_int(const std::vector<mpz_class>& args) const {
  std::vector<std::vector<mpz_class>> pows(args.size());
  for (size_t v = 0; v < args.size(); ++v) pows[v].push_back(1);
  mpz_class acc = 0, term;
  for (const auto& [e, c] : m_terms) {
    term = c;
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (v >= args.size()) throw StructuralError("evaluation is missing a variable");
      while (pows[v].size() <= e[v]) pows[v].push_back(pows[v].back() * args[v]);
      term *= pows[v][e[v]];
    }
    acc += term;
  }
  return acc;
}

unsigned ZPoly::var_count() const {
  size_t n = 0;
  for (const auto& [e, c] : m_terms) n = std::max(n, e.size());
  return static_cast<unsigned>(n);
}

std::string ZPoly::str(const std::string& xname) const {
  if (m_terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : m_terms) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      os << "*" << xname << v;
      if (e[v] > 1) os << "^" << e[v];
    }
  }
  return os.str();
}

}  // namespace aw
