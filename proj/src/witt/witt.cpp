#include "witt/witt.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "rings/errors.hpp"

namespace aw {

namespace {

// w_i in variables var_of(0..i)
ZPoly ghost_poly(unsigned p, unsigned i, const std::vector<unsigned>& var_of) {
  ZPoly w;
  for (unsigned j = 0; j <= i; ++j) {
    ZPoly term = ZPoly::variable(var_of[j]).pow(pow_ui(p, i - j).get_ui());
    w = w + term.scaled(pow_ui(p, j));
  }
  return w;
}

std::shared_ptr<const WittStructurePolys> derive(unsigned p, unsigned len) {
  auto out = std::make_shared<WittStructurePolys>();
  out->p = p;
  out->len = len;

  std::vector<unsigned> xv(len + 1), yv(len + 1);
  for (unsigned j = 0; j <= len; ++j) {
    xv[j] = j;
    yv[j] = len + j;
  }

  try {
    for (unsigned i = 0; i < len; ++i) out->ghost.push_back(ghost_poly(p, i, xv));

    for (unsigned i = 0; i < len; ++i) {
      // p^i S_i = w_i(x) + w_i(y) - sum_{j<i} p^j S_j^{p^{i-j}}
      ZPoly rhs = ghost_poly(p, i, xv) + ghost_poly(p, i, yv);
      for (unsigned j = 0; j < i; ++j)
        rhs = rhs - out->sum[j].pow(pow_ui(p, i - j).get_ui()).scaled(pow_ui(p, j));
      out->sum.push_back(rhs.exact_div_int(pow_ui(p, i)));

      ZPoly rhsp = ghost_poly(p, i, xv) * ghost_poly(p, i, yv);
      for (unsigned j = 0; j < i; ++j)
        rhsp = rhsp - out->prod[j].pow(pow_ui(p, i - j).get_ui()).scaled(pow_ui(p, j));
      out->prod.push_back(rhsp.exact_div_int(pow_ui(p, i)));

      if (p % 2 == 1) {
        // odd p: all ghost exponents are odd, so -x is coordinatewise
        out->negation.push_back(-ZPoly::variable(xv[i]));
      } else {
        ZPoly rhsn = -ghost_poly(p, i, xv);
        for (unsigned j = 0; j < i; ++j)
          rhsn = rhsn - out->negation[j].pow(pow_ui(p, i - j).get_ui()).scaled(pow_ui(p, j));
        out->negation.push_back(rhsn.exact_div_int(pow_ui(p, i)));
      }
    }

    // w_i(F(x)) = w_{i+1}(x) for F: W_len -> W_{len-1}
    for (unsigned i = 0; i + 1 < len; ++i) {
      ZPoly rhs = ghost_poly(p, i + 1, xv);
      for (unsigned j = 0; j < i; ++j)
        rhs = rhs - out->frob[j].pow(pow_ui(p, i - j).get_ui()).scaled(pow_ui(p, j));
      out->frob.push_back(rhs.exact_div_int(pow_ui(p, i)));
    }
  } catch (const IndivisibleError& e) {
    throw InternalError(std::string("Witt structure polynomial derivation divided inexactly: ") +
                        e.what());
  }
  return out;
}

}  // namespace

std::shared_ptr<const WittStructurePolys> WittStructurePolys::get(unsigned p, unsigned len) {
  if (len < 1) throw LengthError("Witt length must be >= 1");
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const WittStructurePolys>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, len);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto polys = derive(p, len);
  cache[key] = polys;
  return polys;
}

WittRing::WittRing(unsigned p, unsigned len, RingSpec base)
    : m_p(p), m_len(len), m_base(std::move(base)), m_polys(WittStructurePolys::get(p, len)) {
  if (len < 1) throw LengthError("Witt length must be >= 1");
}

std::string WittRing::str() const {
  std::ostringstream os;
  os << "W(p=" << m_p << ", len=" << m_len << ", base=" << m_base.str() << ")";
  return os.str();
}

WittVector::WittVector(WittRing ring, std::vector<RingElement> coords)
    : m_ring(std::move(ring)), m_coords(std::move(coords)) {
  if (m_coords.size() != m_ring.len())
    throw LengthError("Witt vector has the wrong number of coordinates");
  for (const auto& c : m_coords)
    if (c.spec() != m_ring.base()) throw StructuralError("Witt coordinate in the wrong base ring");
}

WittVector WittVector::zero(const WittRing& w) {
  return WittVector(w, std::vector<RingElement>(w.len(), RingElement::zero(w.base())));
}

WittVector WittVector::one(const WittRing& w) {
  return teichmuller(w, RingElement::one(w.base()));
}

WittVector WittVector::teichmuller(const WittRing& w, const RingElement& x) {
  std::vector<RingElement> c(w.len(), RingElement::zero(w.base()));
  c[0] = x;
  return WittVector(w, std::move(c));
}

WittVector WittVector::from_int(const WittRing& w, const mpz_class& n) {
  WittVector acc = zero(w);
  WittVector unit = one(w);
  mpz_class k = n < 0 ? mpz_class(-n) : n;
  for (mpz_class i = 0; i < k; ++i) acc = witt_add(acc, unit);
  if (n < 0) acc = witt_neg(acc);
  return acc;
}

bool WittVector::is_zero() const {
  for (const auto& c : m_coords)
    if (!c.is_zero()) return false;
  return true;
}

bool WittVector::operator==(const WittVector& o) const {
  if (m_ring != o.m_ring) throw StructuralError("comparing Witt vectors of different rings");
  for (size_t i = 0; i < m_coords.size(); ++i)
    if (m_coords[i] != o.m_coords[i]) return false;
  return true;
}

std::string WittVector::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m_coords.size(); ++i) {
    if (i) os << ", ";
    os << m_coords[i].str();
  }
  os << "]";
  return os.str();
}

namespace {

std::vector<RingElement> joint_args(const WittVector& a, const WittVector& b) {
  std::vector<RingElement> args;
  args.reserve(2 * a.ring().len());
  for (const auto& c : a.coords()) args.push_back(c);
  for (const auto& c : b.coords()) args.push_back(c);
  return args;
}

void require_same_witt(const WittVector& a, const WittVector& b) {
  if (a.ring() != b.ring()) throw StructuralError("Witt vectors of different rings");
}

}  // namespace

WittVector witt_add(const WittVector& a, const WittVector& b) {
  require_same_witt(a, b);
  const auto& polys = a.ring().polys();
  auto args = joint_args(a, b);
  std::vector<RingElement> c;
  for (unsigned i = 0; i < a.ring().len(); ++i)
    c.push_back(polys.sum[i].eval(a.ring().base(), args));
  return WittVector(a.ring(), std::move(c));
}

WittVector witt_mul(const WittVector& a, const WittVector& b) {
  require_same_witt(a, b);
  const auto& polys = a.ring().polys();
  auto args = joint_args(a, b);
  std::vector<RingElement> c;
  for (unsigned i = 0; i < a.ring().len(); ++i)
    c.push_back(polys.prod[i].eval(a.ring().base(), args));
  return WittVector(a.ring(), std::move(c));
}

WittVector witt_neg(const WittVector& a) {
  const auto& polys = a.ring().polys();
  std::vector<RingElement> c;
  for (unsigned i = 0; i < a.ring().len(); ++i)
    c.push_back(polys.negation[i].eval(a.ring().base(), a.coords()));
  return WittVector(a.ring(), std::move(c));
}

WittVector witt_sub(const WittVector& a, const WittVector& b) {
  return witt_add(a, witt_neg(b));
}

std::vector<RingElement> ghost(const WittVector& w) {
  const auto& polys = w.ring().polys();
  std::vector<RingElement> out;
  for (unsigned i = 0; i < w.ring().len(); ++i)
    out.push_back(polys.ghost[i].eval(w.ring().base(), w.coords()));
  return out;
}

WittVector witt_F(const WittVector& w) {
  if (w.ring().len() < 2) throw LengthError("F needs length >= 2");
  const auto& polys = w.ring().polys();
  WittRing target(w.ring().p(), w.ring().len() - 1, w.ring().base());
  std::vector<RingElement> c;
  for (unsigned i = 0; i + 1 < w.ring().len(); ++i)
    c.push_back(polys.frob[i].eval(w.ring().base(), w.coords()));
  return WittVector(target, std::move(c));
}

WittVector witt_V(const WittVector& w) {
  WittRing target(w.ring().p(), w.ring().len() + 1, w.ring().base());
  std::vector<RingElement> c;
  c.push_back(RingElement::zero(w.ring().base()));
  for (const auto& x : w.coords()) c.push_back(x);
  return WittVector(target, std::move(c));
}

WittVector witt_truncate(const WittVector& w) {
  if (w.ring().len() < 2) throw LengthError("pr needs length >= 2");
  WittRing target(w.ring().p(), w.ring().len() - 1, w.ring().base());
  std::vector<RingElement> c(w.coords().begin(), w.coords().end() - 1);
  return WittVector(target, std::move(c));
}

std::pair<WittVector, RingElement> alpha_map(const WittVector& w) {
  return {witt_truncate(w), ghost(w).back()};
}

AlphaKernel alpha_kernel(const WittRing& w) {
  AlphaKernel out;
  out.n = w.len() - 1;
  mpz_class pn = pow_ui(w.p(), out.n);
  const RingSpec& base = w.base();
  unsigned charp = 0;
  if (out.n >= 1 && base.char_p(&charp) && charp == w.p()) {
    out.whole_base_annihilates = true;
    return out;
  }
  if (base.kind() == RingKind::Integer) return out;  // p-torsion-free: Ann(p^n) = 0
  if (!base.is_finite())
    throw UnsupportedError("alpha_kernel needs a finite base or characteristic p");
  RingElement pne = RingElement::from_int(base, pn);
  for (const auto& x : base.enumerate())
    if (RingElement::mul(pne, x).is_zero()) out.ann_elements.push_back(x);
  return out;
}

bool alpha_kernel_square_zero_symbolic(unsigned p, unsigned len) {
  if (len < 2) return true;  // n = 0: alpha is injective, kernel 0
  unsigned n = len - 1;
  auto polys = WittStructurePolys::get(p, len);
  // substitute x = V^n(X), y = V^n(Y): all coordinates zero except the top
  std::vector<ZPoly> args(2 * len);
  args[len - 1] = ZPoly::variable(0);
  args[2 * len - 1] = ZPoly::variable(1);
  for (unsigned i = 0; i < len; ++i) {
    ZPoly coord = polys->prod[i].compose(args);
    if (i + 1 < len) {
      if (!coord.is_zero()) return false;
    } else {
      // top coordinate must be p^n * X * Y
      ZPoly expect = (ZPoly::variable(0) * ZPoly::variable(1)).scaled(pow_ui(p, n));
      if (coord != expect) return false;
    }
  }
  return true;
}

WittPerfectResult witt_perfect_check(const RingSpec& A, unsigned p, unsigned n) {
  if (!A.is_finite()) throw UnsupportedError("witt_perfect_check needs a finite ring");
  if (n < 1) throw LengthError("witt_perfect_check needs n >= 1");
  WittRing Wn(p, n + 1, A);
  WittRing Wn1(p, n, A);
  auto elems = A.enumerate();

  // enumerate W_n(A) and collect F-images
  std::vector<WittVector> image;
  std::vector<size_t> idx(n + 1, 0);
  while (true) {
    std::vector<RingElement> coords;
    for (size_t i = 0; i <= n; ++i) coords.push_back(elems[idx[i]]);
    image.push_back(witt_F(WittVector(Wn, std::move(coords))));
    size_t j = 0;
    for (; j <= n; ++j) {
      if (++idx[j] < elems.size()) break;
      idx[j] = 0;
    }
    if (j == n + 1) break;
  }

  // walk W_{n-1}(A) looking for a missing element
  WittPerfectResult res;
  std::vector<size_t> tidx(n, 0);
  while (true) {
    std::vector<RingElement> coords;
    for (size_t i = 0; i < n; ++i) coords.push_back(elems[tidx[i]]);
    WittVector target(Wn1, std::move(coords));
    bool hit = false;
    for (const auto& im : image)
      if (im == target) {
        hit = true;
        break;
      }
    if (!hit) {
      res.surjective = false;
      res.witness = target;
      return res;
    }
    size_t j = 0;
    for (; j < n; ++j) {
      if (++tidx[j] < elems.size()) break;
      tidx[j] = 0;
    }
    if (j == n) break;
  }
  res.surjective = true;
  return res;
}

}  // namespace aw
