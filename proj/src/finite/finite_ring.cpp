#include "finite/finite_ring.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "rings/errors.hpp"

namespace aw {

using Idx = FiniteRing::Idx;

Idx FiniteRing::pow(Idx a, unsigned long e) const {
  Idx acc = m_one;
  Idx base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

Idx FiniteRing::from_int(const mpz_class& n) const {
  unsigned long ch = characteristic();
  mpz_class r;
  mpz_mod_ui(r.get_mpz_t(), n.get_mpz_t(), ch);
  unsigned long k = r.get_ui();
  Idx acc = m_zero;
  for (unsigned long i = 0; i < k; ++i) acc = add(acc, m_one);
  return acc;
}

unsigned long FiniteRing::characteristic() const {
  unsigned long n = 1;
  Idx x = m_one;
  while (x != m_zero) {
    x = add(x, m_one);
    ++n;
  }
  return n;
}

bool FiniteRing::is_unit(Idx a) const {
  for (Idx y = 0; y < m_size; ++y)
    if (mul(a, y) == m_one) return true;
  return false;
}

bool FiniteRing::is_local() const {
  // local iff the non-units are closed under addition
  std::vector<bool> unit(m_size, false);
  for (Idx x = 0; x < m_size; ++x) unit[x] = is_unit(x);
  for (Idx x = 0; x < m_size; ++x) {
    if (unit[x]) continue;
    for (Idx y = 0; y < m_size; ++y) {
      if (unit[y]) continue;
      if (unit[add(x, y)]) return false;
    }
  }
  return true;
}

Idx FiniteRing::index_of_spec_elem(const RingElement& e) const {
  for (Idx i = 0; i < m_size; ++i)
    if (m_spec_elems[i] == e) return i;
  throw StructuralError("element not found in finite ring: " + e.str());
}

Idx FiniteRing::from_ambient(Idx a) const {
  if (m_from_ambient.empty() || m_from_ambient[a] < 0)
    throw StructuralError("element is not a member of the subring");
  return static_cast<Idx>(m_from_ambient[a]);
}

void FiniteRing::build_tables_from_ops(const std::function<Idx(Idx, Idx)>& addf,
                                       const std::function<Idx(Idx, Idx)>& mulf) {
  m_add.resize(m_size * m_size);
  m_mul.resize(m_size * m_size);
  for (Idx a = 0; a < m_size; ++a)
    for (Idx b = 0; b < m_size; ++b) {
      m_add[a * m_size + b] = addf(a, b);
      m_mul[a * m_size + b] = mulf(a, b);
    }
}

void FiniteRing::finish_setup() {
  m_neg.assign(m_size, 0);
  for (Idx a = 0; a < m_size; ++a) {
    bool found = false;
    for (Idx b = 0; b < m_size; ++b)
      if (add(a, b) == m_zero) {
        m_neg[a] = b;
        found = true;
        break;
      }
    if (!found) throw InternalError("finite ring element has no additive inverse");
  }
}

FiniteRingPtr FiniteRing::from_spec(const RingSpec& s) {
  if (!s.is_finite()) throw UnsupportedError("from_spec needs a finite ring: " + s.str());
  static std::mutex mu;
  static std::map<std::string, FiniteRingPtr> cache;
  std::string key = s.str();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->m_spec = s;
  r->m_spec_elems = s.enumerate();
  r->m_size = r->m_spec_elems.size();
  std::map<std::string, Idx> index;
  for (Idx i = 0; i < r->m_size; ++i) {
    r->m_names.push_back(r->m_spec_elems[i].str());
    index[r->m_names.back()] = i;
  }
  auto look = [&](const RingElement& e) { return index.at(e.str()); };
  r->build_tables_from_ops(
      [&](Idx a, Idx b) {
        return look(RingElement::add(r->m_spec_elems[a], r->m_spec_elems[b]));
      },
      [&](Idx a, Idx b) {
        return look(RingElement::mul(r->m_spec_elems[a], r->m_spec_elems[b]));
      });
  r->m_zero = look(RingElement::zero(s));
  r->m_one = look(RingElement::one(s));
  r->m_desc = s.str();
  r->finish_setup();
  {
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = r;
  }
  return r;
}

namespace {

// Compiled form of a structure polynomial over an enumerated base ring.
struct CompiledPoly {
  struct Term {
    Idx coef;
    std::vector<std::pair<unsigned, unsigned>> powers;  // (arg index, exponent)
  };
  std::vector<Term> terms;

  Idx eval(const FiniteRing& base, const std::vector<std::vector<Idx>>& pow_tab,
           const std::vector<Idx>& args) const {
    Idx acc = base.zero();
    for (const auto& t : terms) {
      Idx v = t.coef;
      for (auto [a, e] : t.powers) v = base.mul(v, pow_tab[args[a]][e]);
      acc = base.add(acc, v);
    }
    return acc;
  }
};

CompiledPoly compile_poly(const ZPoly& p, const FiniteRing& base) {
  CompiledPoly out;
  for (const auto& [e, c] : p.terms()) {
    CompiledPoly::Term t;
    t.coef = base.from_int(c);
    if (t.coef == base.zero()) continue;
    for (size_t v = 0; v < e.size(); ++v)
      if (e[v]) t.powers.emplace_back(static_cast<unsigned>(v), e[v]);
    out.terms.push_back(std::move(t));
  }
  return out;
}

}  // namespace

FiniteRingPtr FiniteRing::witt_over_spec(unsigned p, unsigned len, const RingSpec& base) {
  static std::mutex mu;
  static std::map<std::string, FiniteRingPtr> cache;
  std::string key = std::to_string(p) + "|" + std::to_string(len) + "|" + base.str();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto base_ring = from_spec(base);
  size_t bs = base_ring->size();
  auto polys = WittStructurePolys::get(p, len);

  unsigned max_exp = pow_ui(p, len).get_ui();
  std::vector<std::vector<Idx>> pow_tab(bs);
  for (Idx b = 0; b < bs; ++b) {
    pow_tab[b].resize(max_exp + 1);
    pow_tab[b][0] = base_ring->one();
    for (unsigned e = 1; e <= max_exp; ++e) pow_tab[b][e] = base_ring->mul(pow_tab[b][e - 1], b);
  }
  std::vector<CompiledPoly> sums, prods;
  for (unsigned i = 0; i < len; ++i) {
    sums.push_back(compile_poly(polys->sum[i], *base_ring));
    prods.push_back(compile_poly(polys->prod[i], *base_ring));
  }

  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->m_witt_p = p;
  r->m_witt_len = len;
  r->m_witt_base = base;
  r->m_witt_base_elems = base_ring->m_spec_elems;
  size_t n = 1;
  for (unsigned i = 0; i < len; ++i) n *= bs;
  r->m_size = n;

  auto coords_of = [&](Idx a) {
    std::vector<Idx> c(len);
    for (unsigned i = 0; i < len; ++i) {
      c[i] = static_cast<Idx>(a % bs);
      a /= static_cast<Idx>(bs);
    }
    return c;
  };
  auto index_of = [&](const std::vector<Idx>& c) {
    size_t a = 0;
    for (unsigned i = len; i-- > 0;) a = a * bs + c[i];
    return static_cast<Idx>(a);
  };

  for (Idx a = 0; a < n; ++a) {
    auto c = coords_of(a);
    std::ostringstream os;
    os << "[";
    for (unsigned i = 0; i < len; ++i) {
      if (i) os << ", ";
      os << base_ring->name(c[i]);
    }
    os << "]";
    r->m_names.push_back(os.str());
  }
  std::ostringstream d;
  d << "W(p=" << p << ", len=" << len << ", base=" << base.str() << ")";
  r->m_desc = d.str();

  r->m_add.resize(n * n);
  r->m_mul.resize(n * n);
  std::vector<Idx> args(2 * len);
  for (Idx a = 0; a < n; ++a) {
    auto ca = coords_of(a);
    for (unsigned i = 0; i < len; ++i) args[i] = ca[i];
    for (Idx b = 0; b < n; ++b) {
      auto cb = coords_of(b);
      for (unsigned i = 0; i < len; ++i) args[len + i] = cb[i];
      std::vector<Idx> cs(len), cp(len);
      for (unsigned i = 0; i < len; ++i) {
        cs[i] = sums[i].eval(*base_ring, pow_tab, args);
        cp[i] = prods[i].eval(*base_ring, pow_tab, args);
      }
      r->m_add[a * n + b] = index_of(cs);
      r->m_mul[a * n + b] = index_of(cp);
    }
  }
  std::vector<Idx> zc(len, base_ring->zero());
  std::vector<Idx> oc(len, base_ring->zero());
  oc[0] = base_ring->one();
  r->m_zero = index_of(zc);
  r->m_one = index_of(oc);
  r->finish_setup();
  {
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = r;
  }
  return r;
}

std::vector<RingElement> FiniteRing::witt_coords(Idx a) const {
  if (!is_witt()) throw StructuralError("not a Witt finite ring");
  size_t bs = m_witt_base_elems.size();
  std::vector<RingElement> c;
  for (unsigned i = 0; i < m_witt_len; ++i) {
    c.push_back(m_witt_base_elems[a % bs]);
    a /= static_cast<Idx>(bs);
  }
  return c;
}

Idx FiniteRing::witt_index(const std::vector<RingElement>& coords) const {
  if (!is_witt()) throw StructuralError("not a Witt finite ring");
  size_t bs = m_witt_base_elems.size();
  size_t a = 0;
  for (unsigned i = m_witt_len; i-- > 0;) {
    size_t k = bs;
    for (size_t j = 0; j < bs; ++j)
      if (m_witt_base_elems[j] == coords[i]) {
        k = j;
        break;
      }
    if (k == bs) throw StructuralError("Witt coordinate not in base ring");
    a = a * bs + k;
  }
  return static_cast<Idx>(a);
}

FiniteRingPtr FiniteRing::product(const FiniteRingPtr& a, const FiniteRingPtr& b) {
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  size_t na = a->size(), nb = b->size();
  r->m_size = na * nb;
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < nb; ++j)
      r->m_names.push_back("(" + a->name(i) + " | " + b->name(j) + ")");
  r->m_desc = "product{" + a->describe() + "; " + b->describe() + "}";
  auto split = [nb](Idx x) { return std::make_pair<Idx, Idx>(x / nb, x % nb); };
  r->m_add.resize(r->m_size * r->m_size);
  r->m_mul.resize(r->m_size * r->m_size);
  for (Idx x = 0; x < r->m_size; ++x) {
    auto [xa, xb] = split(x);
    for (Idx y = 0; y < r->m_size; ++y) {
      auto [ya, yb] = split(y);
      r->m_add[x * r->m_size + y] = a->add(xa, ya) * nb + b->add(xb, yb);
      r->m_mul[x * r->m_size + y] = a->mul(xa, ya) * nb + b->mul(xb, yb);
    }
  }
  r->m_zero = a->zero() * nb + b->zero();
  r->m_one = a->one() * nb + b->one();
  r->finish_setup();
  return r;
}

FiniteRingPtr FiniteRing::subring(const FiniteRingPtr& ambient, std::vector<Idx> gens,
                                  const std::string& desc) {
  std::set<Idx> members = {ambient->zero(), ambient->one()};
  std::vector<Idx> work(members.begin(), members.end());
  for (Idx g : gens) work.push_back(g);
  while (!work.empty()) {
    Idx x = work.back();
    work.pop_back();
    if (members.count(x)) continue;
    std::vector<Idx> snapshot(members.begin(), members.end());
    members.insert(x);
    work.push_back(ambient->neg(x));
    work.push_back(ambient->mul(x, x));
    for (Idx s : snapshot) {
      work.push_back(ambient->add(s, x));
      work.push_back(ambient->mul(s, x));
    }
  }
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->m_ambient = ambient;
  r->m_to_ambient.assign(members.begin(), members.end());
  r->m_size = r->m_to_ambient.size();
  r->m_from_ambient.assign(ambient->size(), -1);
  for (Idx i = 0; i < r->m_size; ++i) {
    r->m_from_ambient[r->m_to_ambient[i]] = i;
    r->m_names.push_back(ambient->name(r->m_to_ambient[i]));
  }
  r->m_desc = desc;
  r->m_add.resize(r->m_size * r->m_size);
  r->m_mul.resize(r->m_size * r->m_size);
  for (Idx i = 0; i < r->m_size; ++i)
    for (Idx j = 0; j < r->m_size; ++j) {
      Idx sa = ambient->add(r->m_to_ambient[i], r->m_to_ambient[j]);
      Idx sm = ambient->mul(r->m_to_ambient[i], r->m_to_ambient[j]);
      if (r->m_from_ambient[sa] < 0 || r->m_from_ambient[sm] < 0)
        throw InternalError("subring closure is not closed");
      r->m_add[i * r->m_size + j] = static_cast<Idx>(r->m_from_ambient[sa]);
      r->m_mul[i * r->m_size + j] = static_cast<Idx>(r->m_from_ambient[sm]);
    }
  r->m_zero = static_cast<Idx>(r->m_from_ambient[ambient->zero()]);
  r->m_one = static_cast<Idx>(r->m_from_ambient[ambient->one()]);
  r->finish_setup();
  return r;
}

FiniteRingPtr FiniteRing::quotient(const FiniteRingPtr& parent, const std::vector<Idx>& ideal_set,
                                   const std::string& desc) {
  size_t n = parent->size();
  std::vector<Idx> rep(n);
  for (Idx x = 0; x < n; ++x) {
    Idx best = x;
    for (Idx i : ideal_set) best = std::min(best, parent->add(x, i));
    rep[x] = best;
  }
  std::vector<Idx> reps;
  std::vector<int64_t> rep_index(n, -1);
  for (Idx x = 0; x < n; ++x)
    if (rep[x] == x) {
      rep_index[x] = static_cast<int64_t>(reps.size());
      reps.push_back(x);
    }
  auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
  r->m_parent = parent;
  r->m_size = reps.size();
  r->m_coset_rep = reps;
  r->m_project.resize(n);
  for (Idx x = 0; x < n; ++x) r->m_project[x] = static_cast<Idx>(rep_index[rep[x]]);
  for (Idx i = 0; i < r->m_size; ++i) r->m_names.push_back(parent->name(reps[i]) + "~");
  r->m_desc = desc;
  r->m_add.resize(r->m_size * r->m_size);
  r->m_mul.resize(r->m_size * r->m_size);
  for (Idx i = 0; i < r->m_size; ++i)
    for (Idx j = 0; j < r->m_size; ++j) {
      r->m_add[i * r->m_size + j] = r->m_project[parent->add(reps[i], reps[j])];
      r->m_mul[i * r->m_size + j] = r->m_project[parent->mul(reps[i], reps[j])];
    }
  r->m_zero = r->m_project[parent->zero()];
  r->m_one = r->m_project[parent->one()];
  r->finish_setup();
  return r;
}

const AdditiveModel& FiniteRing::additive_model() const {
  if (m_additive) return *m_additive;
  auto model = std::make_shared<AdditiveModel>();
  size_t n = m_size;
  // greedy additive generators with expressions tracked during closure
  std::vector<bool> in_span(n, false);
  std::vector<std::vector<mpz_class>> expr(n);
  in_span[m_zero] = true;
  expr[m_zero] = {};
  size_t span_count = 1;
  while (span_count < n) {
    Idx pick = 0;
    while (in_span[pick]) ++pick;
    unsigned d = static_cast<unsigned>(model->gens.size());
    model->gens.push_back(pick);
    for (auto& e : expr)
      e.resize(d + 1, 0);
    // order of pick
    unsigned long ord = 1;
    Idx x = pick;
    while (x != m_zero) {
      x = add(x, pick);
      ++ord;
    }
    std::vector<std::pair<Idx, std::vector<mpz_class>>> base_elems;
    for (Idx y = 0; y < n; ++y)
      if (in_span[y]) base_elems.emplace_back(y, expr[y]);
    for (unsigned long c = 1; c < ord; ++c) {
      Idx cx = m_zero;
      for (unsigned long i = 0; i < c; ++i) cx = add(cx, pick);
      for (auto& [y, ey] : base_elems) {
        Idx z = add(y, cx);
        if (!in_span[z]) {
          in_span[z] = true;
          ++span_count;
          expr[z] = ey;
          expr[z].resize(d + 1, 0);
          expr[z][d] = c;
        }
      }
    }
  }
  size_t d = model->gens.size();
  for (auto& e : expr) e.resize(d, 0);
  model->expr = std::move(expr);

  // relation lattice: enumerate the order box and collect kernel vectors
  std::vector<unsigned long> orders(d);
  unsigned long box = 1;
  for (size_t i = 0; i < d; ++i) {
    unsigned long ord = 1;
    Idx x = model->gens[i];
    while (x != m_zero) {
      x = add(x, model->gens[i]);
      ++ord;
    }
    orders[i] = ord;
    box *= ord;
    if (box > 4000000) throw InternalError("additive model box too large");
  }
  model->orders = orders;
  std::vector<std::vector<mpz_class>> rel_cols;
  for (size_t i = 0; i < d; ++i) {
    std::vector<mpz_class> v(d, 0);
    v[i] = orders[i];
    rel_cols.push_back(std::move(v));
  }
  std::vector<unsigned long> digits(d, 0);
  while (true) {
    Idx val = m_zero;
    for (size_t i = 0; i < d; ++i) {
      Idx term = m_zero;
      for (unsigned long c = 0; c < digits[i]; ++c) term = add(term, model->gens[i]);
      val = add(val, term);
    }
    if (val == m_zero) {
      bool allzero = true;
      for (auto x : digits) allzero = allzero && x == 0;
      if (!allzero) {
        std::vector<mpz_class> v(d);
        for (size_t i = 0; i < d; ++i) v[i] = digits[i];
        rel_cols.push_back(std::move(v));
      }
    }
    size_t j = 0;
    for (; j < d; ++j) {
      if (++digits[j] < orders[j]) break;
      digits[j] = 0;
    }
    if (j == d) break;
  }
  model->lattice = ZMat(d, rel_cols.size());
  for (size_t j = 0; j < rel_cols.size(); ++j)
    for (size_t i = 0; i < d; ++i) model->lattice.at(i, j) = rel_cols[j][i];

  model->gen_prod.resize(d * d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      model->gen_prod[i * d + j] = model->expr[mul(model->gens[i], model->gens[j])];

  m_additive = model;
  return *m_additive;
}

// ---------------------------------------------------------------------------
// Homs

bool FinRingHom::is_hom() const {
  if (map.size() != src->size()) return false;
  if (map[src->zero()] != dst->zero() || map[src->one()] != dst->one()) return false;
  for (Idx a = 0; a < src->size(); ++a)
    for (Idx b = 0; b < src->size(); ++b) {
      if (map[src->add(a, b)] != dst->add(map[a], map[b])) return false;
      if (map[src->mul(a, b)] != dst->mul(map[a], map[b])) return false;
    }
  return true;
}

bool FinRingHom::is_surjective() const {
  std::vector<bool> hit(dst->size(), false);
  for (Idx a = 0; a < src->size(); ++a) hit[map[a]] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<Idx> FinRingHom::kernel_set() const {
  std::vector<Idx> out;
  for (Idx a = 0; a < src->size(); ++a)
    if (map[a] == dst->zero()) out.push_back(a);
  return out;
}

FinRingHom FinRingHom::compose(const FinRingHom& g, const FinRingHom& f) {
  FinRingHom h;
  h.src = f.src;
  h.dst = g.dst;
  h.map.resize(f.src->size());
  for (Idx a = 0; a < f.src->size(); ++a) h.map[a] = g.map[f.map[a]];
  return h;
}

FinRingHom FinRingHom::identity(const FiniteRingPtr& r) {
  FinRingHom h;
  h.src = r;
  h.dst = r;
  h.map.resize(r->size());
  for (Idx a = 0; a < r->size(); ++a) h.map[a] = a;
  return h;
}

// ---------------------------------------------------------------------------
// Ideals

bool FinIdeal::contains(Idx x) const {
  return std::binary_search(set.begin(), set.end(), x);
}

FinIdeal ideal_from_gens(const FiniteRingPtr& r, std::vector<Idx> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::erase_if(gens, [&](Idx g) { return g == r->zero(); });

  std::set<Idx> S = {r->zero()};
  std::vector<Idx> work;
  for (Idx g : gens)
    for (Idx x = 0; x < r->size(); ++x) work.push_back(r->mul(x, g));
  while (!work.empty()) {
    Idx x = work.back();
    work.pop_back();
    if (S.count(x)) continue;
    std::vector<Idx> snapshot(S.begin(), S.end());
    S.insert(x);
    for (Idx s : snapshot) work.push_back(r->add(s, x));
  }
  FinIdeal I;
  I.ring = r;
  I.gens = std::move(gens);
  I.set.assign(S.begin(), S.end());
  return I;
}

FinIdeal ideal_product(const FinIdeal& a, const FinIdeal& b) {
  std::vector<Idx> gens;
  for (Idx x : a.gens)
    for (Idx y : b.gens) gens.push_back(a.ring->mul(x, y));
  return ideal_from_gens(a.ring, std::move(gens));
}

FinIdeal ideal_sum(const FinIdeal& a, const FinIdeal& b) {
  std::vector<Idx> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return ideal_from_gens(a.ring, std::move(gens));
}

FinIdeal ideal_power(const FinIdeal& a, unsigned k) {
  if (k == 0) return ideal_from_gens(a.ring, {a.ring->one()});
  FinIdeal acc = a;
  for (unsigned i = 1; i < k; ++i) acc = ideal_product(acc, a);
  return acc;
}

FinIdeal ideal_element_power_ideal(const FinIdeal& a, unsigned k) {
  std::vector<Idx> gens;
  for (Idx x : a.set) gens.push_back(a.ring->pow(x, k));
  return ideal_from_gens(a.ring, std::move(gens));
}

bool ideal_is_idempotent(const FinIdeal& a) { return ideal_product(a, a).set == a.set; }

FinIdeal ideal_image(const FinRingHom& f, const FinIdeal& I) {
  std::vector<Idx> gens;
  for (Idx g : I.gens) gens.push_back(f(g));
  return ideal_from_gens(f.dst, std::move(gens));
}

std::vector<Idx> ideal_preimage_set(const FinRingHom& f, const FinIdeal& I) {
  std::vector<Idx> out;
  for (Idx a = 0; a < f.src->size(); ++a)
    if (I.contains(f(a))) out.push_back(a);
  return out;
}

std::vector<FinIdeal> all_ideals(const FiniteRingPtr& r) {
  std::vector<FinIdeal> found;
  std::set<std::vector<Idx>> seen;
  std::vector<FinIdeal> work;
  FinIdeal zero = ideal_from_gens(r, {});
  work.push_back(zero);
  seen.insert(zero.set);
  while (!work.empty()) {
    FinIdeal I = work.back();
    work.pop_back();
    found.push_back(I);
    for (Idx x = 0; x < r->size(); ++x) {
      if (I.contains(x)) continue;
      std::vector<Idx> gens = I.gens;
      gens.push_back(x);
      FinIdeal J = ideal_from_gens(r, std::move(gens));
      if (seen.insert(J.set).second) work.push_back(J);
    }
  }
  return found;
}

}  // namespace aw
