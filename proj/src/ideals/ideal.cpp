#include "ideals/ideal.hpp"

#include <sstream>

#include "finite/finite_ring.hpp"
#include "rings/errors.hpp"
#include "rings/snf.hpp"

namespace aw {

FGIdeal::FGIdeal(RingSpec ring, std::vector<RingElement> gens) : m_ring(std::move(ring)) {
  for (auto& g : gens) {
    if (g.spec() != m_ring) throw StructuralError("ideal generator in the wrong ring");
    if (!g.is_zero()) m_gens.push_back(std::move(g));
  }
}

FGIdeal FGIdeal::product(const FGIdeal& a, const FGIdeal& b) {
  if (a.m_ring != b.m_ring) throw StructuralError("ideal product across rings");
  std::vector<RingElement> gens;
  for (const auto& x : a.m_gens)
    for (const auto& y : b.m_gens) gens.push_back(RingElement::mul(x, y));
  return FGIdeal(a.m_ring, std::move(gens));
}

FGIdeal FGIdeal::sum(const FGIdeal& a, const FGIdeal& b) {
  if (a.m_ring != b.m_ring) throw StructuralError("ideal sum across rings");
  std::vector<RingElement> gens = a.m_gens;
  gens.insert(gens.end(), b.m_gens.begin(), b.m_gens.end());
  return FGIdeal(a.m_ring, std::move(gens));
}

FGIdeal FGIdeal::power(const FGIdeal& a, unsigned k) {
  if (k == 0) return FGIdeal(a.m_ring, {RingElement::one(a.m_ring)});
  FGIdeal acc = a;
  for (unsigned i = 1; i < k; ++i) acc = product(acc, a);
  return acc;
}

namespace {

bool pid_supported(const RingSpec& s) {
  if (s.kind() == RingKind::Integer) return true;
  return s.kind() == RingKind::Monomial && s.quotient_exps().empty() && s.coeff_pow() == 1;
}

RingElement pid_gcd_of(const RingSpec& s, const std::vector<RingElement>& gens) {
  RingElement g = RingElement::zero(s);
  for (const auto& x : gens) g = euclidean_gcd(g, x);
  return g;
}

}  // namespace

bool FGIdeal::contains(const RingElement& x) const {
  if (x.spec() != m_ring) throw StructuralError("membership test across rings");
  if (x.is_zero()) return true;
  if (m_gens.empty()) return false;
  if (pid_supported(m_ring)) {
    RingElement g = pid_gcd_of(m_ring, m_gens);
    RingElement r = x;
    euclidean_divmod(x, g, nullptr, &r);
    return r.is_zero();
  }
  if (m_ring.kind() == RingKind::Product) {
    for (size_t c = 0; c < m_ring.factors().size(); ++c) {
      std::vector<RingElement> comp_gens;
      for (const auto& g : m_gens) comp_gens.push_back(g.components()[c]);
      FGIdeal comp(m_ring.factors()[c], std::move(comp_gens));
      if (!comp.contains(x.components()[c])) return false;
    }
    return true;
  }
  if (m_ring.is_finite()) {
    auto R = FiniteRing::from_spec(m_ring);
    std::vector<FiniteRing::Idx> gidx;
    for (const auto& g : m_gens) gidx.push_back(R->index_of_spec_elem(g));
    FinIdeal I = ideal_from_gens(R, std::move(gidx));
    return I.contains(R->index_of_spec_elem(x));
  }
  throw UnsupportedError("ideal membership undecidable for ring " + m_ring.str());
}

bool FGIdeal::equal(const FGIdeal& a, const FGIdeal& b) {
  for (const auto& g : a.m_gens)
    if (!b.contains(g)) return false;
  for (const auto& g : b.m_gens)
    if (!a.contains(g)) return false;
  return true;
}

FGIdeal FGIdeal::level_embed(unsigned new_level) const {
  std::vector<RingElement> gens;
  for (const auto& g : m_gens) gens.push_back(g.level_embed(new_level));
  return FGIdeal(m_ring.at_level(new_level), std::move(gens));
}

std::string FGIdeal::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < m_gens.size(); ++i) {
    if (i) os << ", ";
    os << m_gens[i].str();
  }
  os << ")";
  return os.str();
}

ColimitIdeal::ColimitIdeal(RingSpec base_level0, std::vector<FGIdeal> levels)
    : m_base(std::move(base_level0)), m_levels(std::move(levels)) {
  if (m_base.kind() != RingKind::Monomial)
    throw UnsupportedError("colimit ideals live over monomial algebra families");
  if (m_levels.empty()) throw StructuralError("colimit ideal needs at least one level");
  for (unsigned N = 0; N < m_levels.size(); ++N) {
    if (m_levels[N].ring() != m_base.at_level(N))
      throw StructuralError("colimit ideal level ring mismatch");
    if (N + 1 < m_levels.size()) {
      FGIdeal embedded = m_levels[N].level_embed(N + 1);
      for (const auto& g : embedded.gens())
        if (!m_levels[N + 1].contains(g))
          throw StructuralError("colimit ideal not increasing at level " + std::to_string(N));
    }
  }
}

ColimitIdeal ColimitIdeal::standard_m(unsigned p, unsigned window) {
  RingSpec base = RingSpec::monomial_algebra(p, 0);
  std::vector<FGIdeal> levels;
  for (unsigned N = 0; N <= window; ++N) {
    RingSpec rn = base.at_level(N);
    levels.emplace_back(rn, std::vector<RingElement>{
                                RingElement::monomial(rn, ExponentQ(1, N, p), 1)});
  }
  return ColimitIdeal(base, std::move(levels));
}

std::string ColimitIdeal::str() const {
  std::ostringstream os;
  os << "colimit[";
  for (unsigned N = 0; N < m_levels.size(); ++N) {
    if (N) os << "; ";
    os << "N=" << N << ":" << m_levels[N].str();
  }
  os << "]";
  return os.str();
}

std::string verdict_str(Verdict3 v) {
  switch (v) {
    case Verdict3::Holds:
      return "Holds";
    case Verdict3::Fails:
      return "Fails";
    case Verdict3::InconclusiveAtWindow:
      return "InconclusiveAtWindow";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Condition (B) and idempotency

namespace {

// finite-ring closure with provenance: expresses each reachable element as a
// sum of terms r * x^k, for the Holds certificates
struct ProvenanceClosure {
  FiniteRingPtr R;
  std::map<FiniteRing::Idx, std::vector<std::string>> how;

  void build(const std::vector<FiniteRing::Idx>& ideal_set, unsigned k) {
    std::map<FiniteRing::Idx, std::string> term_desc;
    std::vector<FiniteRing::Idx> terms;
    for (FiniteRing::Idx x : ideal_set)
      for (FiniteRing::Idx r = 0; r < R->size(); ++r) {
        FiniteRing::Idx t = R->mul(r, R->pow(x, k));
        if (!term_desc.count(t) && t != R->zero())
          term_desc[t] = R->name(r) + "*(" + R->name(x) + ")^" + std::to_string(k);
        if (t != R->zero()) terms.push_back(t);
      }
    how[R->zero()] = {};
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::pair<FiniteRing::Idx, std::vector<std::string>>> snapshot(how.begin(),
                                                                                 how.end());
      for (const auto& [hx, hexpr] : snapshot)
        for (FiniteRing::Idx t : terms) {
          FiniteRing::Idx y = R->add(hx, t);
          if (!how.count(y)) {
            auto e = hexpr;
            e.push_back(term_desc[t]);
            how[y] = std::move(e);
            changed = true;
          }
        }
    }
  }
};

IdealCheckResult finite_condition_b(const FGIdeal& I, unsigned k) {
  auto R = FiniteRing::from_spec(I.ring());
  std::vector<FiniteRing::Idx> gidx;
  for (const auto& g : I.gens()) gidx.push_back(R->index_of_spec_elem(g));
  FinIdeal fi = ideal_from_gens(R, gidx);
  FinIdeal jk = ideal_element_power_ideal(fi, k);
  IdealCheckResult out;
  for (const auto& g : I.gens())
    if (!jk.contains(R->index_of_spec_elem(g))) {
      out.verdict = Verdict3::Fails;
      out.witness = g;
      return out;
    }
  out.verdict = Verdict3::Holds;
  ProvenanceClosure pc{R, {}};
  pc.build(fi.set, k);
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& g : I.gens()) {
    nlohmann::json c;
    c["generator"] = g.str();
    c["expression"] = pc.how.at(R->index_of_spec_elem(g));
    certs.push_back(c);
  }
  out.certificate = certs;
  return out;
}

IdealCheckResult pid_condition_b(const FGIdeal& I, unsigned k) {
  // I = (g); the k-th powers of elements generate (g^k)
  RingElement g = RingElement::zero(I.ring());
  for (const auto& x : I.gens()) g = euclidean_gcd(g, x);
  IdealCheckResult out;
  FGIdeal jk(I.ring(), {g.pow(k)});
  for (const auto& x : I.gens())
    if (!jk.contains(x)) {
      out.verdict = Verdict3::Fails;
      out.witness = x;
      return out;
    }
  out.verdict = Verdict3::Holds;
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& x : I.gens()) {
    nlohmann::json c;
    c["generator"] = x.str();
    c["expression"] = {"multiple of (" + g.str() + ")^" + std::to_string(k)};
    certs.push_back(c);
  }
  out.certificate = certs;
  return out;
}

bool pid_like(const RingSpec& s) {
  if (s.kind() == RingKind::Integer) return true;
  return s.kind() == RingKind::Monomial && s.quotient_exps().empty() && s.coeff_pow() == 1;
}

}  // namespace

IdealCheckResult condition_b_check(const FGIdeal& I, unsigned k) {
  if (k < 2) throw PreconditionError("Condition (B) needs k > 1");
  if (I.is_zero_ideal()) {
    IdealCheckResult out;
    out.verdict = Verdict3::Holds;
    out.certificate = nlohmann::json::array();
    return out;
  }
  if (I.ring().is_finite()) return finite_condition_b(I, k);
  if (pid_like(I.ring())) return pid_condition_b(I, k);
  throw UnsupportedError("condition_b_check unsupported for ring " + I.ring().str());
}

// Colimit verdicts certify each level's generators from (possibly deeper)
// levels inside the window.  Levels at the top of the window whose
// certificates would live beyond it stay unverified; the verdict is Holds
// when the certified levels form a nonempty prefix, with the reach recorded.
// Failure of an existential is never certifiable at a finite window, so the
// negative verdict here is InconclusiveAtWindow, never Fails.
namespace {

template <typename CertFn>
IdealCheckResult colimit_prefix_check(const ColimitIdeal& I, CertFn&& try_certify) {
  IdealCheckResult out;
  nlohmann::json certs = nlohmann::json::array();
  unsigned W = I.window();
  long verified_through = -1;
  bool prefix_intact = true;
  for (unsigned N = 0; N <= W; ++N) {
    bool all = true;
    for (const auto& g : I.level(N).gens()) {
      nlohmann::json c;
      if (try_certify(N, g, c))
        certs.push_back(c);
      else
        all = false;
    }
    if (all && prefix_intact)
      verified_through = N;
    else
      prefix_intact = false;
  }
  if (verified_through < 0) {
    out.verdict = Verdict3::InconclusiveAtWindow;
    out.certificate = certs;
    return out;
  }
  out.verdict = Verdict3::Holds;
  nlohmann::json j;
  j["verified_through_level"] = verified_through;
  j["window"] = W;
  j["certificates"] = certs;
  out.certificate = j;
  return out;
}

}  // namespace

IdealCheckResult condition_b_check(const ColimitIdeal& I, unsigned k) {
  if (k < 2) throw PreconditionError("Condition (B) needs k > 1");
  unsigned W = I.window();
  return colimit_prefix_check(I, [&](unsigned N, const RingElement& g, nlohmann::json& c) {
    for (unsigned M = N; M <= W; ++M) {
      std::vector<RingElement> pk_gens;
      for (const auto& h : I.level(M).gens()) pk_gens.push_back(h.pow(k));
      FGIdeal jk(I.level(M).ring(), std::move(pk_gens));
      if (jk.contains(g.level_embed(M))) {
        c["level"] = N;
        c["generator"] = g.str();
        c["power_level"] = M;
        c["note"] = "generator lies in the ideal of k-th powers of level " + std::to_string(M);
        return true;
      }
    }
    return false;
  });
}

IdealCheckResult idempotency_check(const FGIdeal& I) {
  IdealCheckResult out;
  if (I.is_zero_ideal()) {
    out.verdict = Verdict3::Holds;
    out.certificate = "zero ideal";
    return out;
  }
  FGIdeal sq = FGIdeal::product(I, I);
  for (const auto& g : I.gens())
    if (!sq.contains(g)) {
      out.verdict = Verdict3::Fails;
      out.witness = g;
      return out;
    }
  out.verdict = Verdict3::Holds;
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& g : I.gens()) certs.push_back(g.str() + " in I^2");
  out.certificate = certs;
  return out;
}

IdealCheckResult idempotency_check(const ColimitIdeal& I) {
  unsigned W = I.window();
  return colimit_prefix_check(I, [&](unsigned N, const RingElement& g, nlohmann::json& c) {
    for (unsigned M = N; M <= W; ++M) {
      FGIdeal sq = FGIdeal::product(I.level(M), I.level(M));
      if (sq.contains(g.level_embed(M))) {
        c["level"] = N;
        c["generator"] = g.str();
        c["square_level"] = M;
        return true;
      }
    }
    return false;
  });
}

}  // namespace aw
