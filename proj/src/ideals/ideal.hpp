#ifndef AW_IDEALS_IDEAL_HPP
#define AW_IDEALS_IDEAL_HPP

#include <json.hpp>
#include <optional>

#include "rings/ring.hpp"

namespace aw {

// Finitely generated ideal of a RingSpec ring.  Membership is decidable for
// the supported classes: Z and free monomial algebras over F_p (both PIDs),
// finite rings (closure), and products of supported rings (componentwise).
class FGIdeal {
public:
  FGIdeal() = default;
  FGIdeal(RingSpec ring, std::vector<RingElement> gens);

  const RingSpec& ring() const { return m_ring; }
  const std::vector<RingElement>& gens() const { return m_gens; }
  bool is_zero_ideal() const { return m_gens.empty(); }

  static FGIdeal product(const FGIdeal& a, const FGIdeal& b);
  static FGIdeal sum(const FGIdeal& a, const FGIdeal& b);
  static FGIdeal power(const FGIdeal& a, unsigned k);
  bool contains(const RingElement& x) const;
  static bool equal(const FGIdeal& a, const FGIdeal& b);  // mutual membership

  // embed all generators into a deeper monomial level
  FGIdeal level_embed(unsigned new_level) const;

  std::string str() const;

private:
  RingSpec m_ring;
  std::vector<RingElement> m_gens;
};

// Level-indexed family I_0 <= I_1 <= ... <= I_{N_max} over a monomial algebra
// family; models an ideal of the colimit ring (e.g. m = (t^{1/p^oo})).
class ColimitIdeal {
public:
  ColimitIdeal() = default;
  // levels[N] lives over base.at_level(N); compatibility checked.
  ColimitIdeal(RingSpec base_level0, std::vector<FGIdeal> levels);

  // the standard setup ideal m = (t^{1/p^N})_N
  static ColimitIdeal standard_m(unsigned p, unsigned window);

  unsigned window() const { return static_cast<unsigned>(m_levels.size()) - 1; }
  const FGIdeal& level(unsigned N) const { return m_levels.at(N); }
  const RingSpec& base() const { return m_base; }

  std::string str() const;

private:
  RingSpec m_base;  // level-0 spec
  std::vector<FGIdeal> m_levels;
};

enum class Verdict3 { Holds, Fails, InconclusiveAtWindow };

std::string verdict_str(Verdict3 v);

struct IdealCheckResult {
  Verdict3 verdict = Verdict3::InconclusiveAtWindow;
  nlohmann::json certificate;       // per-generator certificates when Holds
  std::optional<RingElement> witness;  // when Fails
};

// Condition (B) instance check: do the k-th powers of elements generate?
IdealCheckResult condition_b_check(const FGIdeal& I, unsigned k);
IdealCheckResult condition_b_check(const ColimitIdeal& I, unsigned k);

// Is I^2 = I?
IdealCheckResult idempotency_check(const FGIdeal& I);
IdealCheckResult idempotency_check(const ColimitIdeal& I);

}  // namespace aw

#endif
