#ifndef AW_ALMOST_ALMOST_HPP
#define AW_ALMOST_ALMOST_HPP

#include <json.hpp>

#include "almost/presented_module.hpp"
#include "ideals/ideal.hpp"

namespace aw {

// Fixed almost setup (R, m) over the monomial level family, with the
// idempotency and Condition (B) certificates computed on construction.
struct AlmostSetup {
  unsigned p = 2;
  unsigned window = 4;  // deepest level probed
  unsigned depth = 6;   // K: probe depth of the semi-decidable tests
  ColimitIdeal m;
  nlohmann::json m_idempotent_cert;
  nlohmann::json m_condition_b_cert;

  static AlmostSetup standard(unsigned p, unsigned window, unsigned depth);
  RingSpec level_ring(unsigned L) const;
  // t^{1/p^j} at level L (j <= L)
  RingElement probe(unsigned j, unsigned L) const;
};

// Compatible family of presented modules over levels 0..window with
// transition maps M_L -> M_{L+1}.
class LevelFamily {
public:
  enum class Kind { BaseChange, Custom };

  static LevelFamily base_change(const PresentedModule& m0, unsigned window);
  static LevelFamily custom(std::vector<PresentedModule> levels,
                            std::vector<RingMatrix> transitions);
  static LevelFamily zero(unsigned p, unsigned window);
  static LevelFamily free_rank(unsigned p, unsigned window, size_t rank);
  static LevelFamily quotient_m(unsigned p, unsigned window);      // R/m
  static LevelFamily quotient_by(unsigned p, unsigned window, const ExponentQ& e);  // R/(t^e)
  static LevelFamily ideal_m(unsigned p, unsigned window);         // m as a module
  static LevelFamily growing_free(unsigned p, unsigned window);    // rank L+1 at level L

  Kind kind() const { return m_kind; }
  unsigned first_level() const { return m_first; }
  unsigned last_level() const { return m_first + static_cast<unsigned>(m_levels.size()) - 1; }
  unsigned window() const { return last_level(); }
  const PresentedModule& at(unsigned L) const { return m_levels.at(L - m_first); }
  const RingMatrix& transition(unsigned L) const { return m_transitions.at(L - m_first); }

  // image of a generator vector of level L at level L2 >= L
  std::vector<RingElement> push_to(unsigned L, unsigned L2,
                                   const std::vector<RingElement>& v) const;

private:
  Kind m_kind = Kind::Custom;
  unsigned m_first = 0;
  std::vector<PresentedModule> m_levels;
  std::vector<RingMatrix> m_transitions;
};

// Map of families (per-level generator matrices, compatible with transitions).
struct FamilyMap {
  LevelFamily src, dst;
  std::vector<RingMatrix> F;  // per level

  static FamilyMap make(LevelFamily src, LevelFamily dst, std::vector<RingMatrix> F);
};

enum class AlmostVerdict { Yes, No, YesUpToDepth };
std::string verdict_str(AlmostVerdict v);

struct AlmostResult {
  AlmostVerdict verdict = AlmostVerdict::YesUpToDepth;
  nlohmann::json certificate;
  std::optional<ExponentQ> witness_epsilon;
  std::string witness_desc;
};

// m * M = 0?
AlmostResult almost_zero(const LevelFamily& M, const AlmostSetup& S);

// kernel/cokernel of a family map, with induced transitions
LevelFamily kernel_family(const FamilyMap& f);
LevelFamily cokernel_family(const FamilyMap& f);

// almost isomorphism: almost_zero on both kernel and cokernel; the verdict is
// the weaker of the two
struct AlmostIsoResult {
  AlmostResult combined, kernel, cokernel;
};
AlmostIsoResult almost_iso(const FamilyMap& f, const AlmostSetup& S);

// Depth-K truncated M_* = lim Hom(t^{1/p^k} R, M), computed at the window
// level.  `limit` is an abstract presentation; gens_in_power are its
// generators inside M^K; canonical is the map M -> limit, x -> (t^{1/p^k} x).
struct AlmostElementsResult {
  unsigned depth = 0;
  unsigned level = 0;
  PresentedModule limit;
  std::vector<std::vector<RingElement>> gens_in_power;
  PresentedMap canonical;
  nlohmann::json certificate;
};
AlmostElementsResult almost_elements(const LevelFamily& M, const AlmostSetup& S, unsigned depth);

// Stable core: image of the depth-(K+slack) limit inside the depth-K limit.
struct StableCoreResult {
  AlmostElementsResult raw;
  PresentedModule core;
  std::vector<std::vector<RingElement>> core_gens_in_limit;
  unsigned slack = 0;
};
StableCoreResult almost_elements_stable(const LevelFamily& M, const AlmostSetup& S, unsigned depth,
                                        unsigned slack = 2);

// The m-torsion probe of Remark-style torsion-freeness: elements of the
// deeper limit killed by every probe must project to zero at depth K.
struct TorsionProbeResult {
  bool passed = false;
  nlohmann::json certificate;
};
TorsionProbeResult torsion_probe(const LevelFamily& M, const AlmostSetup& S, unsigned depth,
                                 unsigned slack = 2);

// (-)_! = m (x) (stable M_*), and B_!! for B = R.
struct ShriekResult {
  PresentedModule module;
  nlohmann::json certificate;
};
ShriekResult adjoint_shriek(const LevelFamily& M, const AlmostSetup& S);

struct DoubleShriekResult {
  PresentedModule module;       // (R (+) B_!) / I
  bool iso_to_R = false;        // exhibited for B = R
  nlohmann::json certificate;
};
DoubleShriekResult adjoint_double_shriek_R(const AlmostSetup& S);

// flatness over the level ring: SNF torsion-freeness cross-checked against
// ideal-injectivity (Theorem-style criterion); the two must agree
struct FlatnessResult {
  bool flat = false;
  std::optional<std::vector<RingElement>> witness_ideal;
  nlohmann::json certificate;
};
FlatnessResult flatness_check(const PresentedModule& M,
                              const std::vector<std::vector<RingElement>>& probe_ideals = {});
// family version: every level must agree
FlatnessResult flatness_check(const LevelFamily& M, const AlmostSetup& S);

// entourage: m0 M0 <= M1 and m0 M1 <= M0 inside a common ambient module
bool entourage_check(const PresentedModule& ambient,
                     const std::vector<std::vector<RingElement>>& M0,
                     const std::vector<std::vector<RingElement>>& M1, const FGIdeal& m0);

enum class AfgVerdict { Witness, Fails, InconclusiveAtWindow };
struct AfgResult {
  AfgVerdict verdict = AfgVerdict::InconclusiveAtWindow;
  std::vector<std::vector<RingElement>> witness_gens;  // at the witness level
  unsigned witness_level = 0;
  nlohmann::json certificate;
};
// almost finite generation: a f.g. submodule absorbing m0 * M
AfgResult almost_fg_check(const LevelFamily& M, const AlmostSetup& S, const FGIdeal& m0);

// submodule presentation helper shared with the descent layer
struct SubmoduleResult {
  PresentedModule sub;
  std::vector<std::vector<RingElement>> gens_in_ambient;
};
SubmoduleResult submodule_presentation(const PresentedModule& ambient,
                                       const std::vector<std::vector<RingElement>>& gens);

}  // namespace aw

#endif
