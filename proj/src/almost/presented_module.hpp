#ifndef AW_ALMOST_PRESENTED_MODULE_HPP
#define AW_ALMOST_PRESENTED_MODULE_HPP

#include <memory>
#include <optional>

#include "rings/snf.hpp"

namespace aw {

// Finitely presented module over a Euclidean level ring (Z or F_p[t^{1/p^L}]):
// coker(rel), columns of rel are the relations.  SNF is computed once and
// cached; all structural questions route through it.
class PresentedModule {
public:
  PresentedModule() = default;
  PresentedModule(RingSpec ring, RingMatrix rel);

  static PresentedModule free(const RingSpec& ring, size_t rank);

  const RingSpec& ring() const { return m_ring; }
  size_t ngens() const { return m_rel.rows(); }
  const RingMatrix& rel() const { return m_rel; }
  const RingSmithForm& snf() const;

  // invariant factors of the presentation: unit entries collapse, zeros are
  // free ranks
  std::vector<RingElement> diag() const;
  size_t free_rank() const;
  bool is_zero_module() const;
  bool is_torsion_free() const;  // all invariant factors zero or units

  // is the generator-coordinate vector v zero in the module (v in im rel)?
  bool elem_is_zero(const std::vector<RingElement>& v) const;
  bool elems_equal(const std::vector<RingElement>& a, const std::vector<RingElement>& b) const;

  // v as a column; membership in the submodule spanned by cols + relations
  bool in_submodule(const std::vector<RingElement>& v,
                    const std::vector<std::vector<RingElement>>& gens) const;

  // base change along the level embedding (monomial rings)
  PresentedModule level_embed(unsigned new_level) const;

  std::string str() const;

private:
  RingSpec m_ring;
  RingMatrix m_rel;
  mutable std::shared_ptr<RingSmithForm> m_snf;
};

// generator-level map between presented modules; well-definedness = relations
// of src map into im(rel dst)
struct PresentedMap {
  PresentedModule src, dst;
  RingMatrix F;  // dst.ngens x src.ngens

  static PresentedMap make(PresentedModule src, PresentedModule dst, RingMatrix F);
  bool well_defined() const;
  std::vector<RingElement> apply(const std::vector<RingElement>& v) const;
};

// kernel of f as an abstract presented module; gens_in_src holds the kernel
// generators as coordinate vectors of src
struct KernelResult {
  PresentedModule kernel;
  std::vector<std::vector<RingElement>> gens_in_src;
};
KernelResult kernel_module(const PresentedMap& f);

PresentedModule cokernel_module(const PresentedMap& f);

// I (x) M for a f.g. ideal I = (g_1..g_r) of the level ring, with the
// multiplication map I (x) M -> M
struct IdealTensor {
  PresentedModule tensor;  // gens indexed (a, i) = a * M.ngens + i
  PresentedMap mult;       // -> M
  std::vector<RingElement> ideal_gens;
};
IdealTensor ideal_tensor(const std::vector<RingElement>& ideal_gens, const PresentedModule& M);

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);

}  // namespace aw

#endif
