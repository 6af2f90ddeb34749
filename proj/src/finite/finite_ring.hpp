#ifndef AW_FINITE_FINITE_RING_HPP
#define AW_FINITE_FINITE_RING_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rings/ring.hpp"
#include "rings/zmat.hpp"
#include "witt/witt.hpp"

namespace aw {

// An enumerated finite commutative ring with op tables.  Elements are indices
// into a canonical element list.  This is the runtime representation behind
// the lifting algorithms and the descent harness; rings that the RingSpec
// grammar cannot name (Witt rings, image subrings of products, quotients by
// runtime ideals) live here.
class FiniteRing;
using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

// Additive Z-model of a finite ring: generators b_0..b_{d-1} (element
// indices), every element written as an integer combination, and the full
// relation lattice of the generators.
struct AdditiveModel {
  std::vector<uint32_t> gens;
  std::vector<unsigned long> orders;          // additive order of each generator
  std::vector<std::vector<mpz_class>> expr;   // expr[elem] in Z^d
  ZMat lattice;                               // columns generate ker(Z^d -> R)
  std::vector<std::vector<mpz_class>> gen_prod;  // expr of b_i * b_j at i*d+j
};

class FiniteRing : public std::enable_shared_from_this<FiniteRing> {
public:
  using Idx = uint32_t;

  size_t size() const { return m_size; }
  Idx zero() const { return m_zero; }
  Idx one() const { return m_one; }
  Idx add(Idx a, Idx b) const { return m_add[a * m_size + b]; }
  Idx mul(Idx a, Idx b) const { return m_mul[a * m_size + b]; }
  Idx neg(Idx a) const { return m_neg[a]; }
  Idx sub(Idx a, Idx b) const { return add(a, neg(b)); }
  Idx pow(Idx a, unsigned long e) const;
  Idx from_int(const mpz_class& n) const;

  const std::string& name(Idx a) const { return m_names[a]; }
  std::string describe() const { return m_desc; }

  // Underlying RingSpec element when this ring came from a spec.
  bool has_spec() const { return m_spec.valid(); }
  const RingSpec& spec() const { return m_spec; }
  const RingElement& spec_elem(Idx a) const { return m_spec_elems[a]; }
  Idx index_of_spec_elem(const RingElement& e) const;

  const AdditiveModel& additive_model() const;

  // characteristic of the ring (additive order of 1)
  unsigned long characteristic() const;
  bool is_local() const;  // unique maximal ideal (checked by unit structure)
  bool is_unit(Idx a) const;

  // --- constructions ---
  static FiniteRingPtr from_spec(const RingSpec& s);
  static FiniteRingPtr witt_over_spec(unsigned p, unsigned len, const RingSpec& base);
  static FiniteRingPtr product(const FiniteRingPtr& a, const FiniteRingPtr& b);
  // Subring of `ambient` generated by the given elements (with 0, 1).
  static FiniteRingPtr subring(const FiniteRingPtr& ambient, std::vector<Idx> gens,
                               const std::string& desc);
  // Quotient by an ideal (given as the full ideal set, closed).
  static FiniteRingPtr quotient(const FiniteRingPtr& r, const std::vector<Idx>& ideal_set,
                                const std::string& desc);

  // For subring views: the ambient ring and the element injection.
  const FiniteRingPtr& ambient() const { return m_ambient; }
  Idx to_ambient(Idx a) const { return m_to_ambient[a]; }
  Idx from_ambient(Idx a) const;  // ambient index -> subring index (must be a member)

  // For quotient views: projection from the parent.
  const FiniteRingPtr& parent() const { return m_parent; }
  Idx project(Idx parent_elem) const { return m_project[parent_elem]; }
  Idx lift(Idx a) const { return m_coset_rep[a]; }  // a canonical preimage

  // For Witt views: coordinates of an element, and index from coordinates.
  bool is_witt() const { return m_witt_len > 0; }
  unsigned witt_len() const { return m_witt_len; }
  unsigned witt_p() const { return m_witt_p; }
  const RingSpec& witt_base() const { return m_witt_base; }
  std::vector<RingElement> witt_coords(Idx a) const;
  Idx witt_index(const std::vector<RingElement>& coords) const;

private:
  FiniteRing() = default;
  void build_tables_from_ops(const std::function<Idx(Idx, Idx)>& addf,
                             const std::function<Idx(Idx, Idx)>& mulf);
  void finish_setup();  // zero/one discovery, neg table

  size_t m_size = 0;
  Idx m_zero = 0, m_one = 0;
  std::vector<Idx> m_add, m_mul, m_neg;
  std::vector<std::string> m_names;
  std::string m_desc;

  RingSpec m_spec;
  std::vector<RingElement> m_spec_elems;

  FiniteRingPtr m_ambient;
  std::vector<Idx> m_to_ambient;
  std::vector<int64_t> m_from_ambient;

  FiniteRingPtr m_parent;
  std::vector<Idx> m_project;
  std::vector<Idx> m_coset_rep;

  unsigned m_witt_p = 0, m_witt_len = 0;
  RingSpec m_witt_base;
  std::vector<RingElement> m_witt_base_elems;

  mutable std::shared_ptr<AdditiveModel> m_additive;
};

// Ring homomorphism between finite rings as a total map on element indices.
struct FinRingHom {
  FiniteRingPtr src, dst;
  std::vector<FiniteRing::Idx> map;

  FiniteRing::Idx operator()(FiniteRing::Idx a) const { return map[a]; }
  bool is_hom() const;         // preserves 0, 1, +, *
  bool is_surjective() const;
  std::vector<FiniteRing::Idx> kernel_set() const;  // full kernel (an ideal)
  static FinRingHom compose(const FinRingHom& g, const FinRingHom& f);  // g after f
  static FinRingHom identity(const FiniteRingPtr& r);
};

// Finitely generated ideal of a finite ring, with its full element set.
struct FinIdeal {
  FiniteRingPtr ring;
  std::vector<FiniteRing::Idx> gens;
  std::vector<FiniteRing::Idx> set;  // sorted, closed

  bool contains(FiniteRing::Idx x) const;
  bool operator==(const FinIdeal& o) const { return set == o.set; }
};

FinIdeal ideal_from_gens(const FiniteRingPtr& r, std::vector<FiniteRing::Idx> gens);
FinIdeal ideal_product(const FinIdeal& a, const FinIdeal& b);
FinIdeal ideal_sum(const FinIdeal& a, const FinIdeal& b);
FinIdeal ideal_power(const FinIdeal& a, unsigned k);
// k-th powers of all ELEMENTS of the ideal, as a generating set.
FinIdeal ideal_element_power_ideal(const FinIdeal& a, unsigned k);
bool ideal_is_idempotent(const FinIdeal& a);
// Image ideal f(I)·dst.
FinIdeal ideal_image(const FinRingHom& f, const FinIdeal& I);
// Preimage f^{-1}(I) as a full set (it is an ideal when I is).
std::vector<FiniteRing::Idx> ideal_preimage_set(const FinRingHom& f, const FinIdeal& I);

// All ideals of the ring (lattice enumeration by closure BFS).
std::vector<FinIdeal> all_ideals(const FiniteRingPtr& r);

}  // namespace aw

#endif
