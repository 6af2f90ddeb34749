#ifndef AW_FINITE_FIN_MODULE_HPP
#define AW_FINITE_FIN_MODULE_HPP

#include <functional>
#include <optional>

#include "finite/finite_ring.hpp"

namespace aw {

// Finite abelian group presented in Smith coordinates: Z^D / lattice, with
// coordinates reduced to (w_0 mod d_0, ..., w_{D-1} mod d_{D-1}).
struct ZModel {
  size_t ambient = 0;              // ambient Z-rank N
  ZMat U, Uinv;                    // smith transforms of the lattice basis
  std::vector<mpz_class> diag;     // D = ambient entries, all nonzero
  mpz_class size = 1;

  std::vector<mpz_class> to_smith(const std::vector<mpz_class>& ambient_vec) const;
  std::vector<mpz_class> reduce(std::vector<mpz_class> smith_vec) const;
  std::vector<mpz_class> zero() const { return std::vector<mpz_class>(diag.size(), 0); }
};

ZModel zmodel_from_lattice(size_t ambient, const ZMat& lattice_cols);

// Finitely presented module over a FiniteRing with a Z-model backing all
// computations.  Elements are reduced Smith-coordinate vectors.
class FinModule {
public:
  using Elem = std::vector<mpz_class>;

  static FinModule from_presentation(FiniteRingPtr R, size_t ngens,
                                     std::vector<std::vector<FiniteRing::Idx>> rels);
  static FinModule free_module(FiniteRingPtr R, size_t rank);
  // R acting on the elements of the ring S through `act` (additive in both
  // arguments, R-linear semantics supplied by the caller, e.g. restriction of
  // scalars through a hom or a ghost/Frobenius twist).
  static FinModule from_ring_action(FiniteRingPtr R, FiniteRingPtr S,
                                    std::function<FiniteRing::Idx(FiniteRing::Idx, FiniteRing::Idx)> act,
                                    std::string desc = {});

  const FiniteRingPtr& ring() const { return m_ring; }
  size_t ngens() const { return m_ngens; }
  const std::vector<std::vector<FiniteRing::Idx>>& rels() const { return m_rels; }
  const ZModel& zmodel() const { return m_zm; }
  const mpz_class& size() const { return m_zm.size; }

  Elem zero_elem() const { return m_zm.zero(); }
  Elem gen_elem(size_t i) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem scalar_mul(FiniteRing::Idx r, const Elem& a) const;
  bool is_zero(const Elem& a) const;

  // For modules built by from_ring_action: the element of this module that a
  // ring element of S corresponds to.
  Elem carrier_elem(FiniteRing::Idx s) const;

  std::vector<Elem> enumerate() const;  // all elements (use on small modules)

  // Express an element as an R-combination of this module's generators.
  std::vector<FiniteRing::Idx> element_to_rvec(const Elem& e) const;

  // Express target as an R-combination of the given elements, if possible.
  std::optional<std::vector<FiniteRing::Idx>> express(const Elem& target,
                                                      const std::vector<Elem>& elems) const;

  // Invariant factors (the diag entries > 1), a readable size signature.
  std::vector<mpz_class> invariant_factors() const;

private:
  friend struct FinModMap;
  FiniteRingPtr m_ring;
  size_t m_ngens = 0;
  std::vector<std::vector<FiniteRing::Idx>> m_rels;
  ZModel m_zm;
  std::vector<ZMat> m_act;  // smith-coord action of each R additive generator
  std::string m_desc;
  FiniteRingPtr m_carrier;  // from_ring_action only

  void build_zmodel();
};

// Z-linear map between the Smith models of two modules; by construction the
// maps we build are R-linear.  Owns copies of the endpoint models so modules
// can be moved around freely.
struct FinModMap {
  ZModel src_zm, dst_zm;
  ZMat A;  // dst smith coords x src smith coords

  FinModule::Elem apply(const FinModule::Elem& v) const;

  static FinModMap zero_map(const FinModule& s, const FinModule& d);
  static FinModMap identity(const FinModule& m);
  // column j of rmat (over R, length dst.ngens) = image of src generator j
  static FinModMap from_rmatrix(const FinModule& s, const FinModule& d,
                                const std::vector<std::vector<FiniteRing::Idx>>& rmat_cols);
  static FinModMap from_gen_images(const FinModule& s, const FinModule& d,
                                   const std::vector<FinModule::Elem>& images);
  static FinModMap compose(const FinModMap& g, const FinModMap& f);
  FinModMap operator-(const FinModMap& o) const;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  mpz_class kernel_size() const;
  mpz_class image_size() const;
  // Z-generators of the kernel, as elements of src.
  std::vector<FinModule::Elem> kernel_elements() const;
};

// Abstract submodule generated by elements, with its inclusion map.
struct SubmodulePresentation {
  FinModule sub;
  FinModMap incl;  // sub -> ambient
};
SubmodulePresentation submodule_from_elements(const FinModule& M,
                                              const std::vector<FinModule::Elem>& elems);

// M / <elems>; also returns the projection.
struct QuotientPresentation {
  FinModule quot;
  FinModMap proj;  // M -> quot
};
QuotientPresentation quotient_by_elements(const FinModule& M,
                                          const std::vector<FinModule::Elem>& elems);

// M (+) N with the two injections.
struct DirectSum {
  FinModule sum;
  FinModMap in1, in2, pr1, pr2;
};
DirectSum direct_sum(const FinModule& M, const FinModule& N);

// M (x)_R N; tensor generator (i, j) sits at index i * N.ngens + j.
FinModule tensor(const FinModule& M, const FinModule& N);

// Pure base change along a ring hom f: R -> S (relations mapped entrywise).
FinModule base_change(const FinModule& M, const FinRingHom& f);

// J as an abstract module with its multiplication-in map (J tensor M -> M is
// built on top of this).
struct IdealModule {
  FinModule mod;                       // presentation of J
  std::vector<FiniteRing::Idx> gens;   // the ideal generators used
};
IdealModule ideal_module(const FinIdeal& J);

// Tor_1^R(M, R/J) = ker(J (x) M -> M), returned with its inclusion into J(x)M.
struct TorModule {
  FinModule jm;       // J (x) M
  FinModMap mult;     // J (x) M -> M
  FinModule tor;      // the kernel
  FinModMap incl;     // tor -> jm
};
TorModule tor1_against_quotient(const FinModule& M, const FinIdeal& J);

}  // namespace aw

#endif
