#include "almost/presented_module.hpp"

#include <sstream>

#include "rings/errors.hpp"

namespace aw {

PresentedModule::PresentedModule(RingSpec ring, RingMatrix rel)
    : m_ring(std::move(ring)), m_rel(std::move(rel)) {
  if (!snf_supported(m_ring))
    throw UnsupportedError("presented modules need a Euclidean level ring, got " + m_ring.str());
  if (!(m_rel.spec() == m_ring)) throw StructuralError("relation matrix over the wrong ring");
}

PresentedModule PresentedModule::free(const RingSpec& ring, size_t rank) {
  return PresentedModule(ring, RingMatrix(ring, rank, 0));
}

const RingSmithForm& PresentedModule::snf() const {
  if (!m_snf) m_snf = std::make_shared<RingSmithForm>(smith_normal_form(m_rel));
  return *m_snf;
}

std::vector<RingElement> PresentedModule::diag() const {
  std::vector<RingElement> out(ngens(), RingElement::zero(m_ring));
  const RingSmithForm& f = snf();
  for (size_t i = 0; i < std::min(ngens(), m_rel.cols()); ++i) out[i] = f.D.at(i, i);
  return out;
}

size_t PresentedModule::free_rank() const {
  size_t r = 0;
  for (const auto& d : diag())
    if (d.is_zero()) ++r;
  return r;
}

bool PresentedModule::is_zero_module() const {
  for (const auto& d : diag()) {
    if (d.is_zero() || !elem_is_unit(d)) return false;
  }
  return true;
}

bool PresentedModule::is_torsion_free() const {
  for (const auto& d : diag())
    if (!d.is_zero() && !elem_is_unit(d)) return false;
  return true;
}

bool PresentedModule::elem_is_zero(const std::vector<RingElement>& v) const {
  return column_space_contains(m_rel, v);
}

bool PresentedModule::elems_equal(const std::vector<RingElement>& a,
                                  const std::vector<RingElement>& b) const {
  std::vector<RingElement> d;
  for (size_t i = 0; i < a.size(); ++i) d.push_back(RingElement::sub(a[i], b[i]));
  return elem_is_zero(d);
}

bool PresentedModule::in_submodule(const std::vector<RingElement>& v,
                                   const std::vector<std::vector<RingElement>>& gens) const {
  RingMatrix G = RingMatrix::from_columns(m_ring, ngens(), gens);
  return column_space_contains(G.hstack(m_rel), v);
}

PresentedModule PresentedModule::level_embed(unsigned new_level) const {
  RingSpec target = m_ring.at_level(new_level);
  RingMatrix rel = m_rel.map_entries(target, [&](const RingElement& e) {
    return e.level_embed(new_level);
  });
  return PresentedModule(target, std::move(rel));
}

std::string PresentedModule::str() const {
  std::ostringstream os;
  os << "coker" << m_rel.str() << " over " << m_ring.str();
  return os.str();
}

PresentedMap PresentedMap::make(PresentedModule src, PresentedModule dst, RingMatrix F) {
  PresentedMap f{std::move(src), std::move(dst), std::move(F)};
  if (f.F.rows() != f.dst.ngens() || f.F.cols() != f.src.ngens())
    throw StructuralError("map matrix has the wrong shape");
  if (!f.well_defined()) throw StructuralError("map does not respect relations");
  return f;
}

bool PresentedMap::well_defined() const {
  RingMatrix img = F * src.rel();
  for (size_t j = 0; j < img.cols(); ++j) {
    std::vector<RingElement> col;
    for (size_t i = 0; i < img.rows(); ++i) col.push_back(img.at(i, j));
    if (!dst.elem_is_zero(col)) return false;
  }
  return true;
}

std::vector<RingElement> PresentedMap::apply(const std::vector<RingElement>& v) const {
  return F.apply(v);
}

KernelResult kernel_module(const PresentedMap& f) {
  const RingSpec& R = f.src.ring();
  // X = {x : F x in im(B)} = projection of ker([F | B]) to the x block
  RingMatrix FB = f.F.hstack(f.dst.rel());
  RingMatrix K = ring_kernel(FB);
  size_t n = f.src.ngens();
  std::vector<std::vector<RingElement>> xgens;
  for (size_t j = 0; j < K.cols(); ++j) {
    std::vector<RingElement> col;
    bool nonzero = false;
    for (size_t i = 0; i < n; ++i) {
      col.push_back(K.at(i, j));
      nonzero = nonzero || !K.at(i, j).is_zero();
    }
    if (nonzero) xgens.push_back(std::move(col));
  }
  // relations of X/im(A): {c : Xmat c in im(A)}
  RingMatrix Xmat = RingMatrix::from_columns(R, n, xgens);
  RingMatrix XA = Xmat.hstack(f.src.rel());
  RingMatrix K2 = ring_kernel(XA);
  std::vector<std::vector<RingElement>> rels;
  for (size_t j = 0; j < K2.cols(); ++j) {
    std::vector<RingElement> col;
    bool nonzero = false;
    for (size_t i = 0; i < xgens.size(); ++i) {
      col.push_back(K2.at(i, j));
      nonzero = nonzero || !K2.at(i, j).is_zero();
    }
    if (nonzero) rels.push_back(std::move(col));
  }
  KernelResult out;
  out.kernel = PresentedModule(R, RingMatrix::from_columns(R, xgens.size(), rels));
  out.gens_in_src = std::move(xgens);
  return out;
}

PresentedModule cokernel_module(const PresentedMap& f) {
  return PresentedModule(f.dst.ring(), f.dst.rel().hstack(f.F));
}

IdealTensor ideal_tensor(const std::vector<RingElement>& ideal_gens, const PresentedModule& M) {
  const RingSpec& R = M.ring();
  size_t r = ideal_gens.size(), n = M.ngens();
  // syzygies of the ideal generators: kernel of the 1 x r row [g_1 .. g_r]
  RingMatrix row(R, 1, r);
  for (size_t a = 0; a < r; ++a) row.at(0, a) = ideal_gens[a];
  RingMatrix syz = ring_kernel(row);

  std::vector<std::vector<RingElement>> rels;
  // Syz (x) e_i
  for (size_t j = 0; j < syz.cols(); ++j)
    for (size_t i = 0; i < n; ++i) {
      std::vector<RingElement> v(r * n, RingElement::zero(R));
      for (size_t a = 0; a < r; ++a) v[a * n + i] = syz.at(a, j);
      rels.push_back(std::move(v));
    }
  // g_a (x) rel_j
  for (size_t j = 0; j < M.rel().cols(); ++j)
    for (size_t a = 0; a < r; ++a) {
      std::vector<RingElement> v(r * n, RingElement::zero(R));
      for (size_t i = 0; i < n; ++i) v[a * n + i] = M.rel().at(i, j);
      rels.push_back(std::move(v));
    }
  IdealTensor out;
  out.tensor = PresentedModule(R, RingMatrix::from_columns(R, r * n, rels));
  out.ideal_gens = ideal_gens;
  RingMatrix F(R, n, r * n);
  for (size_t a = 0; a < r; ++a)
    for (size_t i = 0; i < n; ++i) F.at(i, a * n + i) = ideal_gens[a];
  out.mult = PresentedMap::make(out.tensor, M, std::move(F));
  return out;
}

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  if (!(a.ring() == b.ring())) throw StructuralError("direct sum across rings");
  size_t n = a.ngens() + b.ngens();
  RingMatrix rel(a.ring(), n, a.rel().cols() + b.rel().cols());
  for (size_t j = 0; j < a.rel().cols(); ++j)
    for (size_t i = 0; i < a.ngens(); ++i) rel.at(i, j) = a.rel().at(i, j);
  for (size_t j = 0; j < b.rel().cols(); ++j)
    for (size_t i = 0; i < b.ngens(); ++i)
      rel.at(a.ngens() + i, a.rel().cols() + j) = b.rel().at(i, j);
  return PresentedModule(a.ring(), std::move(rel));
}

}  // namespace aw
