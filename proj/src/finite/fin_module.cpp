#include "finite/fin_module.hpp"

#include <algorithm>
#include <set>

#include "rings/errors.hpp"

namespace aw {

using Idx = FiniteRing::Idx;
using Elem = FinModule::Elem;

namespace {

// ring element from an integer combination of the additive generators
Idx ring_combo(const FiniteRing& R, const AdditiveModel& am,
               const std::function<const mpz_class&(size_t)>& coeff) {
  Idx c = R.zero();
  for (size_t k = 0; k < am.gens.size(); ++k) {
    mpz_class rr, om(am.orders[k]);
    mpz_mod(rr.get_mpz_t(), coeff(k).get_mpz_t(), om.get_mpz_t());
    for (unsigned long q = 0, reps = rr.get_ui(); q < reps; ++q) c = R.add(c, am.gens[k]);
  }
  return c;
}

std::vector<Idx> rvec_from_gamma(const FiniteRing& R, const AdditiveModel& am, const ZMat& K,
                                 size_t col, size_t r) {
  size_t d = am.gens.size();
  std::vector<Idx> rel(r, R.zero());
  for (size_t a = 0; a < r; ++a)
    rel[a] = ring_combo(R, am, [&](size_t k) -> const mpz_class& { return K.at(a * d + k, col); });
  return rel;
}

}  // namespace

std::vector<mpz_class> ZModel::to_smith(const std::vector<mpz_class>& ambient_vec) const {
  return reduce(U.apply(ambient_vec));
}

std::vector<mpz_class> ZModel::reduce(std::vector<mpz_class> v) const {
  for (size_t i = 0; i < diag.size(); ++i) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v[i].get_mpz_t(), diag[i].get_mpz_t());
    v[i] = r;
  }
  return v;
}

ZModel zmodel_from_lattice(size_t ambient, const ZMat& lattice_cols) {
  SmithForm f = smith_form(lattice_cols);
  if (f.rank != ambient)
    throw InternalError("module lattice is not full rank; module would be infinite");
  ZModel zm;
  zm.ambient = ambient;
  zm.U = f.U;
  zm.Uinv = f.Uinv;
  zm.diag.assign(f.diag.begin(), f.diag.begin() + ambient);
  for (const auto& d : zm.diag) zm.size *= d;
  return zm;
}

void FinModule::build_zmodel() {
  const AdditiveModel& am = m_ring->additive_model();
  size_t d = am.gens.size();
  size_t N = m_ngens * d;

  // lattice columns: per-generator copies of the ring's additive relation
  // lattice, plus every relation vector multiplied through by each additive
  // generator of the ring
  std::vector<std::vector<mpz_class>> cols;
  for (size_t i = 0; i < m_ngens; ++i)
    for (size_t j = 0; j < am.lattice.cols(); ++j) {
      std::vector<mpz_class> v(N, 0);
      for (size_t k = 0; k < d; ++k) v[i * d + k] = am.lattice.at(k, j);
      cols.push_back(std::move(v));
    }
  for (const auto& rel : m_rels) {
    if (rel.size() != m_ngens) throw StructuralError("relation vector has the wrong length");
    for (size_t k = 0; k < d; ++k) {
      std::vector<mpz_class> v(N, 0);
      for (size_t i = 0; i < m_ngens; ++i) {
        Idx coef = m_ring->mul(am.gens[k], rel[i]);
        const auto& ex = am.expr[coef];
        for (size_t l = 0; l < d; ++l) v[i * d + l] += ex[l];
      }
      cols.push_back(std::move(v));
    }
  }
  ZMat L(N, cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < N; ++i) L.at(i, j) = cols[j][i];
  m_zm = zmodel_from_lattice(N, L);

  // ambient action of ring additive generator b_k: (b_j x gen_i) -> expr(b_k b_j) block i
  m_act.clear();
  for (size_t k = 0; k < d; ++k) {
    ZMat amb(N, N);
    for (size_t i = 0; i < m_ngens; ++i)
      for (size_t j = 0; j < d; ++j) {
        const auto& ex = am.gen_prod[k * d + j];
        for (size_t l = 0; l < d; ++l) amb.at(i * d + l, i * d + j) = ex[l];
      }
    m_act.push_back(m_zm.U * amb * m_zm.Uinv);
  }
}

FinModule FinModule::from_presentation(FiniteRingPtr R, size_t ngens,
                                       std::vector<std::vector<Idx>> rels) {
  FinModule m;
  m.m_ring = std::move(R);
  m.m_ngens = ngens;
  m.m_rels = std::move(rels);
  m.build_zmodel();
  return m;
}

FinModule FinModule::free_module(FiniteRingPtr R, size_t rank) {
  return from_presentation(std::move(R), rank, {});
}

FinModule FinModule::from_ring_action(FiniteRingPtr R, FiniteRingPtr S,
                                      std::function<Idx(Idx, Idx)> act, std::string desc) {
  const AdditiveModel& amR = R->additive_model();
  const AdditiveModel& amS = S->additive_model();
  size_t dR = amR.gens.size(), e = amS.gens.size(), dS = amS.gens.size();

  // generators: additive generators of S; relations: box syzygies of the
  // action, W[(a,k)] = expr_S(b_k^R o g_a^S)
  ZMat W(dS, e * dR + amS.lattice.cols());
  for (size_t a = 0; a < e; ++a)
    for (size_t k = 0; k < dR; ++k) {
      Idx img = act(amR.gens[k], amS.gens[a]);
      const auto& ex = amS.expr[img];
      for (size_t l = 0; l < dS; ++l) W.at(l, a * dR + k) = ex[l];
    }
  for (size_t j = 0; j < amS.lattice.cols(); ++j)
    for (size_t l = 0; l < dS; ++l) W.at(l, e * dR + j) = amS.lattice.at(l, j);
  ZMat K = integer_kernel(W);
  std::vector<std::vector<Idx>> rels;
  for (size_t j = 0; j < K.cols(); ++j) {
    auto rel = rvec_from_gamma(*R, amR, K, j, e);
    if (std::any_of(rel.begin(), rel.end(), [&](Idx c) { return c != R->zero(); }))
      rels.push_back(std::move(rel));
  }
  FinModule m = from_presentation(R, e, std::move(rels));
  m.m_desc = std::move(desc);
  m.m_carrier = S;
  // sanity: module structure must reproduce the declared action on generators
  for (size_t a = 0; a < e; ++a)
    for (size_t k = 0; k < dR; ++k) {
      Elem lhs = m.scalar_mul(amR.gens[k], m.gen_elem(a));
      Elem rhs = m.carrier_elem(act(amR.gens[k], amS.gens[a]));
      if (lhs != rhs) throw InternalError("ring action is not additive/linear as declared");
    }
  return m;
}

Elem FinModule::carrier_elem(Idx s) const {
  if (!m_carrier) throw StructuralError("module was not built from a ring action");
  const AdditiveModel& amS = m_carrier->additive_model();
  const auto& ex = amS.expr[s];
  Elem acc(m_zm.diag.size(), 0);
  for (size_t a = 0; a < m_ngens; ++a) {
    if (ex[a] == 0) continue;
    Elem g = gen_elem(a);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += ex[a] * g[i];
  }
  return m_zm.reduce(std::move(acc));
}

Elem FinModule::gen_elem(size_t i) const {
  const AdditiveModel& am = m_ring->additive_model();
  size_t d = am.gens.size();
  std::vector<mpz_class> amb(m_ngens * d, 0);
  const auto& one_ex = am.expr[m_ring->one()];
  for (size_t k = 0; k < d; ++k) amb[i * d + k] = one_ex[k];
  return m_zm.to_smith(amb);
}

Elem FinModule::add(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return m_zm.reduce(std::move(r));
}

Elem FinModule::neg(const Elem& a) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return m_zm.reduce(std::move(r));
}

Elem FinModule::scalar_mul(Idx r, const Elem& a) const {
  const AdditiveModel& am = m_ring->additive_model();
  const auto& ex = am.expr[r];
  Elem acc(m_zm.diag.size(), 0);
  for (size_t k = 0; k < m_act.size(); ++k) {
    if (ex[k] == 0) continue;
    auto part = m_act[k].apply(a);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += ex[k] * part[i];
  }
  return m_zm.reduce(std::move(acc));
}

bool FinModule::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](const mpz_class& x) { return x == 0; });
}

std::vector<Elem> FinModule::enumerate() const {
  std::vector<Elem> out;
  if (m_zm.size > 500000) throw InternalError("module too large to enumerate");
  Elem cur = zero_elem();
  while (true) {
    out.push_back(cur);
    size_t j = 0;
    for (; j < cur.size(); ++j) {
      cur[j] += 1;
      if (cur[j] < m_zm.diag[j]) break;
      cur[j] = 0;
    }
    if (j == cur.size()) break;
  }
  return out;
}

std::vector<Idx> FinModule::element_to_rvec(const Elem& e) const {
  const AdditiveModel& am = m_ring->additive_model();
  size_t d = am.gens.size();
  std::vector<mpz_class> amb = m_zm.Uinv.apply(e);
  std::vector<Idx> out(m_ngens, m_ring->zero());
  for (size_t i = 0; i < m_ngens; ++i)
    out[i] =
        ring_combo(*m_ring, am, [&](size_t k) -> const mpz_class& { return amb[i * d + k]; });
  return out;
}

std::optional<std::vector<Idx>> FinModule::express(const Elem& target,
                                                   const std::vector<Elem>& elems) const {
  const AdditiveModel& am = m_ring->additive_model();
  size_t d = am.gens.size(), r = elems.size(), D = m_zm.diag.size();
  ZMat W(D, r * d + D);
  for (size_t a = 0; a < r; ++a)
    for (size_t k = 0; k < d; ++k) {
      Elem col = scalar_mul(am.gens[k], elems[a]);
      for (size_t i = 0; i < D; ++i) W.at(i, a * d + k) = col[i];
    }
  for (size_t i = 0; i < D; ++i) W.at(i, r * d + i) = m_zm.diag[i];
  std::vector<mpz_class> sol;
  if (!lattice_contains(W, target, &sol)) return std::nullopt;
  std::vector<Idx> out(r, m_ring->zero());
  for (size_t a = 0; a < r; ++a)
    out[a] =
        ring_combo(*m_ring, am, [&](size_t k) -> const mpz_class& { return sol[a * d + k]; });
  return out;
}

std::vector<mpz_class> FinModule::invariant_factors() const {
  std::vector<mpz_class> out;
  for (const auto& dgn : m_zm.diag)
    if (dgn > 1) out.push_back(dgn);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Maps

Elem FinModMap::apply(const Elem& v) const { return dst_zm.reduce(A.apply(v)); }

FinModMap FinModMap::zero_map(const FinModule& s, const FinModule& d) {
  FinModMap f;
  f.src_zm = s.zmodel();
  f.dst_zm = d.zmodel();
  f.A = ZMat(d.zmodel().diag.size(), s.zmodel().diag.size());
  return f;
}

FinModMap FinModMap::identity(const FinModule& m) {
  FinModMap f;
  f.src_zm = m.zmodel();
  f.dst_zm = m.zmodel();
  f.A = ZMat::identity(m.zmodel().diag.size());
  return f;
}

FinModMap FinModMap::from_gen_images(const FinModule& s, const FinModule& d,
                                     const std::vector<Elem>& images) {
  if (images.size() != s.ngens()) throw StructuralError("one image per generator required");
  const AdditiveModel& am = s.ring()->additive_model();
  size_t dd = am.gens.size();
  size_t N = s.ngens() * dd;
  ZMat amb(d.zmodel().diag.size(), N);
  for (size_t i = 0; i < s.ngens(); ++i)
    for (size_t k = 0; k < dd; ++k) {
      Elem col = d.scalar_mul(am.gens[k], images[i]);
      for (size_t r = 0; r < col.size(); ++r) amb.at(r, i * dd + k) = col[r];
    }
  FinModMap f;
  f.src_zm = s.zmodel();
  f.dst_zm = d.zmodel();
  f.A = amb * s.zmodel().Uinv;
  for (const auto& rel : s.rels()) {
    Elem img = d.zero_elem();
    for (size_t i = 0; i < s.ngens(); ++i) img = d.add(img, d.scalar_mul(rel[i], images[i]));
    if (!d.is_zero(img)) throw StructuralError("map does not respect module relations");
  }
  return f;
}

FinModMap FinModMap::from_rmatrix(const FinModule& s, const FinModule& d,
                                  const std::vector<std::vector<Idx>>& rmat_cols) {
  std::vector<Elem> images;
  for (const auto& col : rmat_cols) {
    if (col.size() != d.ngens()) throw StructuralError("rmatrix column length mismatch");
    Elem img = d.zero_elem();
    for (size_t j = 0; j < d.ngens(); ++j) img = d.add(img, d.scalar_mul(col[j], d.gen_elem(j)));
    images.push_back(std::move(img));
  }
  return from_gen_images(s, d, images);
}

FinModMap FinModMap::compose(const FinModMap& g, const FinModMap& f) {
  FinModMap h;
  h.src_zm = f.src_zm;
  h.dst_zm = g.dst_zm;
  h.A = g.A * f.A;
  return h;
}

FinModMap FinModMap::operator-(const FinModMap& o) const {
  FinModMap h;
  h.src_zm = src_zm;
  h.dst_zm = dst_zm;
  h.A = ZMat(A.rows(), A.cols());
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j) h.A.at(i, j) = A.at(i, j) - o.A.at(i, j);
  return h;
}

namespace {

// solution lattice of {x : Ax = 0 mod dst diag}, columns include src diag
ZMat solution_lattice(const FinModMap& f) {
  size_t Ds = f.src_zm.diag.size(), Dd = f.dst_zm.diag.size();
  ZMat full(Dd, Ds + Dd);
  for (size_t i = 0; i < Dd; ++i) {
    for (size_t j = 0; j < Ds; ++j) full.at(i, j) = f.A.at(i, j);
    full.at(i, Ds + i) = f.dst_zm.diag[i];
  }
  ZMat K = integer_kernel(full);
  ZMat sol(Ds, K.cols() + Ds);
  for (size_t j = 0; j < K.cols(); ++j)
    for (size_t i = 0; i < Ds; ++i) sol.at(i, j) = K.at(i, j);
  for (size_t i = 0; i < Ds; ++i) sol.at(i, K.cols() + i) = f.src_zm.diag[i];
  return sol;
}

}  // namespace

std::vector<Elem> FinModMap::kernel_elements() const {
  ZMat sol = solution_lattice(*this);
  std::set<Elem> out;
  for (size_t j = 0; j < sol.cols(); ++j) {
    Elem v(sol.rows());
    for (size_t i = 0; i < sol.rows(); ++i) v[i] = sol.at(i, j);
    v = src_zm.reduce(std::move(v));
    bool nonzero = std::any_of(v.begin(), v.end(), [](const mpz_class& x) { return x != 0; });
    if (nonzero) out.insert(std::move(v));
  }
  return std::vector<Elem>(out.begin(), out.end());
}

mpz_class FinModMap::kernel_size() const {
  ZMat sol = solution_lattice(*this);
  SmithForm f = smith_form(sol);
  size_t Ds = src_zm.diag.size();
  if (f.rank < Ds) throw InternalError("solution lattice not full rank");
  mpz_class covol = 1;
  for (size_t i = 0; i < Ds; ++i) covol *= f.diag[i];
  mpz_class src_covol = 1;
  for (const auto& dgn : src_zm.diag) src_covol *= dgn;
  return src_covol / covol;
}

mpz_class FinModMap::image_size() const { return src_zm.size / kernel_size(); }

bool FinModMap::is_injective() const { return kernel_size() == 1; }

bool FinModMap::is_surjective() const { return image_size() == dst_zm.size; }

// ---------------------------------------------------------------------------
// Constructions

SubmodulePresentation submodule_from_elements(const FinModule& M, const std::vector<Elem>& elems) {
  const AdditiveModel& am = M.ring()->additive_model();
  size_t d = am.gens.size(), r = elems.size(), D = M.zmodel().diag.size();
  ZMat W(D, r * d + D);
  for (size_t a = 0; a < r; ++a)
    for (size_t k = 0; k < d; ++k) {
      Elem col = M.scalar_mul(am.gens[k], elems[a]);
      for (size_t i = 0; i < D; ++i) W.at(i, a * d + k) = col[i];
    }
  for (size_t i = 0; i < D; ++i) W.at(i, r * d + i) = M.zmodel().diag[i];
  ZMat K = integer_kernel(W);
  std::vector<std::vector<Idx>> rels;
  for (size_t j = 0; j < K.cols(); ++j) {
    auto rel = rvec_from_gamma(*M.ring(), am, K, j, r);
    if (std::any_of(rel.begin(), rel.end(), [&](Idx c) { return c != M.ring()->zero(); }))
      rels.push_back(std::move(rel));
  }
  SubmodulePresentation out{FinModule::from_presentation(M.ring(), r, std::move(rels)), {}};
  out.incl = FinModMap::from_gen_images(out.sub, M, elems);
  return out;
}

QuotientPresentation quotient_by_elements(const FinModule& M, const std::vector<Elem>& elems) {
  auto rels = M.rels();
  for (const auto& e : elems) rels.push_back(M.element_to_rvec(e));
  QuotientPresentation out{FinModule::from_presentation(M.ring(), M.ngens(), std::move(rels)), {}};
  std::vector<Elem> images;
  for (size_t i = 0; i < M.ngens(); ++i) images.push_back(out.quot.gen_elem(i));
  out.proj = FinModMap::from_gen_images(M, out.quot, images);
  return out;
}

DirectSum direct_sum(const FinModule& M, const FinModule& N) {
  size_t n = M.ngens() + N.ngens();
  std::vector<std::vector<Idx>> rels;
  for (const auto& r : M.rels()) {
    std::vector<Idx> v(n, M.ring()->zero());
    std::copy(r.begin(), r.end(), v.begin());
    rels.push_back(std::move(v));
  }
  for (const auto& r : N.rels()) {
    std::vector<Idx> v(n, M.ring()->zero());
    std::copy(r.begin(), r.end(), v.begin() + M.ngens());
    rels.push_back(std::move(v));
  }
  DirectSum out{FinModule::from_presentation(M.ring(), n, std::move(rels)), {}, {}, {}, {}};
  std::vector<Elem> im1, im2;
  for (size_t i = 0; i < M.ngens(); ++i) im1.push_back(out.sum.gen_elem(i));
  for (size_t j = 0; j < N.ngens(); ++j) im2.push_back(out.sum.gen_elem(M.ngens() + j));
  out.in1 = FinModMap::from_gen_images(M, out.sum, im1);
  out.in2 = FinModMap::from_gen_images(N, out.sum, im2);
  std::vector<Elem> pr1_imgs, pr2_imgs;
  for (size_t i = 0; i < n; ++i) {
    pr1_imgs.push_back(i < M.ngens() ? M.gen_elem(i) : M.zero_elem());
    pr2_imgs.push_back(i < M.ngens() ? N.zero_elem() : N.gen_elem(i - M.ngens()));
  }
  out.pr1 = FinModMap::from_gen_images(out.sum, M, pr1_imgs);
  out.pr2 = FinModMap::from_gen_images(out.sum, N, pr2_imgs);
  return out;
}

FinModule tensor(const FinModule& M, const FinModule& N) {
  size_t n = M.ngens() * N.ngens();
  std::vector<std::vector<Idx>> rels;
  for (const auto& r : M.rels())
    for (size_t j = 0; j < N.ngens(); ++j) {
      std::vector<Idx> v(n, M.ring()->zero());
      for (size_t i = 0; i < M.ngens(); ++i) v[i * N.ngens() + j] = r[i];
      rels.push_back(std::move(v));
    }
  for (const auto& r : N.rels())
    for (size_t i = 0; i < M.ngens(); ++i) {
      std::vector<Idx> v(n, M.ring()->zero());
      for (size_t j = 0; j < N.ngens(); ++j) v[i * N.ngens() + j] = r[j];
      rels.push_back(std::move(v));
    }
  return FinModule::from_presentation(M.ring(), n, std::move(rels));
}

FinModule base_change(const FinModule& M, const FinRingHom& f) {
  std::vector<std::vector<Idx>> rels;
  for (const auto& r : M.rels()) {
    std::vector<Idx> v(r.size());
    for (size_t i = 0; i < r.size(); ++i) v[i] = f(r[i]);
    rels.push_back(std::move(v));
  }
  return FinModule::from_presentation(f.dst, M.ngens(), std::move(rels));
}

IdealModule ideal_module(const FinIdeal& J) {
  FinModule freeR = FinModule::free_module(J.ring, 1);
  std::vector<Elem> gens;
  for (Idx g : J.gens) gens.push_back(freeR.scalar_mul(g, freeR.gen_elem(0)));
  auto sub = submodule_from_elements(freeR, gens);
  return IdealModule{std::move(sub.sub), J.gens};
}

TorModule tor1_against_quotient(const FinModule& M, const FinIdeal& J) {
  IdealModule jm = ideal_module(J);
  TorModule out{tensor(jm.mod, M), {}, {}, {}};
  std::vector<std::vector<Idx>> cols;
  for (size_t a = 0; a < jm.mod.ngens(); ++a)
    for (size_t i = 0; i < M.ngens(); ++i) {
      std::vector<Idx> col(M.ngens(), M.ring()->zero());
      col[i] = jm.gens[a];
      cols.push_back(std::move(col));
    }
  out.mult = FinModMap::from_rmatrix(out.jm, M, cols);
  auto ker = out.mult.kernel_elements();
  auto sub = submodule_from_elements(out.jm, ker);
  out.tor = std::move(sub.sub);
  out.incl = std::move(sub.incl);
  return out;
}

}  // namespace aw
