#include "rings/snf.hpp"

#include <sstream>

#include "rings/errors.hpp"

namespace aw {

RingMatrix::RingMatrix(const RingSpec& s, size_t rows, size_t cols)
    : m_spec(s), m_rows(rows), m_cols(cols), m_e(rows * cols, RingElement::zero(s)) {}

RingMatrix RingMatrix::identity(const RingSpec& s, size_t n) {
  RingMatrix r(s, n, n);
  for (size_t i = 0; i < n; ++i) r.at(i, i) = RingElement::one(s);
  return r;
}

RingMatrix RingMatrix::from_columns(const RingSpec& s, size_t rows,
                                    const std::vector<std::vector<RingElement>>& cols) {
  RingMatrix r(s, rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw StructuralError("column length mismatch");
    for (size_t i = 0; i < rows; ++i) r.at(i, j) = cols[j][i];
  }
  return r;
}

RingMatrix RingMatrix::operator*(const RingMatrix& o) const {
  if (m_cols != o.m_rows) throw StructuralError("matrix product dimension mismatch");
  RingMatrix r(m_spec, m_rows, o.m_cols);
  for (size_t i = 0; i < m_rows; ++i)
    for (size_t k = 0; k < m_cols; ++k) {
      if (at(i, k).is_zero()) continue;
      for (size_t j = 0; j < o.m_cols; ++j)
        r.at(i, j) = RingElement::add(r.at(i, j), RingElement::mul(at(i, k), o.at(k, j)));
    }
  return r;
}

std::vector<RingElement> RingMatrix::apply(const std::vector<RingElement>& v) const {
  if (v.size() != m_cols) throw StructuralError("matrix apply dimension mismatch");
  std::vector<RingElement> r(m_rows, RingElement::zero(m_spec));
  for (size_t i = 0; i < m_rows; ++i)
    for (size_t j = 0; j < m_cols; ++j)
      if (!at(i, j).is_zero()) r[i] = RingElement::add(r[i], RingElement::mul(at(i, j), v[j]));
  return r;
}

RingMatrix RingMatrix::hstack(const RingMatrix& o) const {
  if (m_rows != o.m_rows || !(m_spec == o.m_spec)) throw StructuralError("hstack mismatch");
  RingMatrix r(m_spec, m_rows, m_cols + o.m_cols);
  for (size_t i = 0; i < m_rows; ++i) {
    for (size_t j = 0; j < m_cols; ++j) r.at(i, j) = at(i, j);
    for (size_t j = 0; j < o.m_cols; ++j) r.at(i, m_cols + j) = o.at(i, j);
  }
  return r;
}

RingMatrix RingMatrix::transpose() const {
  RingMatrix r(m_spec, m_cols, m_rows);
  for (size_t i = 0; i < m_rows; ++i)
    for (size_t j = 0; j < m_cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool RingMatrix::operator==(const RingMatrix& o) const {
  if (m_rows != o.m_rows || m_cols != o.m_cols) return false;
  for (size_t i = 0; i < m_e.size(); ++i)
    if (m_e[i] != o.m_e[i]) return false;
  return true;
}

std::string RingMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m_rows; ++i) {
    if (i) os << "; ";
    for (size_t j = 0; j < m_cols; ++j) {
      if (j) os << ", ";
      os << at(i, j).str();
    }
  }
  os << "]";
  return os.str();
}

std::vector<RingElement> RingSmithForm::diag() const {
  std::vector<RingElement> out;
  for (size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D.at(i, i));
  return out;
}

// ---------------------------------------------------------------------------
// Euclidean structure per ring class

namespace {

bool is_poly_ring(const RingSpec& s) {
  return s.kind() == RingKind::Monomial && s.quotient_exps().empty() && s.coeff_pow() == 1;
}

long mono_degree(const RingElement& a) {
  if (a.mono().empty()) return -1;
  const ExponentQ& e = a.mono().rbegin()->first;
  mpz_class d = e.num() * pow_ui(a.spec().p(), a.spec().level() - e.den_pow());
  return d.get_si();
}

// strict "smaller Euclidean size" comparison; both arguments nonzero
bool euc_less(const RingElement& a, const RingElement& b) {
  switch (a.spec().kind()) {
    case RingKind::Integer:
      return abs(a.int_value()) < abs(b.int_value());
    case RingKind::Monomial:
      return mono_degree(a) < mono_degree(b);
    default:
      throw UnsupportedError("no Euclidean structure on " + a.spec().str());
  }
}

}  // namespace

bool euclidean_divmod(const RingElement& a, const RingElement& b, RingElement* q, RingElement* r) {
  require_same_spec(a, b, "divmod");
  const RingSpec& s = a.spec();
  if (b.is_zero()) return false;
  switch (s.kind()) {
    case RingKind::Integer: {
      mpz_class qq, rr;
      mpz_tdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), a.int_value().get_mpz_t(),
                  b.int_value().get_mpz_t());
      if (q) *q = RingElement::from_int(s, qq);
      if (r) *r = RingElement::from_int(s, rr);
      return true;
    }
    case RingKind::Monomial: {
      if (!is_poly_ring(s)) throw UnsupportedError("divmod needs a free monomial algebra");
      unsigned p = s.p();
      RingElement rem = a;
      RingElement quo = RingElement::zero(s);
      mpz_class pm(p);
      while (!rem.is_zero() && mono_degree(rem) >= mono_degree(b)) {
        const auto& rl = *rem.mono().rbegin();
        const auto& bl = *b.mono().rbegin();
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), bl.second.get_mpz_t(), pm.get_mpz_t()) == 0)
          throw InternalError("non-invertible leading coefficient mod p");
        ExponentQ shift = ExponentQ::sub(rl.first, bl.first, p);
        RingElement f = RingElement::monomial(s, shift, (rl.second * inv) % pm);
        quo = RingElement::add(quo, f);
        rem = RingElement::sub(rem, RingElement::mul(f, b));
      }
      if (q) *q = quo;
      if (r) *r = rem;
      return true;
    }
    default:
      throw UnsupportedError("no Euclidean division on " + s.str());
  }
}

RingElement euclidean_gcd(const RingElement& a0, const RingElement& b0) {
  RingElement a = a0, b = b0;
  while (!b.is_zero()) {
    RingElement r = a;
    euclidean_divmod(a, b, nullptr, &r);
    a = b;
    b = r;
  }
  // normalize to the canonical unit multiple
  const RingSpec& s = a.spec();
  if (a.is_zero()) return a;
  if (s.kind() == RingKind::Integer && a.int_value() < 0) return RingElement::neg(a);
  if (s.kind() == RingKind::Monomial) {
    mpz_class pm(s.p()), inv;
    const mpz_class& lead = a.mono().rbegin()->second;
    mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), pm.get_mpz_t());
    return RingElement::mul(a, RingElement::from_int(s, inv));
  }
  return a;
}

bool elem_is_unit(const RingElement& a) {
  const RingSpec& s = a.spec();
  switch (s.kind()) {
    case RingKind::Integer:
      return a.int_value() == 1 || a.int_value() == -1;
    case RingKind::Residue: {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.int_value().get_mpz_t(), s.modulus().get_mpz_t());
      return g == 1;
    }
    case RingKind::Monomial:
      if (is_poly_ring(s))
        return a.mono().size() == 1 && a.mono().begin()->first.is_zero();
      break;
    default:
      break;
  }
  throw UnsupportedError("elem_is_unit: unsupported ring " + s.str());
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct RingSnfWork {
  RingMatrix A, U, V;

  explicit RingSnfWork(const RingMatrix& M)
      : A(M),
        U(RingMatrix::identity(M.spec(), M.rows())),
        V(RingMatrix::identity(M.spec(), M.cols())) {}

  void row_add(size_t i, size_t k, const RingElement& c) {
    for (size_t j = 0; j < A.cols(); ++j)
      A.at(i, j) = RingElement::add(A.at(i, j), RingElement::mul(c, A.at(k, j)));
    for (size_t j = 0; j < U.cols(); ++j)
      U.at(i, j) = RingElement::add(U.at(i, j), RingElement::mul(c, U.at(k, j)));
  }
  void col_add(size_t j, size_t k, const RingElement& c) {
    for (size_t i = 0; i < A.rows(); ++i)
      A.at(i, j) = RingElement::add(A.at(i, j), RingElement::mul(c, A.at(i, k)));
    for (size_t i = 0; i < V.rows(); ++i)
      V.at(i, j) = RingElement::add(V.at(i, j), RingElement::mul(c, V.at(i, k)));
  }
  void row_swap(size_t i, size_t k) {
    if (i == k) return;
    for (size_t j = 0; j < A.cols(); ++j) std::swap(A.at(i, j), A.at(k, j));
    for (size_t j = 0; j < U.cols(); ++j) std::swap(U.at(i, j), U.at(k, j));
  }
  void col_swap(size_t j, size_t k) {
    if (j == k) return;
    for (size_t i = 0; i < A.rows(); ++i) std::swap(A.at(i, j), A.at(i, k));
    for (size_t i = 0; i < V.rows(); ++i) std::swap(V.at(i, j), V.at(i, k));
  }
  void row_scale(size_t i, const RingElement& u) {
    for (size_t j = 0; j < A.cols(); ++j) A.at(i, j) = RingElement::mul(u, A.at(i, j));
    for (size_t j = 0; j < U.cols(); ++j) U.at(i, j) = RingElement::mul(u, U.at(i, j));
  }
};

RingSmithForm snf_euclidean(const RingMatrix& M) {
  RingSnfWork w(M);
  const RingSpec& s = M.spec();
  size_t m = M.rows(), n = M.cols();
  size_t t = 0;
  while (t < m && t < n) {
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j) {
        if (w.A.at(i, j).is_zero()) continue;
        if (!found || euc_less(w.A.at(i, j), w.A.at(pi, pj))) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    if (s.kind() == RingKind::Integer && w.A.at(t, t).int_value() < 0)
      w.row_scale(t, RingElement::from_int(s, -1));

    bool clean = true;
    for (size_t i = t + 1; i < m; ++i) {
      if (w.A.at(i, t).is_zero()) continue;
      RingElement q = w.A.at(i, t), r = q;
      euclidean_divmod(w.A.at(i, t), w.A.at(t, t), &q, &r);
      w.row_add(i, t, RingElement::neg(q));
      if (!w.A.at(i, t).is_zero()) clean = false;
    }
    for (size_t j = t + 1; j < n; ++j) {
      if (w.A.at(t, j).is_zero()) continue;
      RingElement q = w.A.at(t, j), r = q;
      euclidean_divmod(w.A.at(t, j), w.A.at(t, t), &q, &r);
      w.col_add(j, t, RingElement::neg(q));
      if (!w.A.at(t, j).is_zero()) clean = false;
    }
    if (!clean) continue;

    bool divides_all = true;
    for (size_t i = t + 1; i < m && divides_all; ++i)
      for (size_t j = t + 1; j < n; ++j) {
        RingElement r = w.A.at(i, j);
        euclidean_divmod(w.A.at(i, j), w.A.at(t, t), nullptr, &r);
        if (!r.is_zero()) {
          w.row_add(t, i, RingElement::one(s));
          divides_all = false;
          break;
        }
      }
    if (divides_all) ++t;
  }

  // canonical units on the diagonal
  for (size_t i = 0; i < std::min(m, n); ++i) {
    RingElement& d = w.A.at(i, i);
    if (d.is_zero()) continue;
    if (s.kind() == RingKind::Integer && d.int_value() < 0)
      w.row_scale(i, RingElement::from_int(s, -1));
    if (s.kind() == RingKind::Monomial) {
      mpz_class pm(s.p()), inv;
      mpz_invert(inv.get_mpz_t(), d.mono().rbegin()->second.get_mpz_t(), pm.get_mpz_t());
      if (inv != 1) w.row_scale(i, RingElement::from_int(s, inv));
    }
  }

  RingSmithForm out;
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  out.D = std::move(w.A);
  size_t k = std::min(m, n);
  out.rank = 0;
  while (out.rank < k && !out.D.at(out.rank, out.rank).is_zero()) ++out.rank;
  return out;
}

// Z/m: lift to Z, run SNF there, reduce everything; diagonal normalized to
// gcd(d, m) by a unit row scaling.
RingSmithForm snf_residue(const RingMatrix& M) {
  const RingSpec& s = M.spec();
  const mpz_class& mod = s.modulus();
  RingSpec z = RingSpec::integers();
  RingMatrix lift(z, M.rows(), M.cols());
  for (size_t i = 0; i < M.rows(); ++i)
    for (size_t j = 0; j < M.cols(); ++j)
      lift.at(i, j) = RingElement::from_int(z, M.at(i, j).int_value());
  RingSmithForm zf = snf_euclidean(lift);

  auto reduce = [&](const RingMatrix& A) {
    RingMatrix r(s, A.rows(), A.cols());
    for (size_t i = 0; i < A.rows(); ++i)
      for (size_t j = 0; j < A.cols(); ++j)
        r.at(i, j) = RingElement::from_int(s, A.at(i, j).int_value());
    return r;
  };
  RingSmithForm out;
  out.U = reduce(zf.U);
  out.V = reduce(zf.V);
  out.D = reduce(zf.D);

  // d and gcd(d, m) are unit multiples of each other mod m; find the unit.
  for (size_t i = 0; i < std::min(M.rows(), M.cols()); ++i) {
    mpz_class d = out.D.at(i, i).int_value();
    if (d == 0) continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
    if (g == d) continue;
    mpz_class u = 0;
    for (mpz_class t = 0; t < mod; ++t) {
      mpz_class cand = (d / g + t * (mod / g)) % mod;
      mpz_class cg;
      mpz_gcd(cg.get_mpz_t(), cand.get_mpz_t(), mod.get_mpz_t());
      if (cg == 1) {
        mpz_invert(u.get_mpz_t(), cand.get_mpz_t(), mod.get_mpz_t());
        break;
      }
    }
    if (u == 0) throw InternalError("failed to normalize SNF diagonal unit");
    RingElement ue = RingElement::from_int(s, u);
    for (size_t j = 0; j < out.U.cols(); ++j)
      out.U.at(i, j) = RingElement::mul(ue, out.U.at(i, j));
    for (size_t j = 0; j < out.D.cols(); ++j)
      out.D.at(i, j) = RingElement::mul(ue, out.D.at(i, j));
  }
  out.rank = 0;
  size_t k = std::min(M.rows(), M.cols());
  while (out.rank < k && !out.D.at(out.rank, out.rank).is_zero()) ++out.rank;
  return out;
}

}  // namespace

bool snf_supported(const RingSpec& s) {
  return s.kind() == RingKind::Integer || s.kind() == RingKind::Residue || is_poly_ring(s);
}

RingSmithForm smith_normal_form(const RingMatrix& M) {
  const RingSpec& s = M.spec();
  if (s.kind() == RingKind::Integer || is_poly_ring(s)) return snf_euclidean(M);
  if (s.kind() == RingKind::Residue) return snf_residue(M);
  throw UnsupportedError("smith_normal_form: unsupported ring " + s.str());
}

bool column_space_contains(const RingMatrix& M, const std::vector<RingElement>& b,
                           std::vector<RingElement>* sol) {
  if (b.size() != M.rows()) throw StructuralError("column_space_contains dimension mismatch");
  const RingSpec& s = M.spec();
  RingSmithForm f = smith_normal_form(M);
  std::vector<RingElement> c = f.U.apply(b);
  size_t k = std::min(M.rows(), M.cols());
  std::vector<RingElement> y(M.cols(), RingElement::zero(s));
  for (size_t i = 0; i < b.size(); ++i) {
    const RingElement* d = i < k ? &f.D.at(i, i) : nullptr;
    if (d && !d->is_zero()) {
      if (s.kind() == RingKind::Residue) {
        // solve d * y = c in Z/m: solvable iff gcd(d, m) | c
        mpz_class dv = d->int_value(), cv = c[i].int_value(), m = s.modulus();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), dv.get_mpz_t(), m.get_mpz_t());
        if (!mpz_divisible_p(cv.get_mpz_t(), g.get_mpz_t())) return false;
        mpz_class d1 = dv / g, m1 = m / g, inv;
        mpz_invert(inv.get_mpz_t(), d1.get_mpz_t(), m1.get_mpz_t());
        y[i] = RingElement::from_int(s, ((cv / g) * inv) % m);
      } else {
        RingElement q = c[i], r = c[i];
        euclidean_divmod(c[i], *d, &q, &r);
        if (!r.is_zero()) return false;
        y[i] = q;
      }
    } else if (!c[i].is_zero()) {
      return false;
    }
  }
  if (sol) *sol = f.V.apply(y);
  return true;
}

RingMatrix ring_kernel(const RingMatrix& M) {
  const RingSpec& s = M.spec();
  RingSmithForm f = smith_normal_form(M);
  size_t n = M.cols();
  std::vector<std::vector<RingElement>> cols;
  for (size_t j = f.rank; j < n; ++j) {
    std::vector<RingElement> col;
    for (size_t i = 0; i < n; ++i) col.push_back(f.V.at(i, j));
    cols.push_back(std::move(col));
  }
  // over Z/m, diagonal entries that are zero-divisors contribute extra kernel:
  // d * y = 0 has solutions y = (m/gcd(d,m)) * V column
  if (s.kind() == RingKind::Residue) {
    const mpz_class& m = s.modulus();
    for (size_t i = 0; i < f.rank; ++i) {
      mpz_class d = f.D.at(i, i).int_value();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
      if (g == 1) continue;  // d is a unit
      mpz_class scale = m / g;  // d*y = 0 mod m <=> y in (m/gcd(d,m))
      std::vector<RingElement> col;
      RingElement se = RingElement::from_int(s, scale);
      for (size_t r = 0; r < n; ++r) col.push_back(RingElement::mul(se, f.V.at(r, i)));
      bool nonzero = false;
      for (const auto& e : col) nonzero = nonzero || !e.is_zero();
      if (nonzero) cols.push_back(std::move(col));
    }
  }
  return RingMatrix::from_columns(s, n, cols);
}

}  // namespace aw
