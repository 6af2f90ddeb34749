#include "rings/zmat.hpp"

#include "rings/errors.hpp"

namespace aw {

ZMat ZMat::identity(size_t n) {
  ZMat r(n, n);
  for (size_t i = 0; i < n; ++i) r.at(i, i) = 1;
  return r;
}

ZMat ZMat::operator*(const ZMat& o) const {
  if (m_cols != o.m_rows) throw StructuralError("matrix product dimension mismatch");
  ZMat r(m_rows, o.m_cols);
  for (size_t i = 0; i < m_rows; ++i)
    for (size_t k = 0; k < m_cols; ++k) {
      const mpz_class& a = at(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < o.m_cols; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

std::vector<mpz_class> ZMat::apply(const std::vector<mpz_class>& v) const {
  if (v.size() != m_cols) throw StructuralError("matrix apply dimension mismatch");
  std::vector<mpz_class> r(m_rows, 0);
  for (size_t i = 0; i < m_rows; ++i)
    for (size_t j = 0; j < m_cols; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * v[j];
  return r;
}

ZMat ZMat::transpose() const {
  ZMat r(m_cols, m_rows);
  for (size_t i = 0; i < m_rows; ++i)
    for (size_t j = 0; j < m_cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

ZMat ZMat::hstack(const ZMat& o) const {
  if (m_rows != o.m_rows) throw StructuralError("hstack row mismatch");
  ZMat r(m_rows, m_cols + o.m_cols);
  for (size_t i = 0; i < m_rows; ++i) {
    for (size_t j = 0; j < m_cols; ++j) r.at(i, j) = at(i, j);
    for (size_t j = 0; j < o.m_cols; ++j) r.at(i, m_cols + j) = o.at(i, j);
  }
  return r;
}

namespace {

struct SnfWork {
  ZMat A;
  ZMat U, Uinv, V, Vinv;

  explicit SnfWork(const ZMat& M)
      : A(M),
        U(ZMat::identity(M.rows())),
        Uinv(ZMat::identity(M.rows())),
        V(ZMat::identity(M.cols())),
        Vinv(ZMat::identity(M.cols())) {}

  // row_i += c * row_k  (U tracks; Uinv gets the inverse column op)
  void row_add(size_t i, size_t k, const mpz_class& c) {
    for (size_t j = 0; j < A.cols(); ++j) A.at(i, j) += c * A.at(k, j);
    for (size_t j = 0; j < U.cols(); ++j) U.at(i, j) += c * U.at(k, j);
    for (size_t j = 0; j < Uinv.rows(); ++j) Uinv.at(j, k) -= c * Uinv.at(j, i);
  }
  void col_add(size_t j, size_t k, const mpz_class& c) {
    for (size_t i = 0; i < A.rows(); ++i) A.at(i, j) += c * A.at(i, k);
    for (size_t i = 0; i < V.rows(); ++i) V.at(i, j) += c * V.at(i, k);
    for (size_t i = 0; i < Vinv.cols(); ++i) Vinv.at(k, i) -= c * Vinv.at(j, i);
  }
  void row_swap(size_t i, size_t k) {
    if (i == k) return;
    for (size_t j = 0; j < A.cols(); ++j) std::swap(A.at(i, j), A.at(k, j));
    for (size_t j = 0; j < U.cols(); ++j) std::swap(U.at(i, j), U.at(k, j));
    for (size_t j = 0; j < Uinv.rows(); ++j) std::swap(Uinv.at(j, i), Uinv.at(j, k));
  }
  void col_swap(size_t j, size_t k) {
    if (j == k) return;
    for (size_t i = 0; i < A.rows(); ++i) std::swap(A.at(i, j), A.at(i, k));
    for (size_t i = 0; i < V.rows(); ++i) std::swap(V.at(i, j), V.at(i, k));
    for (size_t i = 0; i < Vinv.cols(); ++i) std::swap(Vinv.at(j, i), Vinv.at(k, i));
  }
  void row_negate(size_t i) {
    for (size_t j = 0; j < A.cols(); ++j) A.at(i, j) = -A.at(i, j);
    for (size_t j = 0; j < U.cols(); ++j) U.at(i, j) = -U.at(i, j);
    for (size_t j = 0; j < Uinv.rows(); ++j) Uinv.at(j, i) = -Uinv.at(j, i);
  }
};

}  // namespace

SmithForm smith_form(const ZMat& M) {
  SnfWork w(M);
  size_t m = M.rows(), n = M.cols();
  size_t t = 0;
  while (t < m && t < n) {
    // Find the nonzero entry of smallest absolute value in the remaining block.
    size_t pi = t, pj = t;
    bool found = false;
    mpz_class best;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j) {
        if (w.A.at(i, j) == 0) continue;
        mpz_class a = abs(w.A.at(i, j));
        if (!found || a < best) {
          best = a;
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    if (w.A.at(t, t) < 0) w.row_negate(t);

    bool clean = true;
    for (size_t i = t + 1; i < m; ++i) {
      if (w.A.at(i, t) == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), w.A.at(i, t).get_mpz_t(), w.A.at(t, t).get_mpz_t());
      w.row_add(i, t, -q);
      if (w.A.at(i, t) != 0) clean = false;
    }
    for (size_t j = t + 1; j < n; ++j) {
      if (w.A.at(t, j) == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), w.A.at(t, j).get_mpz_t(), w.A.at(t, t).get_mpz_t());
      w.col_add(j, t, -q);
      if (w.A.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; pick a new pivot

    // Pivot divides its row and column (both now zero). Ensure it divides the
    // rest of the block, else mix an offending row in and continue.
    bool divides_all = true;
    for (size_t i = t + 1; i < m && divides_all; ++i)
      for (size_t j = t + 1; j < n; ++j)
        if (!mpz_divisible_p(w.A.at(i, j).get_mpz_t(), w.A.at(t, t).get_mpz_t())) {
          w.row_add(t, i, 1);
          divides_all = false;
          break;
        }
    if (divides_all) ++t;
  }
  SmithForm out;
  out.U = std::move(w.U);
  out.Uinv = std::move(w.Uinv);
  out.V = std::move(w.V);
  out.Vinv = std::move(w.Vinv);
  size_t k = std::min(m, n);
  out.diag.resize(k);
  for (size_t i = 0; i < k; ++i) out.diag[i] = w.A.at(i, i);
  out.rank = 0;
  while (out.rank < k && out.diag[out.rank] != 0) ++out.rank;
  return out;
}

ZMat integer_kernel(const ZMat& M) {
  SmithForm s = smith_form(M);
  size_t n = M.cols();
  size_t r = s.rank;
  ZMat K(n, n - r);
  for (size_t j = r; j < n; ++j)
    for (size_t i = 0; i < n; ++i) K.at(i, j - r) = s.V.at(i, j);
  return K;
}

bool lattice_contains(const ZMat& M, const std::vector<mpz_class>& b,
                      std::vector<mpz_class>* sol) {
  if (b.size() != M.rows()) throw StructuralError("lattice_contains dimension mismatch");
  SmithForm s = smith_form(M);
  std::vector<mpz_class> c = s.U.apply(b);
  size_t k = std::min(M.rows(), M.cols());
  std::vector<mpz_class> y(M.cols(), 0);
  for (size_t i = 0; i < b.size(); ++i) {
    if (i < k && s.diag[i] != 0) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), s.diag[i].get_mpz_t())) return false;
      y[i] = c[i] / s.diag[i];
    } else if (c[i] != 0) {
      return false;
    }
  }
  if (sol) *sol = s.V.apply(y);
  return true;
}

}  // namespace aw
