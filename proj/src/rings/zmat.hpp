#ifndef AW_RINGS_ZMAT_HPP
#define AW_RINGS_ZMAT_HPP

#include <gmpxx.h>

#include <vector>

namespace aw {

// Dense integer matrix, column-vector convention: an m x n matrix maps Z^n to
// Z^m.  Used for the abelian-group models behind finite modules.
class ZMat {
public:
  ZMat() : m_rows(0), m_cols(0) {}
  ZMat(size_t rows, size_t cols) : m_rows(rows), m_cols(cols), m_e(rows * cols, 0) {}

  static ZMat identity(size_t n);

  size_t rows() const { return m_rows; }
  size_t cols() const { return m_cols; }
  mpz_class& at(size_t i, size_t j) { return m_e[i * m_cols + j]; }
  const mpz_class& at(size_t i, size_t j) const { return m_e[i * m_cols + j]; }

  ZMat operator*(const ZMat& o) const;
  std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const;
  ZMat transpose() const;
  ZMat hstack(const ZMat& o) const;  // [this | o]

  bool operator==(const ZMat& o) const {
    return m_rows == o.m_rows && m_cols == o.m_cols && m_e == o.m_e;
  }

private:
  size_t m_rows, m_cols;
  std::vector<mpz_class> m_e;
};

// U * M * V = diag(d) with U, V unimodular; diag entries nonnegative with
// d_i | d_{i+1}; rank = number of nonzero d_i.
struct SmithForm {
  ZMat U, Uinv, V, Vinv;
  std::vector<mpz_class> diag;  // length min(m, n)
  size_t rank = 0;
};

SmithForm smith_form(const ZMat& M);

// Basis of {x in Z^n : Mx = 0}, as columns.
ZMat integer_kernel(const ZMat& M);

// Is b in the column lattice of M?  If so and sol != nullptr, store one x with
// Mx = b.
bool lattice_contains(const ZMat& M, const std::vector<mpz_class>& b,
                      std::vector<mpz_class>* sol = nullptr);

}  // namespace aw

#endif
