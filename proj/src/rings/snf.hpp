#ifndef AW_RINGS_SNF_HPP
#define AW_RINGS_SNF_HPP

#include <vector>

#include "rings/ring.hpp"

namespace aw {

// Dense matrix over a RingSpec; column-vector convention.
class RingMatrix {
public:
  RingMatrix() : m_rows(0), m_cols(0) {}
  RingMatrix(const RingSpec& s, size_t rows, size_t cols);

  static RingMatrix identity(const RingSpec& s, size_t n);
  static RingMatrix from_columns(const RingSpec& s, size_t rows,
                                 const std::vector<std::vector<RingElement>>& cols);

  const RingSpec& spec() const { return m_spec; }
  size_t rows() const { return m_rows; }
  size_t cols() const { return m_cols; }
  RingElement& at(size_t i, size_t j) { return m_e[i * m_cols + j]; }
  const RingElement& at(size_t i, size_t j) const { return m_e[i * m_cols + j]; }

  RingMatrix operator*(const RingMatrix& o) const;
  std::vector<RingElement> apply(const std::vector<RingElement>& v) const;
  RingMatrix hstack(const RingMatrix& o) const;
  RingMatrix transpose() const;
  bool operator==(const RingMatrix& o) const;
  // Entry-wise image under a coefficient map (e.g. base change).
  template <typename F>
  RingMatrix map_entries(const RingSpec& target, F&& f) const {
    RingMatrix r(target, m_rows, m_cols);
    for (size_t i = 0; i < m_rows; ++i)
      for (size_t j = 0; j < m_cols; ++j) r.at(i, j) = f(at(i, j));
    return r;
  }

  std::string str() const;

private:
  RingSpec m_spec;
  size_t m_rows, m_cols;
  std::vector<RingElement> m_e;
};

// U * M * V = D diagonal with d_i | d_{i+1}; U, V invertible over the ring.
struct RingSmithForm {
  RingMatrix U, V, D;
  size_t rank = 0;
  std::vector<RingElement> diag() const;
};

// Supported: Z, F_p[t^{1/p^level}] (free, field coefficients), Z/p^k (lifted
// through Z).  Throws UnsupportedError otherwise.
RingSmithForm smith_normal_form(const RingMatrix& M);

bool snf_supported(const RingSpec& s);

// Euclidean helpers used by SNF and ideal membership.
bool euclidean_divmod(const RingElement& a, const RingElement& b, RingElement* q, RingElement* r);
RingElement euclidean_gcd(const RingElement& a, const RingElement& b);
bool elem_is_unit(const RingElement& a);

// Does M x = b have a solution over the ring?  (Via SNF.)
bool column_space_contains(const RingMatrix& M, const std::vector<RingElement>& b,
                           std::vector<RingElement>* sol = nullptr);

// Basis (as columns) of {x : M x = 0} over the ring.
RingMatrix ring_kernel(const RingMatrix& M);

}  // namespace aw

#endif
