#ifndef AW_WITT_WITT_HPP
#define AW_WITT_WITT_HPP

#include <memory>
#include <vector>

#include "rings/ring.hpp"
#include "rings/zpoly.hpp"

namespace aw {

// Universal polynomials for p-typical Witt vectors of a fixed length.
// Variables: x_j = var j, y_j = var len + j.  All derived over Z by inverting
// the ghost map; the divisions are exact (Witt integrality) and a failure is
// an internal bug, not bad input.
class WittStructurePolys {
public:
  unsigned p;
  unsigned len;                 // number of coordinates (paper's W_n has n+1)
  std::vector<ZPoly> sum;       // S_0..S_{len-1} in x_0..x_i, y_0..y_i
  std::vector<ZPoly> prod;      // P_0..P_{len-1}
  std::vector<ZPoly> negation;  // N_0..N_{len-1} in x only
  std::vector<ZPoly> frob;      // F_0..F_{len-2}: W_len -> W_{len-1}
  std::vector<ZPoly> ghost;     // w_0..w_{len-1} in x_0..x_i

  // Shared cache, write-once per (p, len); safe for concurrent readers.
  static std::shared_ptr<const WittStructurePolys> get(unsigned p, unsigned len);
};

// W_{len-1}(base) in the paper's indexing: vectors with `len` coordinates.
class WittRing {
public:
  WittRing() = default;
  WittRing(unsigned p, unsigned len, RingSpec base);

  unsigned p() const { return m_p; }
  unsigned len() const { return m_len; }
  const RingSpec& base() const { return m_base; }
  const WittStructurePolys& polys() const { return *m_polys; }

  bool operator==(const WittRing& o) const {
    return m_p == o.m_p && m_len == o.m_len && m_base == o.m_base;
  }
  bool operator!=(const WittRing& o) const { return !(*this == o); }

  std::string str() const;

private:
  unsigned m_p = 0, m_len = 0;
  RingSpec m_base;
  std::shared_ptr<const WittStructurePolys> m_polys;
};

class WittVector {
public:
  WittVector() = default;
  WittVector(WittRing ring, std::vector<RingElement> coords);

  static WittVector zero(const WittRing& w);
  static WittVector one(const WittRing& w);
  static WittVector teichmuller(const WittRing& w, const RingElement& x);
  static WittVector from_int(const WittRing& w, const mpz_class& n);

  const WittRing& ring() const { return m_ring; }
  const std::vector<RingElement>& coords() const { return m_coords; }
  const RingElement& coord(size_t i) const { return m_coords[i]; }

  bool is_zero() const;
  bool operator==(const WittVector& o) const;
  bool operator!=(const WittVector& o) const { return !(*this == o); }

  std::string str() const;

private:
  WittRing m_ring;
  std::vector<RingElement> m_coords;
};

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
WittVector witt_sub(const WittVector& a, const WittVector& b);

// Ghost components (w_0(x), ..., w_{len-1}(x)) in the base ring.
std::vector<RingElement> ghost(const WittVector& w);

// Frobenius: length len -> len-1.  LengthError when len == 1.
WittVector witt_F(const WittVector& w);

// Verschiebung: length len -> len+1.
WittVector witt_V(const WittVector& w);

// pr: drop the top coordinate.  LengthError when len == 1.
WittVector witt_truncate(const WittVector& w);

// alpha_n(w) = (pr(w), omega_n(w)): the top ghost component paired with the
// truncation.
std::pair<WittVector, RingElement> alpha_map(const WittVector& w);

// Kernel of alpha_n: V^n(Ann_base(p^n)), described by base-ring elements.
// Finite bases enumerate Ann(p^n) exactly; free monomial algebras in
// characteristic p report Ann = (1).
struct AlphaKernel {
  unsigned n = 0;                    // kernel lives in V^n(...)
  bool whole_base_annihilates = false;  // char-p shortcut: Ann(p^n) = base
  std::vector<RingElement> ann_elements;  // finite case: all of Ann(p^n)
};
AlphaKernel alpha_kernel(const WittRing& w);

// Symbolic check that ker(alpha_n)^2 = 0: V^n(X) * V^n(Y) has coordinates
// p^n * (integral polynomial), so it vanishes whenever p^n annihilates the
// inputs.  Returns the verified exact coordinate identities.
bool alpha_kernel_square_zero_symbolic(unsigned p, unsigned len);

struct WittPerfectResult {
  bool surjective = false;
  WittVector witness;  // an element of W_{n-1}(A) not in the image, if any
};
// Is F: W_n(A) -> W_{n-1}(A) surjective?  A must be finite.
WittPerfectResult witt_perfect_check(const RingSpec& A, unsigned p, unsigned n);

}  // namespace aw

#endif
