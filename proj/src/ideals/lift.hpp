#ifndef AW_IDEALS_LIFT_HPP
#define AW_IDEALS_LIFT_HPP

#include <json.hpp>

#include "finite/finite_ring.hpp"
#include "ideals/ideal.hpp"

namespace aw {

// Surjection of finite rings with nilpotent kernel (bound declared, verified).
struct FinSurjection {
  FinRingHom hom;
  unsigned nilpotency_bound = 1;
};

struct LiftResult {
  FinIdeal ideal;
  nlohmann::json certificate;
};

// The unique idempotent ideal of the source lifting m: preimage, then square
// until stable.  PreconditionError when m is not idempotent or the kernel is
// not nilpotent within the declared bound.
LiftResult nilpotent_lift(const FinSurjection& f, const FinIdeal& m);

// Commutative square with g2 (and hence f1) surjective.
//   A0 --f1--> A1
//   |f2        |g1
//   A2 --g2--> A3
struct FinGluingSquare {
  FiniteRingPtr A0, A1, A2, A3;
  FinRingHom f1, f2, g1, g2;

  void validate() const;  // commutativity, surjectivity of g2 and f1
};

// The unique idempotent ideal of A0 mapping onto m1 and m2; the inputs must be
// idempotent and agree over A3.  Condition (B) propagation is checked for
// k in {2,3} and recorded in the certificate.
LiftResult gluing_lift(const FinGluingSquare& sq, const FinIdeal& m1, const FinIdeal& m2);

// One induction step's worth of scaffolding: the Witt gluing square
//   Wbar_n(R) -> W_{n-1}(R)
//        |          |
//        R     ->  R/p^n
// built by enumeration over a finite base.
struct WittGluingSquare {
  FinGluingSquare square;
  FiniteRingPtr Wn;        // W of length n+1
  FinRingHom alpha;        // Wn ->> Wbar (= square.A0)
  FinRingHom omega_n;      // Wn -> R (top ghost component)
  FinRingHom pr;           // Wn ->> W_{n-1} (= square.A1)
};
WittGluingSquare build_witt_gluing_square(const RingSpec& R, unsigned p, unsigned n);

struct WittLiftFiniteResult {
  std::vector<FiniteRingPtr> witt_rings;  // lengths 1..n+1
  std::vector<FinIdeal> chain;            // m_0..m_n, over witt_rings[k]
  nlohmann::json certificate;
};
// Theorem-driven lift over a finite base ring: gluing_lift on the Witt square,
// then nilpotent_lift through the square-zero kernel of alpha, with the
// theorem's properties verified at each step.
WittLiftFiniteResult witt_lift_finite(const RingSpec& R, const std::vector<RingElement>& m_gens,
                                      unsigned p, unsigned n);

// Monomial-colimit path: m_k is generated by V^j of Teichmueller lifts of the
// level generators; idempotency and the theorem properties are certified by
// exact Witt arithmetic at explicit levels.
struct WittLiftMonomialResult {
  unsigned p = 0, n = 0, window = 0;
  // generators of m_k: (level N, V-power j) for j <= k; the vector below
  // stores the verified idempotency certificates
  nlohmann::json certificate;
  bool ok = false;
};
WittLiftMonomialResult witt_lift_monomial(const ColimitIdeal& m, unsigned n);

// Uniqueness harnesses (exhaustive over the ideal lattice of the source).
std::vector<FinIdeal> idempotent_lifts_through(const FinRingHom& f, const FinIdeal& m);
std::vector<FinIdeal> idempotent_gluing_lifts(const FinGluingSquare& sq, const FinIdeal& m1,
                                              const FinIdeal& m2);

}  // namespace aw

#endif
