#pragma once

#include "froblift/poly.hpp"
#include "froblift/prime.hpp"

namespace froblift {

/// A length-2 Witt vector (a0, a1) over F_p, i.e. an element of W_2(F_p) = Z/p^2.
class WittScalar {
 public:
  WittScalar(Prime prime, Coeff a0, Coeff a1);

  const Prime& prime() const noexcept { return prime_; }
  Coeff a0() const noexcept { return a0_; }
  Coeff a1() const noexcept { return a1_; }

  friend bool operator==(const WittScalar& a, const WittScalar& b) {
    return a.prime_ == b.prime_ && a.a0_ == b.a0_ && a.a1_ == b.a1_;
  }

 private:
  Prime prime_;
  Coeff a0_;
  Coeff a1_;
};

/// A length-2 Witt vector with polynomial components over F_p.
class WittPoly {
 public:
  WittPoly(MultiPoly f0, MultiPoly f1);

  const MultiPoly& f0() const noexcept { return f0_; }
  const MultiPoly& f1() const noexcept { return f1_; }
  const Prime& prime() const noexcept { return f0_.prime(); }
  std::size_t arity() const noexcept { return f0_.arity(); }

  friend bool operator==(const WittPoly&, const WittPoly&) = default;

 private:
  MultiPoly f0_;
  MultiPoly f1_;
};

WittScalar witt_add(const WittScalar& a, const WittScalar& b);
WittScalar witt_neg(const WittScalar& a);
WittScalar witt_mul(const WittScalar& a, const WittScalar& b);
WittScalar witt_frobenius(const WittScalar& a);
WittScalar witt_verschiebung(const Prime& prime, Coeff c);
WittScalar witt_teichmuller(const Prime& prime, Coeff c);

WittPoly witt_add(const WittPoly& a, const WittPoly& b);
WittPoly witt_neg(const WittPoly& a);
WittPoly witt_mul(const WittPoly& a, const WittPoly& b);
WittPoly witt_frobenius(const WittPoly& a);
WittPoly witt_verschiebung(const MultiPoly& c);
WittPoly witt_teichmuller(const MultiPoly& c);

/// (a0, a1) -> a0^p + p*a1 in Z/p^2, a ring isomorphism W_2(F_p) -> Z/p^2.
Coeff ghost_map(const WittScalar& a);

/// The carry (X^p + Y^p - (X+Y)^p)/p evaluated on polynomials.
MultiPoly witt_carry(const MultiPoly& x, const MultiPoly& y);

}  // namespace froblift
