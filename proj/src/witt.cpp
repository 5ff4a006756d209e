#include "froblift/witt.hpp"

#include "froblift/error.hpp"

namespace froblift {

namespace {

Coeff scalar_carry(const Prime& prime, Coeff x, Coeff y) {
  const Coeff p = prime.value();
  const auto carry = prime.carry_coefficients();
  Coeff acc = 0;
  for (std::uint64_t k = 1; k < p; ++k) {
    const Coeff term = modarith::mul(modarith::pow(x, k, p), modarith::pow(y, p - k, p), p);
    acc = modarith::add(acc, modarith::mul(carry[k - 1], term, p), p);
  }
  return acc;
}

void require_same(const WittScalar& a, const WittScalar& b) {
  if (!(a.prime() == b.prime())) throw RingMismatch("Witt vectors over different primes");
}

void require_same(const WittPoly& a, const WittPoly& b) {
  if (!a.f0().same_ring(b.f0())) throw RingMismatch("Witt vectors over different rings");
}

}  // namespace

WittScalar::WittScalar(Prime prime, Coeff a0, Coeff a1)
    : prime_(std::move(prime)), a0_(a0 % prime_.value()), a1_(a1 % prime_.value()) {}

WittPoly::WittPoly(MultiPoly f0, MultiPoly f1) : f0_(std::move(f0)), f1_(std::move(f1)) {
  if (!f0_.same_ring(f1_) || f0_.level() != Level::ModP)
    throw RingMismatch("Witt components must share one F_p polynomial ring");
}

WittScalar witt_add(const WittScalar& a, const WittScalar& b) {
  require_same(a, b);
  const Coeff p = a.prime().value();
  return WittScalar(a.prime(), modarith::add(a.a0(), b.a0(), p),
                    modarith::add(modarith::add(a.a1(), b.a1(), p), scalar_carry(a.prime(), a.a0(), b.a0()), p));
}

WittScalar witt_neg(const WittScalar& a) {
  // -1 = (p-1, 1) for p = 2 and (p-1, 0) otherwise; multiply through.
  const Coeff p = a.prime().value();
  const WittScalar minus_one(a.prime(), p - 1, p == 2 ? 1 : 0);
  return witt_mul(minus_one, a);
}

WittScalar witt_mul(const WittScalar& a, const WittScalar& b) {
  require_same(a, b);
  const Coeff p = a.prime().value();
  const Coeff c1 = modarith::add(modarith::mul(modarith::pow(a.a0(), p, p), b.a1(), p),
                                 modarith::mul(a.a1(), modarith::pow(b.a0(), p, p), p), p);
  return WittScalar(a.prime(), modarith::mul(a.a0(), b.a0(), p), c1);
}

WittScalar witt_frobenius(const WittScalar& a) {
  const Coeff p = a.prime().value();
  return WittScalar(a.prime(), modarith::pow(a.a0(), p, p), modarith::pow(a.a1(), p, p));
}

WittScalar witt_verschiebung(const Prime& prime, Coeff c) { return WittScalar(prime, 0, c); }
WittScalar witt_teichmuller(const Prime& prime, Coeff c) { return WittScalar(prime, c, 0); }

Coeff ghost_map(const WittScalar& a) {
  const Coeff p = a.prime().value();
  const Coeff p2 = a.prime().square();
  return modarith::add(modarith::pow(a.a0(), p, p2), modarith::mul(p, a.a1(), p2), p2);
}

MultiPoly witt_carry(const MultiPoly& x, const MultiPoly& y) {
  if (!x.same_ring(y) || x.level() != Level::ModP) throw RingMismatch("witt_carry expects F_p polynomials in one ring");
  const std::uint64_t p = x.prime().value();
  const auto carry = x.prime().carry_coefficients();
  MultiPoly acc(x.prime(), x.arity(), Level::ModP);
  if (x.is_zero() || y.is_zero()) return acc;
  // powers x^k, y^k for k < p
  std::vector<MultiPoly> xp{MultiPoly::constant(x.prime(), x.arity(), Level::ModP, 1)};
  std::vector<MultiPoly> yp{xp.front()};
  for (std::uint64_t k = 1; k < p; ++k) {
    xp.push_back(xp.back() * x);
    yp.push_back(yp.back() * y);
  }
  for (std::uint64_t k = 1; k < p; ++k) acc += (xp[k] * yp[p - k]).scaled(carry[k - 1]);
  return acc;
}

WittPoly witt_add(const WittPoly& a, const WittPoly& b) {
  require_same(a, b);
  return WittPoly(a.f0() + b.f0(), a.f1() + b.f1() + witt_carry(a.f0(), b.f0()));
}

WittPoly witt_neg(const WittPoly& a) {
  const Coeff p = a.prime().value();
  const MultiPoly m1 = MultiPoly::constant(a.prime(), a.arity(), Level::ModP, static_cast<long long>(p - 1));
  const MultiPoly c1 = MultiPoly::constant(a.prime(), a.arity(), Level::ModP, p == 2 ? 1 : 0);
  return witt_mul(WittPoly(m1, c1), a);
}

WittPoly witt_mul(const WittPoly& a, const WittPoly& b) {
  require_same(a, b);
  return WittPoly(a.f0() * b.f0(), frobenius(a.f0()) * b.f1() + a.f1() * frobenius(b.f0()));
}

WittPoly witt_frobenius(const WittPoly& a) { return WittPoly(frobenius(a.f0()), frobenius(a.f1())); }

WittPoly witt_verschiebung(const MultiPoly& c) {
  return WittPoly(MultiPoly(c.prime(), c.arity(), Level::ModP), c);
}

WittPoly witt_teichmuller(const MultiPoly& c) {
  return WittPoly(c, MultiPoly(c.prime(), c.arity(), Level::ModP));
}

}  // namespace froblift
