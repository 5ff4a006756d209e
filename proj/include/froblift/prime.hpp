#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace froblift {

using Coeff = std::uint64_t;

namespace modarith {

inline Coeff add(Coeff a, Coeff b, Coeff m) { return (a + b) % m; }
inline Coeff sub(Coeff a, Coeff b, Coeff m) { return (a + m - b % m) % m; }
inline Coeff mul(Coeff a, Coeff b, Coeff m) { return (a % m) * (b % m) % m; }
inline Coeff neg(Coeff a, Coeff m) { return (m - a % m) % m; }

inline Coeff pow(Coeff base, std::uint64_t e, Coeff m) {
  Coeff r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

/// Inverse of a unit modulo m; returns 0 when `a` is not a unit.
Coeff inverse(Coeff a, Coeff m);

/// Reduce a signed integer into [0, m).
inline Coeff from_signed(long long v, Coeff m) {
  long long r = v % static_cast<long long>(m);
  if (r < 0) r += static_cast<long long>(m);
  return static_cast<Coeff>(r);
}

}  // namespace modarith

/// The characteristic of a computation. Primality is checked on construction;
/// p is limited to 16 bits so that products of residues mod p^2 fit in 64 bits.
class Prime {
 public:
  static constexpr std::uint64_t kMaxPrime = 65521;

  explicit Prime(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }
  std::uint64_t square() const noexcept { return p_ * p_; }

  /// Coefficients c_k (k = 1..p-1, stored at index k-1) of the Witt carry
  /// polynomial (X^p + Y^p - (X+Y)^p)/p = sum_k c_k X^k Y^(p-k), reduced mod p.
  std::span<const Coeff> carry_coefficients() const noexcept { return *carry_; }

  friend bool operator==(const Prime& a, const Prime& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
  std::shared_ptr<const std::vector<Coeff>> carry_;
};

bool is_prime(std::uint64_t n);

}  // namespace froblift
