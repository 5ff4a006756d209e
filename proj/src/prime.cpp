#include "froblift/prime.hpp"

#include <string>

#include "froblift/error.hpp"

namespace froblift {

namespace modarith {

Coeff inverse(Coeff a, Coeff m) {
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(m), new_r = static_cast<long long>(a % m);
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) return 0;
  return from_signed(t, m);
}

}  // namespace modarith

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Binomials C(p, k) are computed exactly modulo p^2, then divided by p.
std::vector<Coeff> carry_table(std::uint64_t p) {
  const Coeff p2 = p * p;
  std::vector<Coeff> out(p - 1);
  Coeff binom = 1;  // C(p, 0)
  for (std::uint64_t k = 1; k < p; ++k) {
    binom = modarith::mul(binom, p - k + 1, p2);
    binom = modarith::mul(binom, modarith::inverse(k, p2), p2);
    // C(p,k) is divisible by p for 0 < k < p
    out[k - 1] = modarith::neg(binom / p, p);
  }
  return out;
}

}  // namespace

Prime::Prime(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw InvalidPrime(std::to_string(p) + " is not prime");
  if (p > kMaxPrime) throw InvalidPrime(std::to_string(p) + " exceeds the supported range");
  carry_ = std::make_shared<const std::vector<Coeff>>(carry_table(p));
}

}  // namespace froblift
