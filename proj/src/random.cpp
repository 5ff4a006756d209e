#include "froblift/random.hpp"

#include <vector>

namespace froblift {

Monomial random_monomial(std::size_t arity, std::uint64_t max_degree, std::mt19937_64& rng) {
  Monomial m(arity);
  if (arity == 0) return m;
  std::uint64_t budget = std::uniform_int_distribution<std::uint64_t>(0, max_degree)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, arity - 1);
  while (budget-- > 0) ++m[pick(rng)];
  return m;
}

MultiPoly random_poly(const Prime& prime, std::size_t arity, Level level, std::mt19937_64& rng,
                      std::uint64_t max_degree, std::size_t max_terms) {
  const Coeff modulus = level == Level::ModP ? prime.value() : prime.square();
  std::uniform_int_distribution<std::size_t> count(0, max_terms);
  std::uniform_int_distribution<Coeff> coeff(0, modulus - 1);
  std::vector<Term> terms;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Monomial m = random_monomial(arity, max_degree, rng);
    terms.push_back({std::move(m), coeff(rng)});
  }
  return MultiPoly::from_terms(prime, arity, level, std::move(terms));
}

}  // namespace froblift
