#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "froblift/poly.hpp"

namespace froblift {

/// Random polynomial with at most `max_terms` terms of degree <= `max_degree`
/// and uniform coefficients. May be zero.
MultiPoly random_poly(const Prime& prime, std::size_t arity, Level level, std::mt19937_64& rng,
                      std::uint64_t max_degree = 3, std::size_t max_terms = 4);

/// Random exponent vector of total degree <= max_degree.
Monomial random_monomial(std::size_t arity, std::uint64_t max_degree, std::mt19937_64& rng);

}  // namespace froblift
