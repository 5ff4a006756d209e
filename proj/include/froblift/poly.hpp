#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "froblift/prime.hpp"

namespace froblift {

using Exponent = std::uint32_t;

/// Exponent vector of a monomial. Arithmetic on exponents is overflow-checked.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}

  std::size_t arity() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  std::span<const Exponent> exponents() const noexcept { return exps_; }
  std::uint64_t degree() const noexcept;
  bool is_one() const noexcept;

  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; requires other.divides(*this).
  Monomial operator/(const Monomial& other) const;
  bool divides(const Monomial& other) const noexcept;
  Monomial lcm(const Monomial& other) const;
  Monomial scaled(std::uint64_t k) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> exps_;
};

/// Graded reverse lexicographic comparison: negative when a < b.
int degrevlex_compare(const Monomial& a, const Monomial& b) noexcept;

/// Coefficient ring of a polynomial: F_p or Z/p^2.
enum class Level { ModP, ModP2 };

struct Term {
  Monomial mono;
  Coeff coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial over F_p or Z/p^2. Terms are kept in
/// strictly decreasing degrevlex order with nonzero reduced coefficients, so
/// equality is structural.
class MultiPoly {
 public:
  MultiPoly(Prime prime, std::size_t arity, Level level);

  static MultiPoly constant(Prime prime, std::size_t arity, Level level, long long c);
  /// The coordinate function x_{index+1}.
  static MultiPoly variable(Prime prime, std::size_t arity, Level level, std::size_t index);
  static MultiPoly monomial(Prime prime, Level level, Monomial mono, Coeff c = 1);
  static MultiPoly from_terms(Prime prime, std::size_t arity, Level level, std::vector<Term> terms);

  const Prime& prime() const noexcept { return prime_; }
  std::size_t arity() const noexcept { return arity_; }
  Level level() const noexcept { return level_; }
  Coeff modulus() const noexcept { return level_ == Level::ModP ? prime_.value() : prime_.square(); }

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  const Term& leading_term() const;
  std::uint64_t total_degree() const noexcept;
  Coeff coefficient(const Monomial& m) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(Coeff c) const;
  MultiPoly times_monomial(const Monomial& m, Coeff c) const;
  MultiPoly pow(std::uint64_t k) const;

  bool same_ring(const MultiPoly& other) const noexcept;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.same_ring(b) && a.terms_ == b.terms_;
  }

  /// Canonical text: terms in decreasing degrevlex order, coefficients as
  /// least residues. Variables default to x1..xn.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void require_same_ring(const MultiPoly& other) const;
  void normalize();

  Prime prime_;
  std::size_t arity_;
  Level level_;
  std::vector<Term> terms_;
};

std::vector<std::string> default_variable_names(std::size_t n);

/// f(images[0], ..., images[n-1]). The result lives in the ring of the images;
/// `target_arity` is only consulted when `images` is empty.
MultiPoly substitute(const MultiPoly& f, std::span<const MultiPoly> images, std::size_t target_arity = 0);

/// Formal derivative with respect to x_{index+1}.
MultiPoly partial_derivative(const MultiPoly& f, std::size_t index);

/// Exact coefficientwise division by p of a polynomial over Z/p^2.
/// Throws NotDivisible naming the first offending term.
MultiPoly divide_by_p(const MultiPoly& f);

/// Least-residue section F_p -> Z/p^2, applied coefficientwise.
MultiPoly lift_mod_p2(const MultiPoly& f);
MultiPoly reduce_mod_p(const MultiPoly& f);

/// p * lift(f): the image of V in Z/p^2, well defined on F_p inputs.
MultiPoly times_p(const MultiPoly& f);

/// Linear map with x^a -> x^((a - (p-1))/p) when every a_i = p-1 mod p, else 0.
MultiPoly monomial_trace(const MultiPoly& f);

/// f^p over F_p, computed as f(x^p).
MultiPoly frobenius(const MultiPoly& f);

/// Evaluate at a point of (Z/modulus)^n.
Coeff evaluate(const MultiPoly& f, std::span<const Coeff> point);

/// Re-home f into `arity` variables, moving x_i to x_{i+offset}.
MultiPoly embed(const MultiPoly& f, std::size_t arity, std::size_t offset);

/// Drops variable `index`, which must not occur in f.
MultiPoly drop_variable(const MultiPoly& f, std::size_t index);

/// Exact division f / g; returns false (and leaves quotient unspecified) if g does not divide f.
/// Only for polynomials over F_p.
bool divide_exact(const MultiPoly& f, const MultiPoly& g, MultiPoly& quotient);

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

/// Determinant by Laplace expansion along the first row (fraction free).
MultiPoly determinant(const PolyMatrix& m);

}  // namespace froblift
