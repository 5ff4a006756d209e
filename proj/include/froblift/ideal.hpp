#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "froblift/poly.hpp"

namespace froblift {

/// Monomial orders understood by the Groebner engine.
struct TermOrder {
  enum class Kind { DegRevLex, EliminateLast };
  Kind kind = Kind::DegRevLex;
  /// For EliminateLast: number of trailing variables to eliminate.
  std::size_t block = 0;

  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const noexcept;

  static TermOrder degrevlex() { return {}; }
  static TermOrder eliminate_last(std::size_t k) { return {Kind::EliminateLast, k}; }
};

/// Syzygies s with sum_a s[a] * G[a] = 0 mod p, indexed like the generators
/// of the presentation they were computed for.
struct SyzygyBasis {
  std::vector<std::vector<MultiPoly>> vectors;
};

namespace detail {
struct GroebnerCache;
}

/// A finite generator list over F_p or Z/p^2. The Groebner data of the mod-p
/// reduction is computed once, on first use, and shared between copies.
class IdealPresentation {
 public:
  /// Zero generators are dropped; an empty list presents the zero ideal.
  IdealPresentation(Prime prime, std::size_t arity, Level level, std::vector<MultiPoly> generators);
  /// Convenience form; `generators` must be nonempty.
  explicit IdealPresentation(std::vector<MultiPoly> generators);

  std::span<const MultiPoly> generators() const noexcept { return gens_; }
  const Prime& prime() const noexcept { return prime_; }
  std::size_t arity() const noexcept { return arity_; }
  Level level() const noexcept { return level_; }
  bool is_zero() const noexcept { return gens_.empty(); }

  /// Reduced degrevlex Groebner basis of the ideal generated mod p.
  const std::vector<MultiPoly>& groebner_basis() const;
  /// Normal form of an F_p polynomial modulo the mod-p ideal.
  MultiPoly normal_form(const MultiPoly& f) const;
  /// q with f = sum q[a] * reduce(G[a]) mod p, if f lies in the mod-p ideal.
  std::optional<std::vector<MultiPoly>> cofactors(const MultiPoly& f) const;
  /// Generating syzygies of the mod-p reductions of the generators.
  const SyzygyBasis& syzygies() const;

 private:
  const detail::GroebnerCache& cache() const;

  Prime prime_;
  std::size_t arity_;
  Level level_;
  std::vector<MultiPoly> gens_;
  std::shared_ptr<detail::GroebnerCache> cache_;
};

/// Reduced Groebner basis of the F_p ideal spanned by `generators`, sorted by
/// increasing leading monomial. Deterministic in the input order.
std::vector<MultiPoly> buchberger(std::span<const MultiPoly> generators, TermOrder order = {});
std::vector<MultiPoly> buchberger(const IdealPresentation& ideal);

/// Normal form of f with respect to a Groebner basis in the given order.
MultiPoly normal_form(const MultiPoly& f, std::span<const MultiPoly> basis, TermOrder order = {});

/// Membership of an F_p polynomial in the mod-p ideal.
bool ideal_member(const MultiPoly& f, const IdealPresentation& ideal);

/// All k-fold products of generators (duplicates removed, zero products dropped).
IdealPresentation ideal_power(const IdealPresentation& ideal, std::size_t k);
/// Generators raised to the p-th power.
IdealPresentation frobenius_power(const IdealPresentation& ideal);

/// (I : g) over F_p, by elimination of an auxiliary variable from tI + (1-t)g.
IdealPresentation colon_ideal(const IdealPresentation& ideal, const MultiPoly& g);

SyzygyBasis syzygy_basis(const IdealPresentation& ideal);

/// Membership over Z/p^2 of f in J, decided by a mod-p membership test for
/// f followed by a second one for the residual, corrected by the lifted syzygies.
bool member_mod_p2(const MultiPoly& f, const IdealPresentation& ideal);

}  // namespace froblift
