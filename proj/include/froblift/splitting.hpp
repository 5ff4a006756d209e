#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "froblift/ideal.hpp"
#include "froblift/poly.hpp"
#include "froblift/witt.hpp"

namespace froblift {

class ChartLifting;

/// Frobenius splitting of a polynomial chart in trace form,
/// sigma(f) = Tr(u * f), determined by its key polynomial u.
class TraceSplitting {
 public:
  explicit TraceSplitting(MultiPoly key);

  const MultiPoly& key() const noexcept { return key_; }
  const Prime& prime() const noexcept { return key_.prime(); }
  std::size_t arity() const noexcept { return key_.arity(); }

  MultiPoly operator()(const MultiPoly& f) const;

 private:
  MultiPoly key_;
};

MultiPoly evaluate_splitting(const TraceSplitting& sigma, const MultiPoly& f);

/// sigma(1) = 1.
bool is_unital_splitting(const TraceSplitting& sigma);

/// An F_p-linear, p^{-1}-linear map on F_p[x_1..x_n].
using SplittingMap = std::function<MultiPoly(const MultiPoly&)>;

/// Recovers the key polynomial of a black-box splitting by probing it on the
/// monomials x^((p-1) - b), b in [0, p)^n. Throws DegreeUnbounded when a probe
/// returns something of degree above `degree_cap`.
MultiPoly trace_form_from_map(const SplittingMap& sigma, const Prime& prime, std::size_t arity,
                              std::uint64_t degree_cap = 256);

/// Fedder's criterion at the origin: f^(p-1) is not in (x_1^p, ..., x_n^p).
bool fedder_is_fsplit(const MultiPoly& f);

/// sigma(I) is contained in I, decided by u in (I^[p] : g) for every generator g of I.
bool compatible_ideal_splitting(const TraceSplitting& sigma, const IdealPresentation& ideal);

struct Rational {
  long long num;
  long long den;
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct DivisorComponent {
  MultiPoly factor;
  std::uint64_t multiplicity;
  Rational coefficient;  // multiplicity / (p - 1), reduced
};

/// Chart shadow of the divisor attached to a splitting: multiplicities of the
/// candidate factors in u, and what is left of u after dividing them out.
struct SplittingDivisor {
  std::vector<DivisorComponent> components;
  MultiPoly residual;
};

/// Candidates are divided out of u in order. Throws InternalInconsistency if a
/// multiplicity exceeds p - 1 for a unital splitting.
SplittingDivisor divisor_of_splitting(const TraceSplitting& sigma, std::span<const MultiPoly> candidates);

/// A finite group acting on the chart by substitutions x_i -> g_i(x).
class GroupAction {
 public:
  /// Validates identity, closure under composition and inverses.
  GroupAction(Prime prime, std::size_t arity, std::vector<std::vector<MultiPoly>> maps);

  std::size_t order() const noexcept { return maps_.size(); }
  std::span<const std::vector<MultiPoly>> maps() const noexcept { return maps_; }
  std::size_t inverse_of(std::size_t index) const { return inverses_.at(index); }
  const Prime& prime() const noexcept { return prime_; }
  std::size_t arity() const noexcept { return arity_; }

  /// g^* f = f(g(x)).
  MultiPoly pull_back(std::size_t index, const MultiPoly& f) const;

 private:
  Prime prime_;
  std::size_t arity_;
  std::vector<std::vector<MultiPoly>> maps_;
  std::vector<std::size_t> inverses_;
};

/// Averages f -> |G|^{-1} sum_g (g^{-1})^* sigma(g^* f) and returns it in trace form.
/// Throws OrderDivisibleByP when p divides |G|.
TraceSplitting group_average(const TraceSplitting& sigma, const GroupAction& group, std::uint64_t degree_cap = 256);

class CanonicalLiftRing;

/// An element (f0, f1) of W_2(F_p[x]) modulo {(0, f) : sigma(f) = 0}, stored in
/// the normal form f1 = sigma(f1)^p.
class CanonicalLiftElement {
 public:
  const WittPoly& value() const noexcept { return value_; }
  friend bool operator==(const CanonicalLiftElement&, const CanonicalLiftElement&) = default;

 private:
  friend class CanonicalLiftRing;
  explicit CanonicalLiftElement(WittPoly v) : value_(std::move(v)) {}
  WittPoly value_;
};

/// The canonical Z/p^2-lifting attached to a unital splitting.
class CanonicalLiftRing {
 public:
  explicit CanonicalLiftRing(TraceSplitting sigma);

  const TraceSplitting& splitting() const noexcept { return sigma_; }

  CanonicalLiftElement normal_form(const WittPoly& w) const;
  CanonicalLiftElement add(const CanonicalLiftElement& a, const CanonicalLiftElement& b) const;
  CanonicalLiftElement mul(const CanonicalLiftElement& a, const CanonicalLiftElement& b) const;
  /// Multiplication by p, i.e. by V(1) = (0, 1).
  CanonicalLiftElement times_p(const CanonicalLiftElement& a) const;

  /// Checks, over all pairs of monomials (or zero) of degree <= cap, that
  /// p * z = 0 exactly when z is a multiple of p.
  bool flatness_check(std::uint64_t degree_cap) const;

 private:
  TraceSplitting sigma_;
};

struct IsoCheckReport {
  bool left_identity = true;   // sigma(f^p) = f
  bool additive = true;        // f -> [nu(f)] respects +
  bool multiplicative = true;  // f -> [nu(f)] respects *
  std::string failure;         // first failing identity, empty when all hold
  bool ok() const noexcept { return left_identity && additive && multiplicative; }
};

/// Chart check that sigma o F* = id and that f -> normal_form(f, delta(f)) is a ring map
/// into the canonical lifting, for the splitting associated to the lifting.
IsoCheckReport theorem_iso_check(const ChartLifting& lifting, std::size_t samples = 50, std::uint64_t seed = 1);
/// Same, but against an explicitly supplied splitting.
IsoCheckReport theorem_iso_check(const ChartLifting& lifting, const TraceSplitting& sigma, std::size_t samples = 50,
                                 std::uint64_t seed = 1);

/// Coefficient of x^(p-1) y^(p-1) in x (x - y)(x - 2y)...(x - (p-1)y) y^(p-2) over F_p.
Coeff p1_invariant_scan(const Prime& prime);

}  // namespace froblift
