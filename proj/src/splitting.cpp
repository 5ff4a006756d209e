#include "froblift/splitting.hpp"

#include <algorithm>
#include <numeric>

#include "froblift/error.hpp"
#include "froblift/lifting.hpp"
#include "froblift/random.hpp"

namespace froblift {

// ---------------------------------------------------------------- TraceSplitting

TraceSplitting::TraceSplitting(MultiPoly key) : key_(std::move(key)) {
  if (key_.level() != Level::ModP) throw RingMismatch("splitting key must be a polynomial over F_p");
}

MultiPoly TraceSplitting::operator()(const MultiPoly& f) const { return monomial_trace(key_ * f); }

MultiPoly evaluate_splitting(const TraceSplitting& sigma, const MultiPoly& f) { return sigma(f); }

bool is_unital_splitting(const TraceSplitting& sigma) {
  return monomial_trace(sigma.key()) == MultiPoly::constant(sigma.prime(), sigma.arity(), Level::ModP, 1);
}

MultiPoly trace_form_from_map(const SplittingMap& sigma, const Prime& prime, std::size_t arity,
                              std::uint64_t degree_cap) {
  const Exponent p = static_cast<Exponent>(prime.value());
  MultiPoly key(prime, arity, Level::ModP);
  // Enumerate b in [0, p)^n; the probe x^((p-1) - b) picks out the component u_b
  // in u = sum_b x^b u_b^p.
  std::vector<Exponent> b(arity, 0);
  while (true) {
    Monomial probe(arity);
    Monomial shift(arity);
    for (std::size_t i = 0; i < arity; ++i) {
      probe[i] = p - 1 - b[i];
      shift[i] = b[i];
    }
    const MultiPoly component = sigma(MultiPoly::monomial(prime, Level::ModP, probe, 1));
    if (component.prime() != prime || component.arity() != arity || component.level() != Level::ModP)
      throw RingMismatch("splitting callback returned a polynomial in a different ring");
    if (component.total_degree() > degree_cap)
      throw DegreeUnbounded("splitting probe produced degree " + std::to_string(component.total_degree()) +
                            " above the cap " + std::to_string(degree_cap));
    key += frobenius(component).times_monomial(shift, 1);

    std::size_t i = 0;
    while (i < arity && ++b[i] == p) b[i++] = 0;
    if (i == arity) break;
  }
  return key;
}

bool fedder_is_fsplit(const MultiPoly& f) {
  if (f.level() != Level::ModP) throw RingMismatch("Fedder test expects a polynomial over F_p");
  if (f.is_zero()) throw Error("Fedder test needs a nonzero polynomial");
  const std::uint64_t p = f.prime().value();
  std::vector<MultiPoly> frob_max;
  for (std::size_t i = 0; i < f.arity(); ++i)
    frob_max.push_back(frobenius(MultiPoly::variable(f.prime(), f.arity(), Level::ModP, i)));
  const IdealPresentation ideal(f.prime(), f.arity(), Level::ModP, std::move(frob_max));
  return !ideal_member(f.pow(p - 1), ideal);
}

bool compatible_ideal_splitting(const TraceSplitting& sigma, const IdealPresentation& ideal) {
  if (ideal.level() != Level::ModP || ideal.arity() != sigma.arity() || ideal.prime() != sigma.prime())
    throw RingMismatch("compatibility is tested for an F_p ideal in the chart variables");
  if (!is_unital_splitting(sigma)) throw SplittingAxiomFailed("compatibility needs a unital splitting");
  if (ideal.is_zero()) return true;
  const IdealPresentation frob = frobenius_power(ideal);
  for (const MultiPoly& g : ideal.generators())
    if (!ideal_member(sigma.key(), colon_ideal(frob, g))) return false;
  return true;
}

SplittingDivisor divisor_of_splitting(const TraceSplitting& sigma, std::span<const MultiPoly> candidates) {
  const MultiPoly& u = sigma.key();
  if (u.is_zero()) throw Error("the zero map has no divisor");
  const long long pm1 = static_cast<long long>(sigma.prime().value() - 1);
  const bool unital = is_unital_splitting(sigma);
  SplittingDivisor out{{}, u};
  for (const MultiPoly& factor : candidates) {
    if (!factor.same_ring(u)) throw RingMismatch("divisor candidate lives in a different ring");
    if (factor.is_constant()) throw Error("divisor candidates must be nonconstant");
    std::uint64_t k = 0;
    MultiPoly q = out.residual;
    while (divide_exact(out.residual, factor, q)) {
      out.residual = q;
      ++k;
    }
    if (unital && k > static_cast<std::uint64_t>(pm1))
      throw InternalInconsistency("divisor multiplicity exceeds p - 1 for a unital splitting");
    const long long g = std::gcd(static_cast<long long>(k), pm1);
    out.components.push_back({factor, k, Rational{static_cast<long long>(k) / g, pm1 / g}});
  }
  return out;
}

// ---------------------------------------------------------------- groups

namespace {

std::vector<MultiPoly> compose(const std::vector<MultiPoly>& outer, const std::vector<MultiPoly>& inner) {
  std::vector<MultiPoly> out;
  for (const MultiPoly& f : outer) out.push_back(substitute(f, inner));
  return out;
}

}  // namespace

GroupAction::GroupAction(Prime prime, std::size_t arity, std::vector<std::vector<MultiPoly>> maps)
    : prime_(std::move(prime)), arity_(arity), maps_(std::move(maps)) {
  if (maps_.empty()) throw InvalidGroup("group must contain the identity");
  for (const auto& g : maps_) {
    if (g.size() != arity_) throw InvalidGroup("group element with wrong number of components");
    for (const MultiPoly& f : g)
      if (f.prime() != prime_ || f.arity() != arity_ || f.level() != Level::ModP)
        throw InvalidGroup("group element components must be F_p polynomials in the chart variables");
  }
  std::vector<MultiPoly> identity;
  for (std::size_t i = 0; i < arity_; ++i) identity.push_back(MultiPoly::variable(prime_, arity_, Level::ModP, i));
  if (std::find(maps_.begin(), maps_.end(), identity) == maps_.end())
    throw InvalidGroup("group must contain the identity");

  inverses_.assign(maps_.size(), maps_.size());
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    for (std::size_t j = 0; j < maps_.size(); ++j) {
      const auto c = compose(maps_[i], maps_[j]);
      if (std::find(maps_.begin(), maps_.end(), c) == maps_.end())
        throw InvalidGroup("group is not closed under composition");
      if (c == identity && inverses_[i] == maps_.size()) inverses_[i] = j;
    }
    if (inverses_[i] == maps_.size()) throw InvalidGroup("group element without inverse");
  }
}

MultiPoly GroupAction::pull_back(std::size_t index, const MultiPoly& f) const { return substitute(f, maps_.at(index)); }

TraceSplitting group_average(const TraceSplitting& sigma, const GroupAction& group, std::uint64_t degree_cap) {
  const Prime& prime = sigma.prime();
  if (group.prime() != prime || group.arity() != sigma.arity()) throw RingMismatch("group acts on a different chart");
  if (group.order() % prime.value() == 0)
    throw OrderDivisibleByP("group order " + std::to_string(group.order()) + " is divisible by p");
  const Coeff inv_order = modarith::inverse(group.order() % prime.value(), prime.value());
  const SplittingMap averaged = [&](const MultiPoly& f) {
    MultiPoly acc(prime, sigma.arity(), Level::ModP);
    for (std::size_t g = 0; g < group.order(); ++g)
      acc += group.pull_back(group.inverse_of(g), sigma(group.pull_back(g, f)));
    return acc.scaled(inv_order);
  };
  return TraceSplitting(trace_form_from_map(averaged, prime, sigma.arity(), degree_cap));
}

// ---------------------------------------------------------------- canonical lifting

CanonicalLiftRing::CanonicalLiftRing(TraceSplitting sigma) : sigma_(std::move(sigma)) {
  if (!is_unital_splitting(sigma_)) throw SplittingAxiomFailed("canonical lifting needs a unital splitting");
}

CanonicalLiftElement CanonicalLiftRing::normal_form(const WittPoly& w) const {
  if (!w.f0().same_ring(sigma_.key())) throw RingMismatch("Witt vector lives in a different ring");
  return CanonicalLiftElement(WittPoly(w.f0(), frobenius(sigma_(w.f1()))));
}

CanonicalLiftElement CanonicalLiftRing::add(const CanonicalLiftElement& a, const CanonicalLiftElement& b) const {
  return normal_form(witt_add(a.value(), b.value()));
}

CanonicalLiftElement CanonicalLiftRing::mul(const CanonicalLiftElement& a, const CanonicalLiftElement& b) const {
  return normal_form(witt_mul(a.value(), b.value()));
}

CanonicalLiftElement CanonicalLiftRing::times_p(const CanonicalLiftElement& a) const {
  const MultiPoly one = MultiPoly::constant(sigma_.prime(), sigma_.arity(), Level::ModP, 1);
  return normal_form(witt_mul(witt_verschiebung(one), a.value()));
}

bool CanonicalLiftRing::flatness_check(std::uint64_t degree_cap) const {
  const Prime& prime = sigma_.prime();
  const std::size_t n = sigma_.arity();
  const MultiPoly zero(prime, n, Level::ModP);

  // Zero plus all monomials of degree <= cap.
  std::vector<MultiPoly> samples{zero};
  std::vector<Exponent> e(n, 0);
  while (true) {
    const Monomial m{std::vector<Exponent>(e)};
    if (m.degree() <= degree_cap) samples.push_back(MultiPoly::monomial(prime, Level::ModP, m, 1));
    std::size_t i = 0;
    while (i < n && ++e[i] > degree_cap) e[i++] = 0;
    if (i == n) break;
  }

  for (const MultiPoly& z0 : samples) {
    for (const MultiPoly& z1 : samples) {
      const CanonicalLiftElement z = normal_form(WittPoly(z0, z1));
      const CanonicalLiftElement pz = times_p(z);
      const bool killed = pz.value().f0().is_zero() && pz.value().f1().is_zero();
      if (killed != z0.is_zero()) return false;
      if (killed) {
        // z must equal p * (sigma(z1), 0)
        const CanonicalLiftElement w = normal_form(witt_teichmuller(sigma_(z1)));
        if (times_p(w) != z) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- iso checks

IsoCheckReport theorem_iso_check(const ChartLifting& lifting, std::size_t samples, std::uint64_t seed) {
  return theorem_iso_check(lifting, associated_splitting(lifting), samples, seed);
}

IsoCheckReport theorem_iso_check(const ChartLifting& lifting, const TraceSplitting& sigma, std::size_t samples,
                                 std::uint64_t seed) {
  const Prime& prime = lifting.prime();
  const std::size_t n = lifting.arity();
  std::mt19937_64 rng(seed);
  IsoCheckReport report;

  for (std::size_t k = 0; k < samples && report.left_identity; ++k) {
    const MultiPoly f = random_poly(prime, n, Level::ModP, rng, 3, 4);
    if (sigma(frobenius(f)) != f) {
      report.left_identity = false;
      report.failure = "sigma(f^p) != f for f = " + f.to_string();
    }
  }
  // The ring-map checks only make sense once sigma is a splitting.
  if (!report.left_identity) return report;

  const CanonicalLiftRing ring(sigma);
  const auto nu = [&](const MultiPoly& f) { return ring.normal_form(WittPoly(reduce_mod_p(f), delta(lifting, f))); };
  for (std::size_t k = 0; k < samples && report.ok(); ++k) {
    const MultiPoly f = random_poly(prime, n, Level::ModP2, rng, 3, 3);
    const MultiPoly g = random_poly(prime, n, Level::ModP2, rng, 3, 3);
    if (nu(f + g) != ring.add(nu(f), nu(g))) {
      report.additive = false;
      report.failure = "additivity fails for f = " + f.to_string() + ", g = " + g.to_string();
    } else if (nu(f * g) != ring.mul(nu(f), nu(g))) {
      report.multiplicative = false;
      report.failure = "multiplicativity fails for f = " + f.to_string() + ", g = " + g.to_string();
    }
  }
  return report;
}

Coeff p1_invariant_scan(const Prime& prime) {
  const std::uint64_t p = prime.value();
  const MultiPoly x = MultiPoly::variable(prime, 2, Level::ModP, 0);
  const MultiPoly y = MultiPoly::variable(prime, 2, Level::ModP, 1);
  MultiPoly product = x;
  for (std::uint64_t l = 1; l < p; ++l) product *= x - y.scaled(l);
  product *= y.pow(p - 2);
  return product.coefficient(Monomial{static_cast<Exponent>(p - 1), static_cast<Exponent>(p - 1)});
}

}  // namespace froblift
