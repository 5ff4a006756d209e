#include "froblift/lifting.hpp"

#include <algorithm>
#include <set>

#include "froblift/error.hpp"

namespace froblift {

namespace {

MultiPoly coordinate(const Prime& prime, std::size_t arity, Level level, std::size_t i) {
  return MultiPoly::variable(prime, arity, level, i);
}

MultiPoly coordinate_power(const Prime& prime, std::size_t arity, Level level, std::size_t i, Exponent e) {
  Monomial m(arity);
  m[i] = e;
  return MultiPoly::monomial(prime, level, std::move(m), 1);
}

void require_determinant_size(std::size_t n) {
  if (n == 0 || n > kMaxDeterminantArity)
    throw Error("determinants are supported for 1 <= n <= " + std::to_string(kMaxDeterminantArity));
}

// Cofactor u with image = x_index^p * u, or throws NotCompatibleWithDivisor.
MultiPoly divisor_cofactor(const ChartLifting& lifting, std::size_t index) {
  const MultiPoly& image = lifting.images()[index];
  const Exponent p = static_cast<Exponent>(lifting.prime().value());
  std::vector<Term> terms;
  for (const Term& t : image.terms()) {
    if (t.mono[index] < p) throw NotCompatibleWithDivisor(index + 1);
    Monomial m = t.mono;
    m[index] -= p;
    terms.push_back({std::move(m), t.coeff});
  }
  MultiPoly unit = MultiPoly::from_terms(lifting.prime(), lifting.arity(), Level::ModP2, std::move(terms));
  if (reduce_mod_p(unit) != MultiPoly::constant(lifting.prime(), lifting.arity(), Level::ModP, 1))
    throw NotCompatibleWithDivisor(index + 1);
  return unit;
}

}  // namespace

ChartLifting::ChartLifting(Prime prime, std::vector<MultiPoly> images) : prime_(std::move(prime)), images_(std::move(images)) {
  const std::size_t n = images_.size();
  if (n == 0) throw Error("a chart lifting needs at least one variable");
  const Exponent p = static_cast<Exponent>(prime_.value());
  for (std::size_t i = 0; i < n; ++i) {
    const MultiPoly& img = images_[i];
    if (img.prime() != prime_ || img.arity() != n || img.level() != Level::ModP2)
      throw RingMismatch("lifting images must be polynomials over Z/p^2 in the chart variables");
    const MultiPoly frob = coordinate_power(prime_, n, Level::ModP, i, p);
    if (reduce_mod_p(img) != frob) throw NotALifting(i + 1);
    deltas_.push_back(divide_by_p(img - lift_mod_p2(frob)));
  }
}

ChartLifting ChartLifting::standard_toric(const Prime& prime, std::size_t arity) {
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < arity; ++i)
    images.push_back(coordinate_power(prime, arity, Level::ModP2, i, static_cast<Exponent>(prime.value())));
  return ChartLifting(prime, std::move(images));
}

ChartLifting validate_lifting(const Prime& prime, std::vector<MultiPoly> images) {
  return ChartLifting(prime, std::move(images));
}

MultiPoly delta(const ChartLifting& lifting, const MultiPoly& f) {
  if (f.level() != Level::ModP2 || f.arity() != lifting.arity() || f.prime() != lifting.prime())
    throw RingMismatch("delta expects a Z/p^2 polynomial in the chart variables");
  const MultiPoly pulled = substitute(f, lifting.images());
  try {
    return divide_by_p(pulled - f.pow(lifting.prime().value()));
  } catch (const NotDivisible& e) {
    throw InternalInconsistency(std::string("delta: ") + e.what());
  }
}

XiMatrix xi_det(const ChartLifting& lifting) {
  const std::size_t n = lifting.arity();
  require_determinant_size(n);
  const Prime& prime = lifting.prime();
  const Exponent p = static_cast<Exponent>(prime.value());
  PolyMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      MultiPoly entry = partial_derivative(lifting.deltas()[i], j);
      if (i == j) entry += coordinate_power(prime, n, Level::ModP, i, p - 1);
      m[i].push_back(std::move(entry));
    }
  }
  MultiPoly det = determinant(m);
  return {std::move(m), std::move(det)};
}

XiLogMatrix log_xi_det(const ChartLifting& lifting, std::size_t log_rank) {
  const std::size_t n = lifting.arity();
  require_determinant_size(n);
  if (log_rank > n) throw Error("log rank exceeds the number of variables");
  const Prime& prime = lifting.prime();
  const Exponent p = static_cast<Exponent>(prime.value());
  const MultiPoly one_p2 = MultiPoly::constant(prime, n, Level::ModP2, 1);

  XiLogMatrix out{log_rank, PolyMatrix(n), MultiPoly(prime, n, Level::ModP), {}, {}};
  for (std::size_t i = 0; i < log_rank; ++i) {
    MultiPoly unit = divisor_cofactor(lifting, i);
    out.v.push_back(divide_by_p(unit - one_p2));
    out.units.push_back(std::move(unit));
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Row i is d(v_i) + dlog x_i for i < r, and d(delta_i) + x_i^(p-1) dx_i otherwise.
    const MultiPoly& source = i < log_rank ? out.v[i] : lifting.deltas()[i];
    for (std::size_t j = 0; j < n; ++j) {
      MultiPoly entry = partial_derivative(source, j);
      if (j < log_rank) entry *= coordinate(prime, n, Level::ModP, j);
      if (i == j) {
        entry += i < log_rank ? MultiPoly::constant(prime, n, Level::ModP, 1)
                              : coordinate_power(prime, n, Level::ModP, i, p - 1);
      }
      out.entries[i].push_back(std::move(entry));
    }
  }
  out.det = determinant(out.entries);
  return out;
}

TraceSplitting associated_splitting(const ChartLifting& lifting) {
  TraceSplitting sigma(xi_det(lifting).det);
  if (!is_unital_splitting(sigma)) throw SplittingAxiomFailed("Tr(det xi) != 1");
  return sigma;
}

bool is_compatible_with_ideal(const ChartLifting& lifting, const IdealPresentation& ideal) {
  if (ideal.level() != Level::ModP2 || ideal.arity() != lifting.arity() || ideal.prime() != lifting.prime())
    throw RingMismatch("compatibility is tested for a Z/p^2 ideal in the chart variables");
  if (ideal.is_zero()) return true;
  const IdealPresentation power = ideal_power(ideal, lifting.prime().value());
  for (const MultiPoly& g : ideal.generators())
    if (!member_mod_p2(substitute(g, lifting.images()), power)) return false;
  return true;
}

BlowupCertificate blowup_extends(const ChartLifting& lifting, std::span<const std::size_t> center) {
  if (center.size() < 2) throw CenterTooSmall("blow-up center needs at least two coordinates");
  const std::size_t n = lifting.arity();
  const std::set<std::size_t> distinct(center.begin(), center.end());
  if (distinct.size() != center.size() || *distinct.rbegin() >= n)
    throw Error("blow-up center must consist of distinct chart coordinates");
  const Prime& prime = lifting.prime();
  const std::uint64_t p = prime.value();

  std::vector<MultiPoly> coords;
  for (std::size_t i : center) coords.push_back(coordinate(prime, n, Level::ModP, i));
  const IdealPresentation ideal(prime, n, Level::ModP, coords);
  const IdealPresentation ideal_p = ideal_power(ideal, p);
  const IdealPresentation ideal_2p = ideal_power(ideal, 2 * p);

  BlowupCertificate cert;
  cert.center.assign(center.begin(), center.end());
  for (std::size_t i : center) cert.f.push_back(lifting.deltas()[i]);

  cert.pairwise_test = true;
  for (std::size_t a = 0; a < center.size(); ++a) {
    for (std::size_t b = a + 1; b < center.size(); ++b) {
      const MultiPoly xa = frobenius(coords[a]);
      const MultiPoly xb = frobenius(coords[b]);
      const bool member = ideal_member(xa * cert.f[b] - xb * cert.f[a], ideal_2p);
      cert.pairwise.push_back({center[a], center[b], member});
      cert.pairwise_test = cert.pairwise_test && member;
    }
  }
  cert.direct_test = true;
  for (const MultiPoly& f : cert.f) {
    const bool member = ideal_member(f, ideal_p);
    cert.direct.push_back(member);
    cert.direct_test = cert.direct_test && member;
  }
  if (cert.pairwise_test != cert.direct_test)
    throw InternalInconsistency("pairwise and direct blow-up criteria disagree");
  cert.extends = cert.direct_test;
  return cert;
}

ChartLifting product_lifting(const ChartLifting& first, const ChartLifting& second) {
  if (first.prime() != second.prime()) throw RingMismatch("product of liftings over different primes");
  const std::size_t n = first.arity() + second.arity();
  std::vector<MultiPoly> images;
  for (const MultiPoly& f : first.images()) images.push_back(embed(f, n, 0));
  for (const MultiPoly& f : second.images()) images.push_back(embed(f, n, first.arity()));
  return ChartLifting(first.prime(), std::move(images));
}

ChartLifting restrict_to_coordinate_divisor(const ChartLifting& lifting, std::size_t index) {
  const std::size_t n = lifting.arity();
  if (index >= n) throw Error("divisor index out of range");
  if (n < 2) throw Error("cannot restrict a one-variable chart");
  divisor_cofactor(lifting, index);
  const Prime& prime = lifting.prime();
  std::vector<MultiPoly> subst;
  for (std::size_t j = 0; j < n; ++j)
    subst.push_back(j == index ? MultiPoly(prime, n, Level::ModP2) : coordinate(prime, n, Level::ModP2, j));
  std::vector<MultiPoly> images;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == index) continue;
    images.push_back(drop_variable(substitute(lifting.images()[j], subst), index));
  }
  return ChartLifting(prime, std::move(images));
}

std::vector<MultiPoly> base_change_psi(const ChartLifting& target, std::span<const MultiPoly> phi) {
  if (phi.size() != target.arity()) throw RingMismatch("psi: phi must have one component per target variable");
  const MultiPoly& ref = phi.front();
  for (const MultiPoly& f : phi)
    if (!f.same_ring(ref) || f.level() != Level::ModP || f.prime() != target.prime())
      throw RingMismatch("psi: phi components must be F_p polynomials in one ring");
  const std::uint64_t p = target.prime().value();
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    MultiPoly image = lift_mod_p2(phi[i]).pow(p);
    image += times_p(substitute(target.deltas()[i], phi));
    out.push_back(std::move(image));
  }
  return out;
}

std::vector<Coeff> canonical_point_lift(const ChartLifting& lifting, std::span<const Coeff> point) {
  if (point.size() != lifting.arity()) throw RingMismatch("point dimension differs from chart arity");
  const Prime& prime = lifting.prime();
  const Coeff p = prime.value();
  const Coeff p2 = prime.square();
  std::vector<Coeff> reduced(point.begin(), point.end());
  for (Coeff& a : reduced) a %= p;
  std::vector<Coeff> out;
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const Coeff d = evaluate(lifting.deltas()[i], reduced);
    out.push_back(modarith::add(modarith::pow(reduced[i], p, p2), modarith::mul(p, d, p2), p2));
  }
  return out;
}

RoundtripResult nu_theta_roundtrip(const ChartLifting& lifting, const MultiPoly& f) {
  MultiPoly via = lift_mod_p2(reduce_mod_p(f)).pow(lifting.prime().value()) + times_p(delta(lifting, f));
  MultiPoly direct = substitute(f, lifting.images());
  const bool equal = via == direct;
  if (!equal) throw RoundtripFailed("theta(nu(f)) != F*(f) for f = " + f.to_string());
  return {std::move(via), std::move(direct), equal};
}

}  // namespace froblift
