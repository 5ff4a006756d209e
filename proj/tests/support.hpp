// Test-only oracles and random generators. Nothing here is used by the library.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "froblift/lifting.hpp"
#include "froblift/poly.hpp"
#include "froblift/random.hpp"

namespace froblift::testing {

inline MultiPoly var(const Prime& p, std::size_t n, std::size_t i, Level level = Level::ModP) {
  return MultiPoly::variable(p, n, level, i);
}

inline MultiPoly cst(const Prime& p, std::size_t n, Coeff c, Level level = Level::ModP) {
  return MultiPoly::constant(p, n, level, c);
}

inline MultiPoly mono(const Prime& p, Level level, std::vector<Exponent> e, Coeff c = 1) {
  return MultiPoly::monomial(p, level, Monomial(std::move(e)), c);
}

/// Plain integer power mod m, independent of modarith.
inline Coeff naive_pow(Coeff base, std::uint64_t e, Coeff m) {
  Coeff r = 1 % m;
  for (std::uint64_t i = 0; i < e; ++i) r = (r * (base % m)) % m;
  return r;
}

/// Ghost component of a scalar Witt vector: a0^p + p a1 in Z/p^2.
inline Coeff ghost_oracle(Coeff p, Coeff a0, Coeff a1) {
  const Coeff p2 = p * p;
  return (naive_pow(a0, p, p2) + p * (a1 % p)) % p2;
}

/// Ghost component of a polynomial Witt vector: lift(f0)^p + p lift(f1) over Z/p^2.
inline MultiPoly ghost_poly(const MultiPoly& f0, const MultiPoly& f1) {
  return lift_mod_p2(f0).pow(f0.prime().value()) + times_p(f1);
}

/// Leibniz-formula determinant over all permutations.
inline MultiPoly permutation_determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly acc(m[0][0].prime(), m[0][0].arity(), m[0][0].level());
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    MultiPoly term = MultiPoly::constant(acc.prime(), acc.arity(), acc.level(), 1);
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    acc += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

/// Homogeneous component of degree d.
inline MultiPoly homogeneous_part(const MultiPoly& f, std::uint64_t d) {
  std::vector<Term> terms;
  for (const Term& t : f.terms())
    if (t.mono.degree() == d) terms.push_back(t);
  return MultiPoly::from_terms(f.prime(), f.arity(), f.level(), std::move(terms));
}

inline bool is_homogeneous(const MultiPoly& f) {
  if (f.is_zero()) return true;
  const std::uint64_t d = f.terms().front().mono.degree();
  return std::all_of(f.terms().begin(), f.terms().end(), [&](const Term& t) { return t.mono.degree() == d; });
}

/// All exponent vectors of total degree exactly d.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, std::uint64_t d) {
  std::vector<Monomial> out;
  std::vector<Exponent> e(n, 0);
  const std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
    if (i + 1 == n) {
      e[i] = static_cast<Exponent>(left);
      out.emplace_back(std::vector<Exponent>(e));
      return;
    }
    for (std::uint64_t k = 0; k <= left; ++k) {
      e[i] = static_cast<Exponent>(k);
      rec(i + 1, left - k);
    }
  };
  if (n == 0) {
    if (d == 0) out.emplace_back(std::size_t{0});
    return out;
  }
  rec(0, d);
  return out;
}

/// Solvability of A x = b over Z/q, q = p^e, by diagonalization with full
/// pivoting on the entry of least p-adic valuation.
inline bool linear_system_solvable(std::vector<std::vector<Coeff>> a, std::vector<Coeff> b, Coeff p, unsigned e) {
  Coeff q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  const auto valuation = [&](Coeff x) {
    unsigned v = 0;
    while (x != 0 && x % p == 0 && v < e) {
      x /= p;
      ++v;
    }
    return x == 0 ? e : v;
  };
  const auto inverse = [&](Coeff u) {
    for (Coeff c = 1; c < q; ++c)
      if ((u * c) % q == 1) return c;
    return Coeff{0};
  };
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<unsigned> pivots;
  std::size_t k = 0;
  for (; k < std::min(rows, cols); ++k) {
    unsigned best = e;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        const unsigned v = valuation(a[i][j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == e) break;
    std::swap(a[k], a[bi]);
    std::swap(b[k], b[bi]);
    for (auto& row : a) std::swap(row[k], row[bj]);
    Coeff pv = 1;
    for (unsigned i = 0; i < best; ++i) pv *= p;
    const Coeff unit_inv = inverse(a[k][k] / pv);
    for (std::size_t i = k + 1; i < rows; ++i) {
      const Coeff factor = (a[i][k] / pv) * unit_inv % q;
      if (!factor) continue;
      for (std::size_t j = k; j < cols; ++j) a[i][j] = (a[i][j] + q - factor * a[k][j] % q) % q;
      b[i] = (b[i] + q - factor * b[k] % q) % q;
    }
    for (std::size_t j = k + 1; j < cols; ++j) {
      const Coeff factor = (a[k][j] / pv) * unit_inv % q;
      if (!factor) continue;
      for (std::size_t i = k; i < rows; ++i) a[i][j] = (a[i][j] + q - factor * a[i][k] % q) % q;
    }
    pivots.push_back(best);
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < pivots.size()) {
      if (valuation(b[i]) < pivots[i]) return false;
    } else if (b[i] != 0) {
      return false;
    }
  }
  return true;
}

/// Membership of f in the ideal generated by homogeneous `gens`, over F_p or
/// Z/p^2 according to the level, by linear algebra on each homogeneous
/// component of f separately (exact for homogeneous generators).
inline bool homogeneous_member_oracle(const MultiPoly& f, const std::vector<MultiPoly>& gens) {
  const Coeff p = f.prime().value();
  const unsigned e = f.level() == Level::ModP ? 1 : 2;
  const std::size_t n = f.arity();
  std::map<std::uint64_t, bool> seen;
  for (const Term& t : f.terms()) seen[t.mono.degree()] = true;
  for (const auto& [d, unused] : seen) {
    (void)unused;
    const MultiPoly target = homogeneous_part(f, d);
    const std::vector<Monomial> basis = monomials_of_degree(n, d);
    std::map<Monomial, std::size_t> row_of;
    for (std::size_t i = 0; i < basis.size(); ++i) row_of[basis[i]] = i;
    std::vector<MultiPoly> columns;
    for (const MultiPoly& g : gens) {
      if (g.is_zero()) continue;
      const std::uint64_t dg = g.terms().front().mono.degree();
      if (dg > d) continue;
      for (const Monomial& m : monomials_of_degree(n, d - dg)) columns.push_back(g.times_monomial(m, 1));
    }
    std::vector<std::vector<Coeff>> a(basis.size(), std::vector<Coeff>(columns.size(), 0));
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (const Term& t : columns[j].terms()) a[row_of.at(t.mono)][j] = t.coeff;
    std::vector<Coeff> b(basis.size(), 0);
    for (const Term& t : target.terms()) b[row_of.at(t.mono)] = t.coeff;
    if (!linear_system_solvable(std::move(a), std::move(b), p, e)) return false;
  }
  return true;
}

/// Random homogeneous polynomial of degree d.
inline MultiPoly random_homogeneous(const Prime& prime, std::size_t n, Level level, std::uint64_t d,
                                    std::size_t terms, std::mt19937_64& rng) {
  const auto basis = monomials_of_degree(n, d);
  const Coeff m = level == Level::ModP ? prime.value() : prime.square();
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<Coeff> coeff(0, m - 1);
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms; ++i) out.push_back({basis[pick(rng)], coeff(rng)});
  return MultiPoly::from_terms(prime, n, level, std::move(out));
}

/// x_i^p + p * delta_i with random delta_i.
inline ChartLifting random_lifting(const Prime& prime, std::size_t n, std::mt19937_64& rng,
                                   std::uint64_t max_degree = 3, std::size_t max_terms = 3) {
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    Monomial m(n);
    m[i] = static_cast<Exponent>(prime.value());
    images.push_back(MultiPoly::monomial(prime, Level::ModP2, m, 1) +
                     times_p(random_poly(prime, n, Level::ModP, rng, max_degree, max_terms)));
  }
  return ChartLifting(prime, std::move(images));
}

/// Lifting compatible with x_1 ... x_r = 0: images[i] = x_i^p (1 + p v_i) for i < r.
inline ChartLifting random_log_lifting(const Prime& prime, std::size_t n, std::size_t r, std::mt19937_64& rng,
                                       std::uint64_t max_degree = 3, std::size_t max_terms = 3) {
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    Monomial m(n);
    m[i] = static_cast<Exponent>(prime.value());
    const MultiPoly xp = MultiPoly::monomial(prime, Level::ModP2, m, 1);
    const MultiPoly noise = times_p(random_poly(prime, n, Level::ModP, rng, max_degree, max_terms));
    images.push_back(i < r ? xp * (MultiPoly::constant(prime, n, Level::ModP2, 1) + noise) : xp + noise);
  }
  return ChartLifting(prime, std::move(images));
}

/// Product of the first `count` variables raised to p - 1.
inline MultiPoly boundary_monomial(const Prime& prime, std::size_t n, std::size_t count) {
  Monomial m(n);
  for (std::size_t i = 0; i < count; ++i) m[i] = static_cast<Exponent>(prime.value() - 1);
  return MultiPoly::monomial(prime, Level::ModP, m, 1);
}

}  // namespace froblift::testing
