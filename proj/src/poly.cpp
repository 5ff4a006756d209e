#include "froblift/poly.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "froblift/error.hpp"

namespace froblift {

namespace {

Exponent checked_add(Exponent a, Exponent b) {
  if (a > std::numeric_limits<Exponent>::max() - b) throw ExponentOverflow();
  return a + b;
}

Exponent checked_mul(Exponent a, std::uint64_t k) {
  const std::uint64_t r = static_cast<std::uint64_t>(a) * k;
  if (k != 0 && (r / k != a || r > std::numeric_limits<Exponent>::max())) throw ExponentOverflow();
  return static_cast<Exponent>(r);
}

bool term_greater(const Term& a, const Term& b) { return degrevlex_compare(a.mono, b.mono) > 0; }

}  // namespace

// ---------------------------------------------------------------- Monomial

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (Exponent e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (arity() != other.arity()) throw RingMismatch("monomial arity mismatch");
  Monomial r(arity());
  for (std::size_t i = 0; i < arity(); ++i) r.exps_[i] = checked_add(exps_[i], other.exps_[i]);
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(arity());
  for (std::size_t i = 0; i < arity(); ++i) r.exps_[i] = exps_[i] - other.exps_[i];
  return r;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < arity(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(arity());
  for (std::size_t i = 0; i < arity(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return r;
}

Monomial Monomial::scaled(std::uint64_t k) const {
  Monomial r(arity());
  for (std::size_t i = 0; i < arity(); ++i) r.exps_[i] = checked_mul(exps_[i], k);
  return r;
}

int degrevlex_compare(const Monomial& a, const Monomial& b) noexcept {
  const std::uint64_t da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.arity(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(Prime prime, std::size_t arity, Level level)
    : prime_(std::move(prime)), arity_(arity), level_(level) {}

MultiPoly MultiPoly::constant(Prime prime, std::size_t arity, Level level, long long c) {
  MultiPoly r(std::move(prime), arity, level);
  const Coeff v = modarith::from_signed(c, r.modulus());
  if (v != 0) r.terms_.push_back({Monomial(arity), v});
  return r;
}

MultiPoly MultiPoly::variable(Prime prime, std::size_t arity, Level level, std::size_t index) {
  if (index >= arity) throw RingMismatch("variable index out of range");
  Monomial m(arity);
  m[index] = 1;
  return monomial(std::move(prime), level, std::move(m), 1);
}

MultiPoly MultiPoly::monomial(Prime prime, Level level, Monomial mono, Coeff c) {
  const std::size_t n = mono.arity();
  MultiPoly r(std::move(prime), n, level);
  c %= r.modulus();
  if (c != 0) r.terms_.push_back({std::move(mono), c});
  return r;
}

MultiPoly MultiPoly::from_terms(Prime prime, std::size_t arity, Level level, std::vector<Term> terms) {
  MultiPoly r(std::move(prime), arity, level);
  for (const Term& t : terms)
    if (t.mono.arity() != arity) throw RingMismatch("term arity mismatch");
  r.terms_ = std::move(terms);
  r.normalize();
  return r;
}

void MultiPoly::normalize() {
  const Coeff m = modulus();
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (Term& t : terms_) {
    t.coeff %= m;
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = modarith::add(out.back().coeff, t.coeff, m);
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

bool MultiPoly::is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_.front();
}

std::uint64_t MultiPoly::total_degree() const noexcept { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

Coeff MultiPoly::coefficient(const Monomial& m) const {
  for (const Term& t : terms_)
    if (t.mono == m) return t.coeff;
  return 0;
}

bool MultiPoly::same_ring(const MultiPoly& other) const noexcept {
  return prime_ == other.prime_ && arity_ == other.arity_ && level_ == other.level_;
}

void MultiPoly::require_same_ring(const MultiPoly& other) const {
  if (!same_ring(other)) throw RingMismatch("polynomials live in different rings");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (Term& t : r.terms_) t.coeff = modarith::neg(t.coeff, modulus());
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  require_same_ring(other);
  const Coeff m = modulus();
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    int c;
    if (a == terms_.end())
      c = -1;
    else if (b == other.terms_.end())
      c = 1;
    else
      c = degrevlex_compare(a->mono, b->mono);
    if (c > 0) {
      out.push_back(std::move(*a++));
    } else if (c < 0) {
      out.push_back(*b++);
    } else {
      const Coeff s = modarith::add(a->coeff, b->coeff, m);
      if (s != 0) out.push_back({std::move(a->mono), s});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) { return *this += -other; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_same_ring(b);
  MultiPoly r(a.prime_, a.arity_, a.level_);
  if (a.is_zero() || b.is_zero()) return r;
  const Coeff m = a.modulus();
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const Term& s : a.terms_)
    for (const Term& t : b.terms_) r.terms_.push_back({s.mono * t.mono, modarith::mul(s.coeff, t.coeff, m)});
  r.normalize();
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly MultiPoly::scaled(Coeff c) const {
  MultiPoly r(prime_, arity_, level_);
  const Coeff m = modulus();
  for (const Term& t : terms_) {
    const Coeff v = modarith::mul(t.coeff, c, m);
    if (v != 0) r.terms_.push_back({t.mono, v});
  }
  return r;
}

MultiPoly MultiPoly::times_monomial(const Monomial& mono, Coeff c) const {
  MultiPoly r(prime_, arity_, level_);
  const Coeff m = modulus();
  for (const Term& t : terms_) {
    const Coeff v = modarith::mul(t.coeff, c, m);
    if (v != 0) r.terms_.push_back({t.mono * mono, v});
  }
  return r;  // multiplication by a monomial preserves the order
}

MultiPoly MultiPoly::pow(std::uint64_t k) const {
  MultiPoly result = constant(prime_, arity_, level_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::vector<std::string> defaults;
  if (names.empty()) {
    defaults = default_variable_names(arity_);
    names = defaults;
  }
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool wrote = false;
    if (t.coeff != 1 || t.mono.is_one()) {
      os << t.coeff;
      wrote = true;
    }
    for (std::size_t i = 0; i < arity_; ++i) {
      if (t.mono[i] == 0) continue;
      if (wrote) os << '*';
      os << names[i];
      if (t.mono[i] > 1) os << '^' << t.mono[i];
      wrote = true;
    }
  }
  return os.str();
}

std::vector<std::string> default_variable_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

// ---------------------------------------------------------------- free functions

MultiPoly substitute(const MultiPoly& f, std::span<const MultiPoly> images, std::size_t target_arity) {
  if (images.size() != f.arity()) throw RingMismatch("substitute: number of images differs from arity");
  if (images.empty()) {
    MultiPoly r(f.prime(), target_arity, f.level());
    for (const Term& t : f.terms()) r += MultiPoly::constant(f.prime(), target_arity, f.level(), static_cast<long long>(t.coeff));
    return r;
  }
  const MultiPoly& ref = images.front();
  for (const MultiPoly& g : images)
    if (!g.same_ring(ref)) throw RingMismatch("substitute: images live in different rings");
  if (f.prime() != ref.prime() || f.level() != ref.level())
    throw RingMismatch("substitute: coefficient ring of f differs from the images");

  // Cache of powers per variable, filled lazily.
  std::vector<std::map<Exponent, MultiPoly>> powers(f.arity());
  auto power = [&](std::size_t i, Exponent e) -> const MultiPoly& {
    auto it = powers[i].find(e);
    if (it != powers[i].end()) return it->second;
    return powers[i].emplace(e, images[i].pow(e)).first->second;
  };

  MultiPoly result(ref.prime(), ref.arity(), ref.level());
  for (const Term& t : f.terms()) {
    MultiPoly term = MultiPoly::constant(ref.prime(), ref.arity(), ref.level(), static_cast<long long>(t.coeff));
    for (std::size_t i = 0; i < f.arity() && !term.is_zero(); ++i)
      if (t.mono[i] != 0) term *= power(i, t.mono[i]);
    result += term;
  }
  return result;
}

MultiPoly partial_derivative(const MultiPoly& f, std::size_t index) {
  if (index >= f.arity()) throw RingMismatch("partial_derivative: index out of range");
  const Coeff m = f.modulus();
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    if (t.mono[index] == 0) continue;
    const Coeff c = modarith::mul(t.coeff, t.mono[index] % m, m);
    if (c == 0) continue;
    Monomial mono = t.mono;
    --mono[index];
    out.push_back({std::move(mono), c});
  }
  return MultiPoly::from_terms(f.prime(), f.arity(), f.level(), std::move(out));
}

MultiPoly divide_by_p(const MultiPoly& f) {
  if (f.level() != Level::ModP2) throw RingMismatch("divide_by_p expects a polynomial over Z/p^2");
  const Coeff p = f.prime().value();
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    if (t.coeff % p != 0) {
      throw NotDivisible(MultiPoly::monomial(f.prime(), Level::ModP2, t.mono, t.coeff).to_string());
    }
    out.push_back({t.mono, t.coeff / p});
  }
  return MultiPoly::from_terms(f.prime(), f.arity(), Level::ModP, std::move(out));
}

MultiPoly lift_mod_p2(const MultiPoly& f) {
  if (f.level() != Level::ModP) throw RingMismatch("lift_mod_p2 expects a polynomial over F_p");
  std::vector<Term> out(f.terms().begin(), f.terms().end());
  return MultiPoly::from_terms(f.prime(), f.arity(), Level::ModP2, std::move(out));
}

MultiPoly reduce_mod_p(const MultiPoly& f) {
  if (f.level() != Level::ModP2) throw RingMismatch("reduce_mod_p expects a polynomial over Z/p^2");
  std::vector<Term> out(f.terms().begin(), f.terms().end());
  return MultiPoly::from_terms(f.prime(), f.arity(), Level::ModP, std::move(out));
}

MultiPoly times_p(const MultiPoly& f) {
  if (f.level() != Level::ModP) throw RingMismatch("times_p expects a polynomial over F_p");
  return lift_mod_p2(f).scaled(f.prime().value());
}

MultiPoly monomial_trace(const MultiPoly& f) {
  if (f.level() != Level::ModP) throw RingMismatch("monomial_trace expects a polynomial over F_p");
  const Exponent p = static_cast<Exponent>(f.prime().value());
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    Monomial m(f.arity());
    bool survives = true;
    for (std::size_t i = 0; i < f.arity() && survives; ++i) {
      if (t.mono[i] % p != p - 1) survives = false;
      else m[i] = (t.mono[i] - (p - 1)) / p;
    }
    if (survives) out.push_back({std::move(m), t.coeff});
  }
  return MultiPoly::from_terms(f.prime(), f.arity(), Level::ModP, std::move(out));
}

MultiPoly frobenius(const MultiPoly& f) {
  if (f.level() != Level::ModP) return f.pow(f.prime().value());
  std::vector<Term> out;
  out.reserve(f.size());
  for (const Term& t : f.terms()) out.push_back({t.mono.scaled(f.prime().value()), t.coeff});
  return MultiPoly::from_terms(f.prime(), f.arity(), Level::ModP, std::move(out));
}

Coeff evaluate(const MultiPoly& f, std::span<const Coeff> point) {
  if (point.size() != f.arity()) throw RingMismatch("evaluate: point dimension differs from arity");
  const Coeff m = f.modulus();
  Coeff acc = 0;
  for (const Term& t : f.terms()) {
    Coeff v = t.coeff;
    for (std::size_t i = 0; i < f.arity(); ++i) v = modarith::mul(v, modarith::pow(point[i], t.mono[i], m), m);
    acc = modarith::add(acc, v, m);
  }
  return acc;
}

MultiPoly embed(const MultiPoly& f, std::size_t arity, std::size_t offset) {
  if (offset + f.arity() > arity) throw RingMismatch("embed: target arity too small");
  std::vector<Term> out;
  out.reserve(f.size());
  for (const Term& t : f.terms()) {
    Monomial m(arity);
    for (std::size_t i = 0; i < f.arity(); ++i) m[i + offset] = t.mono[i];
    out.push_back({std::move(m), t.coeff});
  }
  return MultiPoly::from_terms(f.prime(), arity, f.level(), std::move(out));
}

MultiPoly drop_variable(const MultiPoly& f, std::size_t index) {
  if (index >= f.arity()) throw RingMismatch("drop_variable: index out of range");
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    if (t.mono[index] != 0) throw Error("drop_variable: variable still occurs");
    std::vector<Exponent> e(t.mono.exponents().begin(), t.mono.exponents().end());
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(index));
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return MultiPoly::from_terms(f.prime(), f.arity() - 1, f.level(), std::move(out));
}

bool divide_exact(const MultiPoly& f, const MultiPoly& g, MultiPoly& quotient) {
  if (f.level() != Level::ModP || !f.same_ring(g)) throw RingMismatch("divide_exact expects polynomials over the same F_p ring");
  if (g.is_zero()) throw Error("division by zero polynomial");
  const Coeff p = f.prime().value();
  const Term& lg = g.leading_term();
  const Coeff inv = modarith::inverse(lg.coeff, p);
  MultiPoly q(f.prime(), f.arity(), Level::ModP);
  MultiPoly r = f;
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    if (!lg.mono.divides(lr.mono)) return false;
    const Monomial m = lr.mono / lg.mono;
    const Coeff c = modarith::mul(lr.coeff, inv, p);
    q += MultiPoly::monomial(f.prime(), Level::ModP, m, c);
    r -= g.times_monomial(m, c);
  }
  quotient = std::move(q);
  return true;
}

MultiPoly determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error("determinant of empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw Error("determinant of non-square matrix");
  if (n == 1) return m[0][0];
  const MultiPoly& ref = m[0][0];
  MultiPoly det(ref.prime(), ref.arity(), ref.level());
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    PolyMatrix minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][col] * determinant(minor);
    if (col % 2 == 0) det += term;
    else det -= term;
  }
  return det;
}

}  // namespace froblift
