#include "froblift/ideal.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "froblift/error.hpp"

namespace froblift {

int TermOrder::compare(const Monomial& a, const Monomial& b) const noexcept {
  if (kind == Kind::DegRevLex || block == 0) return degrevlex_compare(a, b);
  const std::size_t n = a.arity();
  const std::size_t split = n - block;
  std::uint64_t ta = 0, tb = 0;
  for (std::size_t i = split; i < n; ++i) {
    ta += a[i];
    tb += b[i];
  }
  if (ta != tb) return ta < tb ? -1 : 1;
  std::vector<Exponent> ha(a.exponents().begin(), a.exponents().begin() + static_cast<std::ptrdiff_t>(split));
  std::vector<Exponent> hb(b.exponents().begin(), b.exponents().begin() + static_cast<std::ptrdiff_t>(split));
  if (int c = degrevlex_compare(Monomial(std::move(ha)), Monomial(std::move(hb))); c != 0) return c;
  std::vector<Exponent> la(a.exponents().begin() + static_cast<std::ptrdiff_t>(split), a.exponents().end());
  std::vector<Exponent> lb(b.exponents().begin() + static_cast<std::ptrdiff_t>(split), b.exponents().end());
  return degrevlex_compare(Monomial(std::move(la)), Monomial(std::move(lb)));
}

namespace {

// Polynomial over F_p with terms sorted decreasingly in a chosen order.
using GPoly = std::vector<Term>;

GPoly to_gpoly(const MultiPoly& f, const TermOrder& order) {
  GPoly g(f.terms().begin(), f.terms().end());
  if (order.kind != TermOrder::Kind::DegRevLex)
    std::sort(g.begin(), g.end(), [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
  return g;
}

MultiPoly to_multi(const GPoly& g, const Prime& prime, std::size_t arity) {
  return MultiPoly::from_terms(prime, arity, Level::ModP, std::vector<Term>(g.begin(), g.end()));
}

// a - c * m * b, with the leading terms assumed to cancel when `skip_leading`.
GPoly sub_scaled(const GPoly& a, Coeff c, const Monomial& m, const GPoly& b, Coeff p, const TermOrder& order,
                 bool skip_leading) {
  GPoly out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin() + (skip_leading ? 1 : 0);
  auto ib = b.begin() + (skip_leading ? 1 : 0);
  const Coeff negc = modarith::neg(c, p);
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end()) {
      out.push_back(*ia++);
      continue;
    }
    Monomial mb = ib->mono * m;
    const int cmp = ia == a.end() ? -1 : order.compare(ia->mono, mb);
    if (cmp > 0) {
      out.push_back(*ia++);
    } else if (cmp < 0) {
      out.push_back({std::move(mb), modarith::mul(negc, ib->coeff, p)});
      ++ib;
    } else {
      const Coeff v = modarith::add(ia->coeff, modarith::mul(negc, ib->coeff, p), p);
      if (v != 0) out.push_back({std::move(mb), v});
      ++ia;
      ++ib;
    }
  }
  return out;
}

void scale(GPoly& g, Coeff c, Coeff p) {
  for (Term& t : g) t.coeff = modarith::mul(t.coeff, c, p);
}

using SparseVector = std::map<std::size_t, MultiPoly>;

void accumulate(SparseVector& v, std::size_t k, MultiPoly term) {
  auto it = v.find(k);
  if (it == v.end()) v.emplace(k, std::move(term));
  else it->second += term;
}

// Buchberger with the normal selection strategy. When tracking, every basis
// element carries its expression in the input generators, and every processed
// pair contributes a syzygy of the basis elements.
class Engine {
 public:
  Engine(Prime prime, std::size_t arity, TermOrder order, bool track)
      : prime_(std::move(prime)), arity_(arity), order_(order), track_(track), p_(prime_.value()) {}

  void run(std::span<const MultiPoly> gens);

  // Full reduction; quotients are recorded per basis element when requested.
  GPoly reduce(GPoly f, SparseVector* quotients) const;

  std::vector<MultiPoly> reduced_basis() const;

  const std::vector<GPoly>& elements() const { return elems_; }
  const std::vector<std::vector<MultiPoly>>& rows() const { return rows_; }
  std::vector<std::vector<MultiPoly>> generator_syzygies() const;
  std::size_t generator_count() const { return ngens_; }

 private:
  struct Pair {
    std::size_t i, j;
    std::uint64_t degree;
    std::size_t serial;
  };

  void add_element(GPoly g, std::vector<MultiPoly> row);
  MultiPoly zero() const { return MultiPoly(prime_, arity_, Level::ModP); }
  MultiPoly mono(const Monomial& m, Coeff c) const { return MultiPoly::monomial(prime_, Level::ModP, m, c); }

  Prime prime_;
  std::size_t arity_;
  TermOrder order_;
  bool track_;
  Coeff p_;
  std::size_t ngens_ = 0;
  std::size_t serial_ = 0;
  std::vector<GPoly> elems_;
  std::vector<std::vector<MultiPoly>> rows_;
  std::vector<SparseVector> syz_;
  std::vector<std::size_t> zero_generators_;
  std::vector<Pair> pairs_;
};

GPoly Engine::reduce(GPoly f, SparseVector* quotients) const {
  GPoly rem;
  while (!f.empty()) {
    const Term& lt = f.front();
    std::size_t k = 0;
    while (k < elems_.size() && !elems_[k].front().mono.divides(lt.mono)) ++k;
    if (k == elems_.size()) {
      rem.push_back(lt);
      f.erase(f.begin());
      continue;
    }
    // basis elements are monic
    const Monomial m = lt.mono / elems_[k].front().mono;
    const Coeff c = lt.coeff;
    if (quotients) accumulate(*quotients, k, mono(m, c));
    f = sub_scaled(f, c, m, elems_[k], p_, order_, true);
  }
  return rem;
}

void Engine::add_element(GPoly g, std::vector<MultiPoly> row) {
  const Coeff inv = modarith::inverse(g.front().coeff, p_);
  scale(g, inv, p_);
  if (track_)
    for (MultiPoly& q : row) q = q.scaled(inv);
  const std::size_t t = elems_.size();
  elems_.push_back(std::move(g));
  rows_.push_back(std::move(row));
  for (std::size_t k = 0; k < t; ++k) {
    const Monomial l = elems_[k].front().mono.lcm(elems_[t].front().mono);
    pairs_.push_back({k, t, l.degree(), serial_++});
  }
}

void Engine::run(std::span<const MultiPoly> gens) {
  ngens_ = gens.size();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    const MultiPoly g = gens[a].level() == Level::ModP2 ? reduce_mod_p(gens[a]) : gens[a];
    if (g.is_zero()) {
      zero_generators_.push_back(a);
      continue;
    }
    std::vector<MultiPoly> row;
    if (track_) {
      row.assign(ngens_, zero());
      row[a] = MultiPoly::constant(prime_, arity_, Level::ModP, 1);
    }
    add_element(to_gpoly(g, order_), std::move(row));
  }

  while (!pairs_.empty()) {
    auto best = std::min_element(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
      return a.degree != b.degree ? a.degree < b.degree : a.serial < b.serial;
    });
    const Pair pair = *best;
    pairs_.erase(best);
    const GPoly& gi = elems_[pair.i];
    const GPoly& gj = elems_[pair.j];
    const Monomial& li = gi.front().mono;
    const Monomial& lj = gj.front().mono;
    const Monomial l = li.lcm(lj);
    const Monomial mi = l / li;
    const Monomial mj = l / lj;

    if (l == li * lj) {
      // Coprime leading monomials: the S-polynomial reduces to zero and the
      // pair's syzygy is the Koszul relation g_j e_i - g_i e_j.
      if (track_) {
        SparseVector s;
        s.emplace(pair.i, to_multi(gj, prime_, arity_));
        s.emplace(pair.j, -to_multi(gi, prime_, arity_));
        syz_.push_back(std::move(s));
      }
      continue;
    }

    GPoly spoly;
    {
      GPoly left;
      left.reserve(gi.size());
      for (const Term& t : gi) left.push_back({t.mono * mi, t.coeff});
      spoly = sub_scaled(left, 1, mj, gj, p_, order_, true);
    }
    SparseVector quot;
    GPoly h = reduce(std::move(spoly), track_ ? &quot : nullptr);

    if (!track_) {
      if (!h.empty()) add_element(std::move(h), {});
      continue;
    }

    SparseVector s;
    s.emplace(pair.i, mono(mi, 1));
    s.emplace(pair.j, mono(mj, p_ - 1));
    for (auto& [k, q] : quot) accumulate(s, k, -q);

    if (!h.empty()) {
      const Coeff lc = h.front().coeff;
      std::vector<MultiPoly> row(ngens_, zero());
      for (std::size_t a = 0; a < ngens_; ++a) {
        MultiPoly v = rows_[pair.i][a].times_monomial(mi, 1) - rows_[pair.j][a].times_monomial(mj, 1);
        for (const auto& [k, q] : quot) v -= q * rows_[k][a];
        row[a] = std::move(v);
      }
      accumulate(s, elems_.size(), MultiPoly::constant(prime_, arity_, Level::ModP, static_cast<long long>(p_ - lc)));
      add_element(std::move(h), std::move(row));
    }
    syz_.push_back(std::move(s));
  }
}

std::vector<MultiPoly> Engine::reduced_basis() const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < elems_.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& lj = elems_[j].front().mono;
      const Monomial& li = elems_[i].front().mono;
      if (lj.divides(li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) keep.push_back(i);
  }
  Engine minimal(prime_, arity_, order_, false);
  for (std::size_t i : keep) minimal.elems_.push_back(elems_[i]);

  std::vector<GPoly> reduced;
  for (std::size_t idx = 0; idx < minimal.elems_.size(); ++idx) {
    GPoly g = minimal.elems_[idx];
    GPoly tail(g.begin() + 1, g.end());
    Engine others(prime_, arity_, order_, false);
    for (std::size_t j = 0; j < minimal.elems_.size(); ++j)
      if (j != idx) others.elems_.push_back(minimal.elems_[j]);
    GPoly r = others.reduce(std::move(tail), nullptr);
    r.insert(r.begin(), g.front());
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const GPoly& a, const GPoly& b) { return order_.compare(a.front().mono, b.front().mono) < 0; });
  std::vector<MultiPoly> out;
  out.reserve(reduced.size());
  for (const GPoly& g : reduced) out.push_back(to_multi(g, prime_, arity_));
  return out;
}

std::vector<std::vector<MultiPoly>> Engine::generator_syzygies() const {
  std::vector<std::vector<MultiPoly>> out;
  for (std::size_t a : zero_generators_) {
    std::vector<MultiPoly> v(ngens_, zero());
    v[a] = MultiPoly::constant(prime_, arity_, Level::ModP, 1);
    out.push_back(std::move(v));
  }
  for (const SparseVector& s : syz_) {
    std::vector<MultiPoly> v(ngens_, zero());
    for (const auto& [k, q] : s)
      for (std::size_t a = 0; a < ngens_; ++a)
        if (!rows_[k][a].is_zero()) v[a] += q * rows_[k][a];
    if (std::all_of(v.begin(), v.end(), [](const MultiPoly& x) { return x.is_zero(); })) continue;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

MultiPoly reduced_generator(const MultiPoly& g) { return g.level() == Level::ModP2 ? reduce_mod_p(g) : g; }

MultiPoly combine(std::span<const MultiPoly> coeffs, std::span<const MultiPoly> gens) {
  MultiPoly acc(coeffs.front().prime(), coeffs.front().arity(), coeffs.front().level());
  for (std::size_t a = 0; a < gens.size(); ++a)
    if (!coeffs[a].is_zero()) acc += coeffs[a] * gens[a];
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- cache

namespace detail {

struct GroebnerCache {
  std::once_flag once;
  std::unique_ptr<Engine> engine;
  std::vector<MultiPoly> reduced;
  SyzygyBasis syzygies;
};

}  // namespace detail

IdealPresentation::IdealPresentation(Prime prime, std::size_t arity, Level level, std::vector<MultiPoly> generators)
    : prime_(std::move(prime)), arity_(arity), level_(level), cache_(std::make_shared<detail::GroebnerCache>()) {
  for (MultiPoly& g : generators) {
    if (g.prime() != prime_ || g.arity() != arity_ || g.level() != level_)
      throw RingMismatch("ideal generators live in different rings");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

namespace {
const MultiPoly& first_of(const std::vector<MultiPoly>& gens) {
  if (gens.empty()) throw Error("ideal presentation needs at least one generator");
  return gens.front();
}
}  // namespace

IdealPresentation::IdealPresentation(std::vector<MultiPoly> generators)
    : IdealPresentation(first_of(generators).prime(), first_of(generators).arity(), first_of(generators).level(),
                        std::move(generators)) {}

const detail::GroebnerCache& IdealPresentation::cache() const {
  std::call_once(cache_->once, [this] {
    auto engine = std::make_unique<Engine>(prime_, arity_, TermOrder::degrevlex(), true);
    engine->run(gens_);
    std::vector<MultiPoly> reduced_gens;
    for (const MultiPoly& g : gens_) reduced_gens.push_back(reduced_generator(g));

    // Each basis element must equal its recorded combination of generators.
    for (std::size_t k = 0; k < engine->elements().size(); ++k) {
      if (combine(engine->rows()[k], reduced_gens) != to_multi(engine->elements()[k], prime_, arity_))
        throw InternalInconsistency("Groebner basis element does not match its cofactors");
    }
    // Every generator must reduce to zero.
    for (const MultiPoly& g : reduced_gens)
      if (!engine->reduce(to_gpoly(g, TermOrder::degrevlex()), nullptr).empty())
        throw InternalInconsistency("generator does not reduce to zero modulo its Groebner basis");

    SyzygyBasis syz{engine->generator_syzygies()};
    for (const auto& s : syz.vectors)
      if (!combine(s, reduced_gens).is_zero()) throw InternalInconsistency("syzygy verification failed");

    cache_->reduced = engine->reduced_basis();
    cache_->syzygies = std::move(syz);
    cache_->engine = std::move(engine);
  });
  return *cache_;
}

const std::vector<MultiPoly>& IdealPresentation::groebner_basis() const { return cache().reduced; }

MultiPoly IdealPresentation::normal_form(const MultiPoly& f) const {
  if (f.level() != Level::ModP || f.prime() != prime_ || f.arity() != arity_)
    throw RingMismatch("normal_form expects an F_p polynomial in the ideal's variables");
  return froblift::normal_form(f, groebner_basis());
}

std::optional<std::vector<MultiPoly>> IdealPresentation::cofactors(const MultiPoly& f) const {
  if (f.level() != Level::ModP || f.prime() != prime_ || f.arity() != arity_)
    throw RingMismatch("cofactors expects an F_p polynomial in the ideal's variables");
  const Engine& engine = *cache().engine;
  SparseVector quot;
  if (!engine.reduce(to_gpoly(f, TermOrder::degrevlex()), &quot).empty()) return std::nullopt;
  std::vector<MultiPoly> q(gens_.size(), MultiPoly(prime_, arity_, Level::ModP));
  for (const auto& [k, c] : quot)
    for (std::size_t a = 0; a < gens_.size(); ++a)
      if (!engine.rows()[k][a].is_zero()) q[a] += c * engine.rows()[k][a];
  return q;
}

const SyzygyBasis& IdealPresentation::syzygies() const { return cache().syzygies; }

// ---------------------------------------------------------------- operations

std::vector<MultiPoly> buchberger(std::span<const MultiPoly> generators, TermOrder order) {
  if (generators.empty()) return {};
  const MultiPoly& ref = generators.front();
  for (const MultiPoly& g : generators)
    if (!g.same_ring(ref) || g.level() != Level::ModP) throw RingMismatch("buchberger expects F_p polynomials in one ring");
  Engine engine(ref.prime(), ref.arity(), order, false);
  engine.run(generators);
  return engine.reduced_basis();
}

std::vector<MultiPoly> buchberger(const IdealPresentation& ideal) { return ideal.groebner_basis(); }

MultiPoly normal_form(const MultiPoly& f, std::span<const MultiPoly> basis, TermOrder order) {
  if (f.level() != Level::ModP) throw RingMismatch("normal_form expects an F_p polynomial");
  const Coeff p = f.prime().value();
  std::vector<GPoly> elems;
  for (const MultiPoly& b : basis) {
    if (!b.same_ring(f)) throw RingMismatch("normal_form: basis lives in a different ring");
    if (b.is_zero()) continue;
    GPoly g = to_gpoly(b, order);
    scale(g, modarith::inverse(g.front().coeff, p), p);
    elems.push_back(std::move(g));
  }
  GPoly rem = to_gpoly(f, order);
  GPoly out;
  while (!rem.empty()) {
    const Term& lt = rem.front();
    std::size_t k = 0;
    while (k < elems.size() && !elems[k].front().mono.divides(lt.mono)) ++k;
    if (k == elems.size()) {
      out.push_back(lt);
      rem.erase(rem.begin());
      continue;
    }
    const Monomial m = lt.mono / elems[k].front().mono;
    rem = sub_scaled(rem, lt.coeff, m, elems[k], p, order, true);
  }
  return to_multi(out, f.prime(), f.arity());
}

bool ideal_member(const MultiPoly& f, const IdealPresentation& ideal) {
  if (f.level() != Level::ModP) throw RingMismatch("ideal_member expects an F_p polynomial");
  if (f.is_zero()) return true;
  return ideal.normal_form(f).is_zero();
}

IdealPresentation ideal_power(const IdealPresentation& ideal, std::size_t k) {
  if (k == 0) throw Error("ideal_power: exponent must be positive");
  const auto gens = ideal.generators();
  std::vector<MultiPoly> out;
  std::vector<std::size_t> idx(k, 0);
  if (gens.empty()) return IdealPresentation(ideal.prime(), ideal.arity(), ideal.level(), {});
  // Enumerate nondecreasing index tuples, i.e. multisets of generators.
  while (true) {
    MultiPoly prod = gens[idx[0]];
    for (std::size_t t = 1; t < k; ++t) prod *= gens[idx[t]];
    if (!prod.is_zero() && std::find(out.begin(), out.end(), prod) == out.end()) out.push_back(std::move(prod));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == gens.size() - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t t = pos; t < k; ++t) idx[t] = idx[pos - 1];
  }
  return IdealPresentation(ideal.prime(), ideal.arity(), ideal.level(), std::move(out));
}

IdealPresentation frobenius_power(const IdealPresentation& ideal) {
  std::vector<MultiPoly> out;
  for (const MultiPoly& g : ideal.generators()) out.push_back(frobenius(g));
  return IdealPresentation(ideal.prime(), ideal.arity(), ideal.level(), std::move(out));
}

IdealPresentation colon_ideal(const IdealPresentation& ideal, const MultiPoly& g) {
  if (ideal.level() != Level::ModP || g.level() != Level::ModP) throw RingMismatch("colon_ideal works over F_p");
  if (g.is_zero()) throw Error("colon_ideal: divisor must be nonzero");
  const std::size_t n = ideal.arity();
  const Prime& prime = ideal.prime();
  if (ideal.is_zero()) return ideal;

  const MultiPoly t = MultiPoly::variable(prime, n + 1, Level::ModP, n);
  const MultiPoly one = MultiPoly::constant(prime, n + 1, Level::ModP, 1);
  std::vector<MultiPoly> gens;
  for (const MultiPoly& f : ideal.generators()) gens.push_back(t * embed(f, n + 1, 0));
  gens.push_back((one - t) * embed(g, n + 1, 0));

  const std::vector<MultiPoly> basis = buchberger(gens, TermOrder::eliminate_last(1));
  std::vector<MultiPoly> quotients;
  for (const MultiPoly& b : basis) {
    bool has_t = false;
    for (const Term& term : b.terms()) has_t = has_t || term.mono[n] != 0;
    if (has_t) continue;
    const MultiPoly h = drop_variable(b, n);
    MultiPoly q(prime, n, Level::ModP);
    if (!divide_exact(h, g, q)) throw InternalInconsistency("intersection element not divisible by g");
    quotients.push_back(std::move(q));
  }
  return IdealPresentation(prime, n, Level::ModP, buchberger(quotients));
}

SyzygyBasis syzygy_basis(const IdealPresentation& ideal) {
  if (ideal.level() != Level::ModP) throw RingMismatch("syzygy_basis works over F_p");
  return ideal.syzygies();
}

bool member_mod_p2(const MultiPoly& f, const IdealPresentation& ideal) {
  if (f.level() != Level::ModP2 || ideal.level() != Level::ModP2 || f.prime() != ideal.prime() ||
      f.arity() != ideal.arity())
    throw RingMismatch("member_mod_p2 expects Z/p^2 data in one ring");
  if (f.is_zero()) return true;
  const auto gens = ideal.generators();
  const std::optional<std::vector<MultiPoly>> q0 = ideal.cofactors(reduce_mod_p(f));
  if (!q0) return false;

  MultiPoly residual_lift = f;
  for (std::size_t a = 0; a < gens.size(); ++a)
    if (!(*q0)[a].is_zero()) residual_lift -= lift_mod_p2((*q0)[a]) * gens[a];
  const MultiPoly residual = divide_by_p(residual_lift);
  if (residual.is_zero()) return true;

  std::vector<MultiPoly> extended;
  for (const MultiPoly& g : gens) extended.push_back(reduce_mod_p(g));
  for (const auto& s : ideal.syzygies().vectors) {
    MultiPoly acc(f.prime(), f.arity(), Level::ModP2);
    for (std::size_t a = 0; a < gens.size(); ++a)
      if (!s[a].is_zero()) acc += lift_mod_p2(s[a]) * gens[a];
    extended.push_back(divide_by_p(acc));
  }
  const IdealPresentation corrected(f.prime(), f.arity(), Level::ModP, std::move(extended));
  return ideal_member(residual, corrected);
}

}  // namespace froblift
