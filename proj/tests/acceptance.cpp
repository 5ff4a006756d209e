// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "froblift/error.hpp"
#include "froblift/fano.hpp"
#include "froblift/lifting.hpp"
#include "froblift/parse.hpp"
#include "froblift/splitting.hpp"
#include "froblift/witt.hpp"
#include "support.hpp"

namespace {

using namespace froblift;
using testing::boundary_monomial;
using testing::homogeneous_member_oracle;
using testing::random_lifting;
using testing::random_log_lifting;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && secs >= time_limit) {
    out.ok = false;
    out.detail += " (over the " + std::to_string(time_limit) + " s budget)";
  }
  if (!out.ok) ++failures;
  std::printf("criterion %2d %s  %-28s %8.3f s  %s\n", id, out.ok ? "PASS" : "FAIL", name, secs, out.detail.c_str());
  std::fflush(stdout);
}

Outcome witt_oracle() {
  std::size_t pairs = 0;
  for (Coeff p : {2, 3, 5}) {
    const Prime prime(p);
    const Coeff p2 = p * p;
    for (Coeff a0 = 0; a0 < p; ++a0)
      for (Coeff a1 = 0; a1 < p; ++a1)
        for (Coeff b0 = 0; b0 < p; ++b0)
          for (Coeff b1 = 0; b1 < p; ++b1) {
            const WittScalar a(prime, a0, a1), b(prime, b0, b1);
            const Coeff ga = testing::ghost_oracle(p, a0, a1), gb = testing::ghost_oracle(p, b0, b1);
            if (ghost_map(witt_add(a, b)) != (ga + gb) % p2 || ghost_map(witt_mul(a, b)) != ga * gb % p2)
              return {false, "mismatch at p=" + std::to_string(p)};
            ++pairs;
          }
  }
  return {true, std::to_string(pairs) + " pairs"};
}

Outcome toric_determinant() {
  for (Coeff p : {2, 3, 5, 7})
    for (std::size_t n = 1; n <= 3; ++n)
      if (xi_det(ChartLifting::standard_toric(Prime(p), n)).det != boundary_monomial(Prime(p), n, n))
        return {false, "p=" + std::to_string(p) + " n=" + std::to_string(n)};
  return {true, "12 charts"};
}

Outcome splitting_from_lifting() {
  std::mt19937_64 rng(1003);
  std::size_t probes = 0;
  for (Coeff pv : {2, 3}) {
    const Prime p(pv);
    for (int k = 0; k < 50; ++k) {
      const auto l = random_lifting(p, 2, rng);
      const TraceSplitting s = associated_splitting(l);
      if (!is_unital_splitting(s)) return {false, "non-unital splitting"};
      for (int probe = 0; probe < 100; ++probe) {
        const MultiPoly f = random_poly(p, 2, Level::ModP, rng), g = random_poly(p, 2, Level::ModP, rng, 3 * pv, 5);
        if (s(frobenius(f) * g) != f * s(g)) return {false, "semilinearity fails"};
        ++probes;
      }
    }
  }
  return {true, std::to_string(probes) + " probes"};
}

// Liftings on A^2 whose deltas are pushed into (x, y)^p on demand.
ChartLifting blowup_sample(const Prime& p, int mode, std::mt19937_64& rng) {
  const Coeff pv = p.value();
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < 2; ++i) {
    MultiPoly d = random_poly(p, 2, Level::ModP, rng, 3, 3);
    const bool deep = mode == 0 || (mode == 1 && i == 0);
    if (deep) {
      const Exponent a = static_cast<Exponent>(rng() % (pv + 1));
      d = d.times_monomial(Monomial{a, static_cast<Exponent>(pv - a)}, 1);
    }
    Monomial m(2);
    m[i] = static_cast<Exponent>(pv);
    images.push_back(MultiPoly::monomial(p, Level::ModP2, m, 1) + times_p(d));
  }
  return ChartLifting(p, std::move(images));
}

Outcome blowup_equivalence() {
  std::mt19937_64 rng(1009);
  const std::vector<std::size_t> center{0, 1};
  int samples = 0, extend = 0;
  for (Coeff pv : {2, 3}) {
    const Prime p(pv);
    std::vector<MultiPoly> ip, i2p;
    for (Exponent a = 0; a <= pv; ++a) ip.push_back(MultiPoly::monomial(p, Level::ModP, Monomial{a, Exponent(pv - a)}, 1));
    for (Exponent a = 0; a <= 2 * pv; ++a)
      i2p.push_back(MultiPoly::monomial(p, Level::ModP, Monomial{a, Exponent(2 * pv - a)}, 1));
    for (int k = 0; k < 40; ++k) {
      const auto l = blowup_sample(p, k % 3, rng);
      BlowupCertificate cert;
      try {
        cert = blowup_extends(l, center);
      } catch (const InternalInconsistency& e) {
        return {false, std::string("criteria disagree: ") + e.what()};
      }
      if (cert.pairwise_test != cert.direct_test) return {false, "criteria disagree"};
      const MultiPoly x = MultiPoly::variable(p, 2, Level::ModP, 0), y = MultiPoly::variable(p, 2, Level::ModP, 1);
      const MultiPoly f0 = l.deltas()[0], f1 = l.deltas()[1];
      const bool direct = homogeneous_member_oracle(f0, ip) && homogeneous_member_oracle(f1, ip);
      const bool pairwise = homogeneous_member_oracle(x.pow(pv) * f1 - y.pow(pv) * f0, i2p);
      if (direct != cert.direct_test || pairwise != cert.pairwise_test) return {false, "oracle disagrees"};
      ++samples;
      extend += cert.extends;
    }
  }
  if (extend == 0 || extend == samples) return {false, "sample is one-sided"};
  return {true, std::to_string(samples) + " liftings, " + std::to_string(extend) + " extend"};
}

Outcome recover_frobenius() {
  std::mt19937_64 rng(1013);
  std::size_t checks = 0;
  for (Coeff pv : {2, 3, 5}) {
    const Prime p(pv);
    const std::vector<ChartLifting> lifts{ChartLifting::standard_toric(p, 2), random_lifting(p, 2, rng),
                                          random_log_lifting(p, 2, 1, rng)};
    for (const auto& l : lifts)
      for (int k = 0; k < 100; ++k) {
        const MultiPoly f = random_poly(p, 2, Level::ModP2, rng);
        const RoundtripResult r = nu_theta_roundtrip(l, f);
        if (!r.equal || r.via_witt != substitute(f, l.images())) return {false, "mismatch"};
        ++checks;
      }
  }
  return {true, std::to_string(checks) + " inputs"};
}

Outcome psi_functoriality() {
  std::mt19937_64 rng(1019);
  int maps = 0;
  for (Coeff pv : {2, 3}) {
    const Prime p(pv);
    for (int k = 0; k < 50; ++k) {
      const std::size_t m = 1 + k % 3, n = 1 + (k / 3) % 3;
      const auto fz = ChartLifting::standard_toric(p, n);
      const auto fy = ChartLifting::standard_toric(p, m);
      std::vector<MultiPoly> phi;
      for (std::size_t i = 0; i < m; ++i)
        phi.push_back(MultiPoly::monomial(p, Level::ModP, random_monomial(n, 4, rng), 1 + rng() % (pv - 1)));
      const auto psi = base_change_psi(fy, phi);
      for (std::size_t i = 0; i < m; ++i)
        if (substitute(psi[i], fz.images()) != substitute(fy.images()[i], psi)) return {false, "square fails"};
      ++maps;
    }
  }
  return {true, std::to_string(maps) + " monomial maps"};
}

Outcome canonical_lift() {
  std::mt19937_64 rng(1021);
  for (Coeff pv : {2, 3})
    for (std::size_t n = 1; n <= 2; ++n) {
      const Prime p(pv);
      const CanonicalLiftRing ring(associated_splitting(ChartLifting::standard_toric(p, n)));
      for (int k = 0; k < 200; ++k) {
        const WittPoly w(random_poly(p, n, Level::ModP, rng, 2 * pv, 4), random_poly(p, n, Level::ModP, rng, 2 * pv, 4));
        const auto z = ring.normal_form(w);
        if (ring.normal_form(z.value()) != z) return {false, "normal form not idempotent"};
      }
      if (!ring.flatness_check(2 * pv)) return {false, "flatness fails"};
      const auto report = theorem_iso_check(ChartLifting::standard_toric(p, n));
      if (!report.ok()) return {false, report.failure};
    }
  return {true, "4 charts"};
}

Outcome log_identity() {
  std::mt19937_64 rng(1031);
  int checks = 0;
  for (Coeff pv : {2, 3}) {
    const Prime p(pv);
    for (int k = 0; k < 30; ++k) {
      const std::size_t n = 1 + k % 3, r = 1 + rng() % n;
      const auto l = random_log_lifting(p, n, r, rng);
      if (xi_det(l).det != log_xi_det(l, r).det * boundary_monomial(p, n, r)) return {false, "identity fails"};
      ++checks;
    }
  }
  return {true, std::to_string(checks) + " liftings"};
}

Outcome product_identity() {
  std::mt19937_64 rng(1033);
  for (int k = 0; k < 30; ++k) {
    const Prime p(k % 2 ? 3 : 2);
    const auto a = random_lifting(p, 1 + k % 2, rng), b = random_lifting(p, 1 + (k / 2) % 2, rng);
    const MultiPoly da = embed(xi_det(a).det, a.arity() + b.arity(), 0);
    const MultiPoly db = embed(xi_det(b).det, a.arity() + b.arity(), a.arity());
    if (xi_det(product_lifting(a, b)).det != da * db) return {false, "identity fails"};
  }
  return {true, "30 pairs"};
}

Outcome p1_obstruction() {
  for (Coeff p : {3, 5, 7, 11, 13})
    if (p1_invariant_scan(Prime(p)) != 0) return {false, "nonzero at p=" + std::to_string(p)};
  return {true, "p = 3..13 all zero"};
}

Outcome fedder_suite() {
  const std::vector<std::string> xy{"x", "y"}, xyz{"x", "y", "z"};
  for (Coeff p : {2, 3, 5, 7}) {
    const Prime prime(p);
    if (!fedder_is_fsplit(parse_poly("x*y", xy, prime, Level::ModP))) return {false, "xy"};
    if (!fedder_is_fsplit(parse_poly("x", xy, prime, Level::ModP))) return {false, "x"};
    if (!fedder_is_fsplit(parse_poly("x + y + z", xyz, prime, Level::ModP))) return {false, "hyperplane"};
  }
  if (fedder_is_fsplit(parse_poly("y^2 - x^3", xy, Prime(2), Level::ModP))) return {false, "cusp at p=2"};
  return {true, "4 primes"};
}

Outcome fano_numerology() {
  using namespace froblift::fano;
  const auto rec = [](long long deg, long long rho, long long b3) {
    FanoInvariantRecord r;
    r.degree = deg;
    r.rho = rho;
    r.b3 = b3;
    return r;
  };
  if (chi_tangent(rec(64, 1, 0)) != 15 || chi_tangent(rec(54, 1, 0)) != 10 || chi_tangent(rec(54, 2, 0)) != 11 ||
      chi_tangent(rec(4, 1, 60)) != -45)
    return {false, "chi(T) reference values"};
  ChernInput o;
  o.rk = 1;
  o.c1c2_T = 24;
  if (hrr_chi(o) != 1) return {false, "chi(O) != 1"};
  for (std::uint64_t m = 1; m <= 20; ++m)
    for (std::uint64_t M = 1; M <= 20; ++M) {
      const auto b = boundedness_bounds({m, M});
      if (b.N != 4 * M * m * m * m || b.strict != (m >= 2) || b.equality_edge != (m == 1))
        return {false, "boundedness chain"};
    }
  return {true, "15, 10, 11, -45; chi(O) = 1; chain strict for m >= 2"};
}

Outcome roundtrips() {
  std::mt19937_64 rng(1039);
  for (Coeff pv : {2, 3}) {
    const Prime p(pv);
    for (int k = 0; k < 100; ++k) {
      const MultiPoly u = random_poly(p, 2, Level::ModP, rng, 4 * pv, 6);
      if (trace_form_from_map(TraceSplitting(u), p, 2) != u) return {false, "trace form"};
    }
  }
  const std::vector<std::string> names{"x", "y", "z"};
  for (int k = 0; k < 200; ++k) {
    const Prime p(k % 2 ? 3 : 5);
    const Level level = k % 3 ? Level::ModP : Level::ModP2;
    const MultiPoly f = random_poly(p, 3, level, rng, 6, 6);
    const std::string text = f.to_string(names);
    const MultiPoly g = parse_poly(text, names, p, level);
    if (g != f || g.to_string(names) != text) return {false, "parser: " + text};
  }
  return {true, "200 trace forms, 200 parses"};
}

}  // namespace

int main() {
  run(1, "witt ghost oracle", 1.0, witt_oracle);
  run(2, "toric determinant", 5.0, toric_determinant);
  run(3, "splitting from lifting", 0, splitting_from_lifting);
  run(4, "blow-up criterion", 60.0, blowup_equivalence);
  run(5, "recover Frobenius", 0, recover_frobenius);
  run(6, "psi functoriality", 0, psi_functoriality);
  run(7, "canonical lift", 0, canonical_lift);
  run(8, "log identity", 0, log_identity);
  run(9, "product identity", 0, product_identity);
  run(10, "P1 obstruction", 1.0, p1_obstruction);
  run(11, "Fedder suite", 0, fedder_suite);
  run(12, "Fano numerology", 0, fano_numerology);
  run(13, "round trips", 0, roundtrips);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
