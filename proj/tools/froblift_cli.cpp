// froblift: command-line front end for the chart-level Frobenius lifting toolkit.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "froblift/error.hpp"
#include "froblift/fano.hpp"
#include "froblift/ideal.hpp"
#include "froblift/io.hpp"
#include "froblift/lifting.hpp"
#include "froblift/parse.hpp"
#include "froblift/random.hpp"
#include "froblift/splitting.hpp"
#include "froblift/witt.hpp"

namespace {

using froblift::Coeff;
using froblift::Level;
using froblift::MultiPoly;
using froblift::Prime;
using Json = nlohmann::ordered_json;

constexpr const char* kDefaultScanPrimes = "3,5,7,11,13";
constexpr std::uint64_t kDefaultSeed = 20240601;

enum ExitCode { kOk = 0, kNegative = 1, kPrecondition = 2 };

struct Common {
  std::string primes;
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
};

struct Report {
  Json result = Json::object();
  std::vector<std::string> human;
  int exit_code = kOk;
};

// ---------------------------------------------------------------- helpers

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw froblift::Error("empty entry in list '" + s + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::uint64_t parse_unsigned(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!s.empty() && s.front() == '-') throw std::invalid_argument(s);
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw froblift::Error("'" + s + "' is not a nonnegative integer");
  }
  if (used != s.size()) throw froblift::Error("'" + s + "' is not a nonnegative integer");
  return v;
}

std::vector<Prime> parse_primes(const std::string& s) {
  std::vector<Prime> out;
  for (const std::string& item : split_list(s)) out.emplace_back(parse_unsigned(item));
  return out;
}

Prime single_prime(const Common& c) {
  if (c.primes.empty()) throw froblift::Error("--p is required");
  const auto primes = parse_primes(c.primes);
  if (primes.size() != 1) throw froblift::Error("this command takes a single prime");
  return primes.front();
}

void check_prime_flag(const Common& c, const Prime& file_prime) {
  if (c.primes.empty()) return;
  if (single_prime(c) != file_prime)
    throw froblift::Error("--p " + c.primes + " disagrees with p = " + std::to_string(file_prime.value()) +
                          " in the input file");
}

std::string poly_text(const MultiPoly& f, const std::vector<std::string>& vars) { return f.to_string(vars); }

Json poly_list(std::span<const MultiPoly> polys, const std::vector<std::string>& vars) {
  Json out = Json::array();
  for (const MultiPoly& f : polys) out.push_back(poly_text(f, vars));
  return out;
}

Json matrix_json(const froblift::PolyMatrix& m, const std::vector<std::string>& vars) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(poly_list(row, vars));
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::vector<std::string> poly_strings(std::span<const MultiPoly> polys, const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const MultiPoly& f : polys) out.push_back(poly_text(f, vars));
  return out;
}

std::vector<MultiPoly> parse_polys(const std::vector<std::string>& texts, const std::vector<std::string>& vars,
                                   const Prime& prime, Level level) {
  std::vector<MultiPoly> out;
  for (const std::string& t : texts) out.push_back(froblift::parse_poly(t, vars, prime, level));
  return out;
}

MultiPoly monomial_product_of_powers(const Prime& prime, std::size_t arity, std::size_t count, Level level) {
  froblift::Monomial m(arity);
  for (std::size_t i = 0; i < count; ++i) m[i] = static_cast<froblift::Exponent>(prime.value() - 1);
  return MultiPoly::monomial(prime, level, m, 1);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results land at their own index.
template <typename T>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::size_t next = 0;
  std::mutex mu;
  std::exception_ptr failure;
  const auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= n || failure) return;
        i = next++;
      }
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// ---------------------------------------------------------------- wittcore

struct WittArgs {
  std::string a, b;
  bool exhaustive = false;
};

froblift::WittScalar parse_witt(const Prime& prime, const std::string& s) {
  const auto parts = split_list(s);
  if (parts.size() != 2) throw froblift::Error("Witt scalar must be given as a0,a1");
  return froblift::WittScalar(prime, parse_unsigned(parts[0]), parse_unsigned(parts[1]));
}

Json witt_json(const froblift::WittScalar& w) { return Json::array({w.a0(), w.a1()}); }

Report cmd_witt(const Common& c, const WittArgs& args) {
  const Prime prime = single_prime(c);
  Report r;
  if (!args.a.empty() || !args.b.empty()) {
    if (args.a.empty() || args.b.empty()) throw froblift::Error("--a and --b must be given together");
    const auto a = parse_witt(prime, args.a);
    const auto b = parse_witt(prime, args.b);
    const auto sum = froblift::witt_add(a, b);
    const auto prod = froblift::witt_mul(a, b);
    const Coeff p2 = prime.square();
    const bool consistent = froblift::ghost_map(sum) == (froblift::ghost_map(a) + froblift::ghost_map(b)) % p2 &&
                            froblift::ghost_map(prod) == froblift::modarith::mul(froblift::ghost_map(a),
                                                                                  froblift::ghost_map(b), p2);
    r.result["a"] = witt_json(a);
    r.result["b"] = witt_json(b);
    r.result["sum"] = witt_json(sum);
    r.result["product"] = witt_json(prod);
    r.result["frobenius_a"] = witt_json(froblift::witt_frobenius(a));
    r.result["ghost"] = {{"a", froblift::ghost_map(a)},
                         {"b", froblift::ghost_map(b)},
                         {"sum", froblift::ghost_map(sum)},
                         {"product", froblift::ghost_map(prod)}};
    r.result["ghost_consistent"] = consistent;
    const auto show = [](const froblift::WittScalar& w) {
      return "(" + std::to_string(w.a0()) + "," + std::to_string(w.a1()) + ")";
    };
    r.human.push_back("sum: " + show(sum));
    r.human.push_back("product: " + show(prod));
    r.human.push_back(std::string("ghost map consistent: ") + (consistent ? "yes" : "no"));
    if (!consistent) r.exit_code = kNegative;
  }
  if (args.exhaustive) {
    const Coeff p = prime.value();
    const Coeff p2 = prime.square();
    std::uint64_t failures = 0;
    for (Coeff a0 = 0; a0 < p; ++a0)
      for (Coeff a1 = 0; a1 < p; ++a1)
        for (Coeff b0 = 0; b0 < p; ++b0)
          for (Coeff b1 = 0; b1 < p; ++b1) {
            const froblift::WittScalar a(prime, a0, a1), b(prime, b0, b1);
            const Coeff ga = froblift::ghost_map(a), gb = froblift::ghost_map(b);
            if (froblift::ghost_map(froblift::witt_add(a, b)) != (ga + gb) % p2 ||
                froblift::ghost_map(froblift::witt_mul(a, b)) != froblift::modarith::mul(ga, gb, p2))
              ++failures;
          }
    r.result["exhaustive"] = {{"pairs", p * p * p * p}, {"failures", failures}};
    r.human.push_back("exhaustive ghost check: " + std::to_string(p * p * p * p) + " pairs, " +
                      std::to_string(failures) + " failures");
    if (failures) r.exit_code = kNegative;
  }
  if (args.a.empty() && !args.exhaustive) throw froblift::Error("give --a/--b or --exhaustive");
  return r;
}

// ---------------------------------------------------------------- liftlab

froblift::io::ChartFile load_chart(const Common& c, const std::string& path) {
  if (path.empty()) throw froblift::Error("--chart is required");
  auto chart = froblift::io::load_chart(path);
  check_prime_flag(c, chart.lifting.prime());
  return chart;
}

Report cmd_lift_validate(const Common& c, const std::string& path) {
  Report r;
  try {
    const auto chart = load_chart(c, path);
    r.result["valid"] = true;
    r.result["vars"] = chart.vars;
    r.result["images"] = poly_list(chart.lifting.images(), chart.vars);
    r.result["deltas"] = poly_list(chart.lifting.deltas(), chart.vars);
    r.human.push_back("valid lifting");
    const auto deltas = poly_strings(chart.lifting.deltas(), chart.vars);
    for (std::size_t i = 0; i < deltas.size(); ++i)
      r.human.push_back("delta(" + chart.vars[i] + ") = " + deltas[i]);
  } catch (const froblift::NotALifting& e) {
    r.result["valid"] = false;
    r.result["failing_index"] = e.index();
    r.result["message"] = e.what();
    r.human.push_back(std::string("not a lifting: ") + e.what());
    r.exit_code = kNegative;
  }
  return r;
}

Report cmd_delta(const Common& c, const std::string& path, const std::string& f_text) {
  const auto chart = load_chart(c, path);
  const MultiPoly f = froblift::parse_poly(f_text, chart.vars, chart.lifting.prime(), Level::ModP2);
  const MultiPoly d = froblift::delta(chart.lifting, f);
  Report r;
  r.result["f"] = poly_text(f, chart.vars);
  r.result["delta"] = poly_text(d, chart.vars);
  r.human.push_back(poly_text(d, chart.vars));
  return r;
}

Report cmd_xi_det(const Common& c, const std::string& path) {
  const auto chart = load_chart(c, path);
  const auto xi = froblift::xi_det(chart.lifting);
  Report r;
  r.result["matrix"] = matrix_json(xi.entries, chart.vars);
  r.result["det"] = poly_text(xi.det, chart.vars);
  r.human.push_back(poly_text(xi.det, chart.vars));
  return r;
}

Report cmd_log_xi_det(const Common& c, const std::string& path, std::optional<std::size_t> rank_flag) {
  const auto chart = load_chart(c, path);
  const std::size_t rank = rank_flag ? *rank_flag : chart.log_rank.value_or(0);
  const auto log_xi = froblift::log_xi_det(chart.lifting, rank);
  const auto xi = froblift::xi_det(chart.lifting);
  const MultiPoly boundary =
      monomial_product_of_powers(chart.lifting.prime(), chart.lifting.arity(), rank, Level::ModP);
  const bool identity = xi.det == log_xi.det * boundary;
  Report r;
  r.result["log_rank"] = rank;
  r.result["matrix"] = matrix_json(log_xi.entries, chart.vars);
  r.result["det_log"] = poly_text(log_xi.det, chart.vars);
  r.result["det"] = poly_text(xi.det, chart.vars);
  r.result["units"] = poly_list(log_xi.units, chart.vars);
  r.result["v"] = poly_list(log_xi.v, chart.vars);
  r.result["identity_holds"] = identity;
  r.human.push_back(poly_text(log_xi.det, chart.vars));
  if (!identity) {
    r.human.push_back("det(xi) != det(xi_log) * boundary monomial");
    r.exit_code = kNegative;
  }
  return r;
}

Report cmd_split_from_lift(const Common& c, const std::string& path) {
  const auto chart = load_chart(c, path);
  const auto sigma = froblift::associated_splitting(chart.lifting);
  Report r;
  r.result["u"] = poly_text(sigma.key(), chart.vars);
  r.result["unital"] = froblift::is_unital_splitting(sigma);
  r.human.push_back("u = " + poly_text(sigma.key(), chart.vars));
  return r;
}

Report cmd_compat(const Common& c, const std::string& path, const std::vector<std::string>& gens) {
  const auto chart = load_chart(c, path);
  const Prime& prime = chart.lifting.prime();
  const froblift::IdealPresentation ideal(prime, chart.lifting.arity(), Level::ModP2,
                                          parse_polys(gens, chart.vars, prime, Level::ModP2));
  const bool ok = froblift::is_compatible_with_ideal(chart.lifting, ideal);
  Report r;
  r.result["generators"] = poly_list(ideal.generators(), chart.vars);
  r.result["compatible"] = ok;
  r.human.push_back(ok ? "compatible" : "not compatible");
  if (!ok) r.exit_code = kNegative;
  return r;
}

Report cmd_blowup(const Common& c, const std::string& path, const std::string& center_flag) {
  const auto chart = load_chart(c, path);
  std::vector<std::size_t> center;
  if (!center_flag.empty()) {
    for (const std::string& name : split_list(center_flag)) center.push_back(froblift::io::variable_index(chart.vars, name));
  } else if (chart.center) {
    center = *chart.center;
  } else {
    throw froblift::Error("no blow-up center: pass --center or set \"center\" in the chart file");
  }
  const auto cert = froblift::blowup_extends(chart.lifting, center);
  Report r;
  Json names = Json::array();
  for (std::size_t i : cert.center) names.push_back(chart.vars[i]);
  Json pairwise = Json::array();
  for (const auto& pc : cert.pairwise)
    pairwise.push_back({{"i", chart.vars[pc.i]}, {"j", chart.vars[pc.j]}, {"member", pc.member}});
  Json direct = Json::array();
  for (bool b : cert.direct) direct.push_back(b);
  r.result["center"] = names;
  r.result["f"] = poly_list(cert.f, chart.vars);
  r.result["pairwise"] = pairwise;
  r.result["direct"] = direct;
  r.result["pairwise_test"] = cert.pairwise_test;
  r.result["direct_test"] = cert.direct_test;
  r.result["extends"] = cert.extends;
  r.human.push_back(cert.extends ? "extends to the blow-up" : "does not extend to the blow-up");
  if (!cert.extends) r.exit_code = kNegative;
  return r;
}

Report cmd_product(const Common& c, const std::string& path1, const std::string& path2) {
  const auto a = load_chart(c, path1);
  if (path2.empty()) throw froblift::Error("--chart2 is required");
  const auto b = load_chart(c, path2);
  const auto prod = froblift::product_lifting(a.lifting, b.lifting);
  std::vector<std::string> vars = a.vars;
  vars.insert(vars.end(), b.vars.begin(), b.vars.end());
  try {
    froblift::validate_variable_names(vars);
  } catch (const froblift::Error&) {
    vars = froblift::default_variable_names(prod.arity());
  }
  const MultiPoly det = froblift::xi_det(prod).det;
  const MultiPoly d1 = froblift::embed(froblift::xi_det(a.lifting).det, prod.arity(), 0);
  const MultiPoly d2 = froblift::embed(froblift::xi_det(b.lifting).det, prod.arity(), a.lifting.arity());
  const bool multiplicative = det == d1 * d2;
  Report r;
  r.result["vars"] = vars;
  r.result["images"] = poly_list(prod.images(), vars);
  r.result["det"] = poly_text(det, vars);
  r.result["det_factors"] = Json::array({poly_text(d1, vars), poly_text(d2, vars)});
  r.result["multiplicative"] = multiplicative;
  r.human.push_back("images: " + join(poly_strings(prod.images(), vars), ", "));
  r.human.push_back("det xi = " + poly_text(det, vars));
  if (!multiplicative) r.exit_code = kNegative;
  return r;
}

Report cmd_restrict(const Common& c, const std::string& path, const std::string& var) {
  const auto chart = load_chart(c, path);
  if (var.empty()) throw froblift::Error("--var is required");
  const std::size_t idx = froblift::io::variable_index(chart.vars, var);
  const auto restricted = froblift::restrict_to_coordinate_divisor(chart.lifting, idx);
  std::vector<std::string> vars = chart.vars;
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(idx));
  Report r;
  r.result["vars"] = vars;
  r.result["images"] = poly_list(restricted.images(), vars);
  r.human.push_back("images: " + join(poly_strings(restricted.images(), vars), ", "));
  return r;
}

struct PsiArgs {
  std::string chart, source_chart, source_vars;
  std::vector<std::string> phi;
};

Report cmd_psi(const Common& c, const PsiArgs& args) {
  const auto target = load_chart(c, args.chart);
  const Prime& prime = target.lifting.prime();
  std::vector<std::string> source_vars;
  std::optional<froblift::io::ChartFile> source;
  if (!args.source_chart.empty()) {
    source = load_chart(c, args.source_chart);
    if (source->lifting.prime() != prime) throw froblift::RingMismatch("source and target charts use different primes");
    source_vars = source->vars;
  }
  if (!args.source_vars.empty()) {
    source_vars = split_list(args.source_vars);
    if (source && source_vars != source->vars) throw froblift::Error("--source-vars disagrees with the source chart");
  }
  if (source_vars.empty()) throw froblift::Error("--source-vars or --source-chart is required");
  const auto phi = parse_polys(args.phi, source_vars, prime, Level::ModP);
  const auto psi = froblift::base_change_psi(target.lifting, phi);

  bool lifts = true;
  for (std::size_t i = 0; i < psi.size(); ++i)
    lifts = lifts && froblift::reduce_mod_p(psi[i]) == froblift::frobenius(phi[i]);
  Report r;
  r.result["images"] = poly_list(psi, source_vars);
  r.result["lifts_frobenius"] = lifts;
  if (source) {
    bool functorial = true;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const MultiPoly lhs = froblift::substitute(psi[i], source->lifting.images());
      const MultiPoly rhs = froblift::substitute(target.lifting.images()[i], psi);
      functorial = functorial && lhs == rhs;
    }
    r.result["functorial"] = functorial;
    r.human.push_back(std::string("functorial: ") + (functorial ? "yes" : "no"));
    if (!functorial) r.exit_code = kNegative;
  } else {
    r.result["functorial"] = nullptr;
  }
  r.human.insert(r.human.begin(), "psi: " + join(poly_strings(psi, source_vars), ", "));
  return r;
}

Report cmd_point_lift(const Common& c, const std::string& path, const std::string& point_text) {
  const auto chart = load_chart(c, path);
  std::vector<Coeff> point;
  for (const std::string& s : split_list(point_text)) point.push_back(parse_unsigned(s));
  const auto lifted = froblift::canonical_point_lift(chart.lifting, point);
  Report r;
  r.result["point"] = point;
  r.result["lift"] = lifted;
  std::vector<std::string> parts;
  for (Coeff v : lifted) parts.push_back(std::to_string(v));
  r.human.push_back("(" + join(parts, ", ") + ") mod " + std::to_string(chart.lifting.prime().square()));
  return r;
}

Report cmd_roundtrip(const Common& c, const std::string& path, const std::string& f_text, std::size_t samples) {
  const auto chart = load_chart(c, path);
  const Prime& prime = chart.lifting.prime();
  Report r;
  if (!f_text.empty()) {
    const MultiPoly f = froblift::parse_poly(f_text, chart.vars, prime, Level::ModP2);
    const auto rt = froblift::nu_theta_roundtrip(chart.lifting, f);
    r.result["checked"] = 1;
    r.result["via_witt"] = poly_text(rt.via_witt, chart.vars);
    r.result["direct"] = poly_text(rt.direct, chart.vars);
    r.result["equal"] = rt.equal;
    r.human.push_back(poly_text(rt.direct, chart.vars));
    return r;
  }
  std::mt19937_64 rng(c.seed);
  for (std::size_t k = 0; k < samples; ++k)
    froblift::nu_theta_roundtrip(chart.lifting, froblift::random_poly(prime, chart.lifting.arity(), Level::ModP2, rng));
  r.result["checked"] = samples;
  r.result["seed"] = c.seed;
  r.result["equal"] = true;
  r.human.push_back("roundtrip holds on " + std::to_string(samples) + " random inputs");
  return r;
}

// ---------------------------------------------------------------- splitlab

froblift::io::SplittingFile load_splitting(const Common& c, const std::string& path) {
  if (path.empty()) throw froblift::Error("--splitting is required");
  auto s = froblift::io::load_splitting(path);
  check_prime_flag(c, s.splitting.prime());
  return s;
}

Report cmd_fedder(const Common& c, const std::string& vars_text, const std::string& f_text) {
  const Prime prime = single_prime(c);
  if (vars_text.empty()) throw froblift::Error("--vars is required");
  const std::vector<std::string> vars = split_list(vars_text);
  const MultiPoly f = froblift::parse_poly(f_text, vars, prime, Level::ModP);
  const bool split = froblift::fedder_is_fsplit(f);
  Report r;
  r.result["f"] = poly_text(f, vars);
  r.result["fsplit"] = split;
  r.human.push_back(split ? "F-split" : "not F-split");
  if (!split) r.exit_code = kNegative;
  return r;
}

Report cmd_compat_split(const Common& c, const std::string& path, const std::vector<std::string>& gens) {
  const auto s = load_splitting(c, path);
  const Prime& prime = s.splitting.prime();
  const froblift::IdealPresentation ideal(prime, s.splitting.arity(), Level::ModP,
                                          parse_polys(gens, s.vars, prime, Level::ModP));
  const bool ok = froblift::compatible_ideal_splitting(s.splitting, ideal);
  Report r;
  r.result["u"] = poly_text(s.splitting.key(), s.vars);
  r.result["generators"] = poly_list(ideal.generators(), s.vars);
  r.result["compatible"] = ok;
  r.human.push_back(ok ? "compatible" : "not compatible");
  if (!ok) r.exit_code = kNegative;
  return r;
}

Report cmd_divisor(const Common& c, const std::string& path, const std::vector<std::string>& factors) {
  const auto s = load_splitting(c, path);
  const Prime& prime = s.splitting.prime();
  const auto candidates = parse_polys(factors, s.vars, prime, Level::ModP);
  const auto div = froblift::divisor_of_splitting(s.splitting, candidates);
  Report r;
  Json comps = Json::array();
  for (const auto& comp : div.components) {
    comps.push_back({{"factor", poly_text(comp.factor, s.vars)},
                     {"multiplicity", comp.multiplicity},
                     {"coefficient", std::to_string(comp.coefficient.num) + "/" + std::to_string(comp.coefficient.den)}});
    r.human.push_back(poly_text(comp.factor, s.vars) + ": multiplicity " + std::to_string(comp.multiplicity) +
                      ", coefficient " + std::to_string(comp.coefficient.num) + "/" +
                      std::to_string(comp.coefficient.den));
  }
  r.result["u"] = poly_text(s.splitting.key(), s.vars);
  r.result["components"] = comps;
  r.result["residual"] = poly_text(div.residual, s.vars);
  r.human.push_back("residual: " + poly_text(div.residual, s.vars));
  return r;
}

Report cmd_average(const Common& c, const std::string& path, const std::string& group_path, std::size_t probes) {
  const auto s = load_splitting(c, path);
  if (group_path.empty()) throw froblift::Error("--group is required");
  const auto g = froblift::io::load_group(group_path);
  check_prime_flag(c, g.group.prime());
  if (g.vars != s.vars) throw froblift::Error("group and splitting files use different variables");
  const auto avg = froblift::group_average(s.splitting, g.group);

  std::mt19937_64 rng(c.seed);
  bool invariant = true;
  for (std::size_t k = 0; k < probes && invariant; ++k) {
    const MultiPoly f = froblift::random_poly(avg.prime(), avg.arity(), Level::ModP, rng, 4, 4);
    for (std::size_t e = 0; e < g.group.order(); ++e)
      invariant = invariant && avg(g.group.pull_back(e, f)) == g.group.pull_back(e, avg(f));
  }
  Report r;
  r.result["order"] = g.group.order();
  r.result["u"] = poly_text(s.splitting.key(), s.vars);
  r.result["averaged"] = poly_text(avg.key(), s.vars);
  r.result["unital"] = froblift::is_unital_splitting(avg);
  r.result["invariant"] = invariant;
  r.result["probes"] = probes;
  r.human.push_back("averaged u = " + poly_text(avg.key(), s.vars));
  r.human.push_back(std::string("invariant: ") + (invariant ? "yes" : "no"));
  if (!invariant) r.exit_code = kNegative;
  return r;
}

struct CanonicalArgs {
  std::string chart, splitting;
  std::size_t samples = 50;
  std::uint64_t degree_cap = 0;
};

Report cmd_canonical_lift_check(const Common& c, const CanonicalArgs& args) {
  if (args.chart.empty() == args.splitting.empty()) throw froblift::Error("give exactly one of --chart, --splitting");
  std::optional<froblift::io::ChartFile> chart;
  std::optional<froblift::TraceSplitting> sigma;
  std::vector<std::string> vars;
  if (!args.chart.empty()) {
    chart = load_chart(c, args.chart);
    sigma = froblift::associated_splitting(chart->lifting);
    vars = chart->vars;
  } else {
    auto s = load_splitting(c, args.splitting);
    vars = s.vars;
    sigma = s.splitting;
  }
  const Prime& prime = sigma->prime();
  const std::uint64_t cap = args.degree_cap ? args.degree_cap : 2 * prime.value();
  Report r;
  r.result["u"] = poly_text(sigma->key(), vars);
  if (!froblift::is_unital_splitting(*sigma)) {
    r.result["unital"] = false;
    r.result["idempotent"] = nullptr;
    r.result["flatness"] = nullptr;
    r.result["degree_cap"] = cap;
    r.result["iso"] = nullptr;
    r.human.push_back("splitting is not unital");
    r.exit_code = kNegative;
    return r;
  }
  const froblift::CanonicalLiftRing ring(*sigma);
  std::mt19937_64 rng(c.seed);
  bool idempotent = true;
  for (std::size_t k = 0; k < args.samples; ++k) {
    const froblift::WittPoly w(froblift::random_poly(prime, sigma->arity(), Level::ModP, rng, 2 * prime.value()),
                               froblift::random_poly(prime, sigma->arity(), Level::ModP, rng, 2 * prime.value()));
    const auto z = ring.normal_form(w);
    idempotent = idempotent && ring.normal_form(z.value()) == z;
  }
  const bool flat = ring.flatness_check(cap);
  r.result["unital"] = true;
  r.result["idempotent"] = idempotent;
  r.result["flatness"] = flat;
  r.result["degree_cap"] = cap;
  bool iso_ok = true;
  if (chart) {
    const auto iso = froblift::theorem_iso_check(chart->lifting, args.samples, c.seed);
    iso_ok = iso.ok();
    r.result["iso"] = {{"left_identity", iso.left_identity},
                       {"additive", iso.additive},
                       {"multiplicative", iso.multiplicative},
                       {"failure", iso.failure}};
    r.human.push_back(std::string("iso check: ") + (iso.ok() ? "pass" : "fail: " + iso.failure));
  } else {
    r.result["iso"] = nullptr;
  }
  r.human.insert(r.human.begin(), std::string("flatness: ") + (flat ? "pass" : "fail"));
  r.human.insert(r.human.begin(), std::string("normal form idempotent: ") + (idempotent ? "yes" : "no"));
  if (!idempotent || !flat || !iso_ok) r.exit_code = kNegative;
  return r;
}

Report cmd_p1_scan(const Common& c) {
  std::string list = c.primes;
  if (list.empty()) {
    const char* env = std::getenv("FROBLIFT_PRIMES");
    list = env && *env ? env : kDefaultScanPrimes;
  }
  const auto primes = parse_primes(list);
  const auto coeffs = parallel_map<Coeff>(primes.size(), c.jobs,
                                          [&](std::size_t i) { return froblift::p1_invariant_scan(primes[i]); });
  Report r;
  Json scans = Json::array();
  bool all_zero = true;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    scans.push_back({{"p", primes[i].value()}, {"coefficient", coeffs[i]}, {"vanishes", coeffs[i] == 0}});
    r.human.push_back("p = " + std::to_string(primes[i].value()) + ": coefficient " + std::to_string(coeffs[i]));
    if (primes[i].value() > 2) all_zero = all_zero && coeffs[i] == 0;
  }
  r.result["scans"] = scans;
  r.result["all_odd_vanish"] = all_zero;
  if (!all_zero) r.exit_code = kNegative;
  return r;
}

// ---------------------------------------------------------------- fanoscreen

Report cmd_fano_screen(const std::string& path) {
  const auto report = froblift::fano::ingest_table(path);
  Report r;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json rec = {{"line", row.line},
                {"id", row.record.id},
                {"degree", row.record.degree},
                {"rho", row.record.rho},
                {"b3", row.record.b3},
                {"c1c2", row.record.c1c2},
                {"h12", row.record.h12 ? Json(*row.record.h12) : Json(nullptr)},
                {"chi_tangent", row.chi_tangent},
                {"euler_c3", row.euler_c3},
                {"verdict", froblift::fano::to_string(row.verdict)}};
    rows.push_back(rec);
  }
  Json diags = Json::array();
  for (const auto& d : report.diagnostics) {
    diags.push_back({{"line", d.line}, {"message", d.message}});
    std::cerr << path << ":" << d.line << ": " << d.message << "\n";
  }
  r.result["rows"] = rows;
  r.result["diagnostics"] = diags;
  r.result["summary"] = {{"NotRigid", report.not_rigid}, {"PossiblyRigid", report.possibly_rigid}};

  std::size_t id_width = 2;
  for (const auto& row : report.rows) id_width = std::max(id_width, row.record.id.size());
  const auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  const auto lpad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  if (!report.rows.empty()) {
    r.human.push_back(lpad("id", id_width) + "  " + pad("degree", 6) + "  " + pad("rho", 3) + "  " + pad("b3", 4) +
                      "  " + pad("chi(T)", 6) + "  " + pad("c3", 4) + "  verdict");
    for (const auto& row : report.rows)
      r.human.push_back(lpad(row.record.id, id_width) + "  " + pad(std::to_string(row.record.degree), 6) + "  " +
                        pad(std::to_string(row.record.rho), 3) + "  " + pad(std::to_string(row.record.b3), 4) + "  " +
                        pad(std::to_string(row.chi_tangent), 6) + "  " + pad(std::to_string(row.euler_c3), 4) + "  " +
                        froblift::fano::to_string(row.verdict));
  }
  r.human.push_back(std::to_string(report.not_rigid) + " NotRigid / " + std::to_string(report.possibly_rigid) +
                    " PossiblyRigid");
  return r;
}

Report cmd_bounds(std::uint64_t m, std::uint64_t M) {
  const auto b = froblift::fano::boundedness_bounds({m, M});
  Report r;
  r.result["m"] = m;
  r.result["M"] = M;
  r.result["N"] = b.N;
  r.result["chain"] = b.chain;
  r.result["chain_sum"] = b.chain_sum;
  r.result["strict"] = b.strict;
  r.result["equality_edge"] = b.equality_edge;
  r.human.push_back("N = " + std::to_string(b.N));
  r.human.push_back("chain " + std::to_string(b.chain[0]) + " + " + std::to_string(b.chain[1]) + " + " +
                    std::to_string(b.chain[2]) + " + " + std::to_string(b.chain[3]) + " = " +
                    std::to_string(b.chain_sum) + (b.strict ? " < " : " >= ") + std::to_string(b.N));
  if (b.equality_edge) r.human.push_back("warning: chain sum equals N, the strict inequality needs m >= 2");
  return r;
}

// ---------------------------------------------------------------- driver

void add_common(CLI::App* sub, Common& c, bool prime = true) {
  if (prime) sub->add_option("--p", c.primes, "prime (comma-separated list for scans)");
  sub->add_flag("--json", c.json, "machine-readable JSON output");
  sub->add_option("--seed", c.seed, "seed for randomized checks")->capture_default_str();
  sub->add_option("--jobs", c.jobs, "worker threads for independent parameter values")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chart-level Frobenius liftings modulo p^2, splittings and Fano screens"};
  app.require_subcommand(1);
  Common common;

  std::string chart, chart2, f_text, gens_center, var, point, splitting, group, vars_text, table;
  std::vector<std::string> gens, factors;
  std::optional<std::size_t> log_rank;
  std::size_t samples = 100;
  std::size_t probes = 20;
  std::uint64_t m = 0, M = 0;
  WittArgs witt;
  PsiArgs psi;
  CanonicalArgs canon;

  auto* s_witt = app.add_subcommand("witt", "length-2 Witt vector arithmetic over F_p with ghost-map check");
  add_common(s_witt, common);
  s_witt->add_option("--a", witt.a, "first operand a0,a1");
  s_witt->add_option("--b", witt.b, "second operand b0,b1");
  s_witt->add_flag("--exhaustive", witt.exhaustive, "check all p^4 pairs against the ghost map");

  auto* s_validate = app.add_subcommand("lift-validate", "validate a chart lifting and print its deltas");
  add_common(s_validate, common);
  s_validate->add_option("--chart", chart, "chart description file")->required();

  auto* s_delta = app.add_subcommand("delta", "delta of a Z/p^2 polynomial");
  add_common(s_delta, common);
  s_delta->add_option("--chart", chart)->required();
  s_delta->add_option("--f", f_text, "polynomial over Z/p^2")->required();

  auto* s_xi = app.add_subcommand("xi-det", "xi matrix and its determinant");
  add_common(s_xi, common);
  s_xi->add_option("--chart", chart)->required();

  auto* s_logxi = app.add_subcommand("log-xi-det", "logarithmic xi matrix and determinant");
  add_common(s_logxi, common);
  s_logxi->add_option("--chart", chart)->required();
  s_logxi->add_option("--log-rank", log_rank, "number of leading boundary coordinates");

  auto* s_split = app.add_subcommand("split-from-lift", "splitting associated to a lifting");
  add_common(s_split, common);
  s_split->add_option("--chart", chart)->required();

  auto* s_compat = app.add_subcommand("compat", "compatibility of a lifting with a Z/p^2 ideal");
  add_common(s_compat, common);
  s_compat->add_option("--chart", chart)->required();
  s_compat->add_option("--gen", gens, "ideal generator (repeatable)")->required();

  auto* s_blowup = app.add_subcommand("blowup", "does the lifting extend to the blow-up of a coordinate center");
  add_common(s_blowup, common);
  s_blowup->add_option("--chart", chart)->required();
  s_blowup->add_option("--center", gens_center, "comma-separated center variables");

  auto* s_product = app.add_subcommand("product", "product of two chart liftings");
  add_common(s_product, common);
  s_product->add_option("--chart", chart)->required();
  s_product->add_option("--chart2", chart2)->required();

  auto* s_restrict = app.add_subcommand("restrict", "induced lifting on a coordinate divisor");
  add_common(s_restrict, common);
  s_restrict->add_option("--chart", chart)->required();
  s_restrict->add_option("--var", var, "coordinate cutting out the divisor")->required();

  auto* s_psi = app.add_subcommand("psi", "Witt base-change map of a polynomial map into the chart");
  add_common(s_psi, common);
  s_psi->add_option("--chart", psi.chart, "target chart")->required();
  s_psi->add_option("--phi", psi.phi, "component of phi over F_p (repeatable, one per target variable)")->required();
  s_psi->add_option("--source-vars", psi.source_vars, "comma-separated source variables");
  s_psi->add_option("--source-chart", psi.source_chart, "source chart, enables the functoriality check");

  auto* s_point = app.add_subcommand("point-lift", "canonical lift of an F_p-point");
  add_common(s_point, common);
  s_point->add_option("--chart", chart)->required();
  s_point->add_option("--point", point, "comma-separated coordinates")->required();

  auto* s_round = app.add_subcommand("roundtrip", "recover F* from nu and theta");
  add_common(s_round, common);
  s_round->add_option("--chart", chart)->required();
  s_round->add_option("--f", f_text, "single Z/p^2 polynomial (default: random samples)");
  s_round->add_option("--samples", samples, "number of random inputs")->capture_default_str();

  auto* s_fedder = app.add_subcommand("fedder", "Fedder criterion for a hypersurface at the origin");
  add_common(s_fedder, common);
  s_fedder->add_option("--vars", vars_text, "comma-separated variables")->required();
  s_fedder->add_option("--f", f_text, "polynomial over F_p")->required();

  auto* s_csplit = app.add_subcommand("compat-split", "compatibility of a splitting with an F_p ideal");
  add_common(s_csplit, common);
  s_csplit->add_option("--splitting", splitting)->required();
  s_csplit->add_option("--gen", gens, "ideal generator (repeatable)")->required();

  auto* s_div = app.add_subcommand("divisor", "divisor data of a splitting along candidate factors");
  add_common(s_div, common);
  s_div->add_option("--splitting", splitting)->required();
  s_div->add_option("--factor", factors, "candidate factor (repeatable)");

  auto* s_avg = app.add_subcommand("average", "average a splitting over a finite group");
  add_common(s_avg, common);
  s_avg->add_option("--splitting", splitting)->required();
  s_avg->add_option("--group", group, "group action file")->required();
  s_avg->add_option("--probes", probes, "random invariance probes")->capture_default_str();

  auto* s_canon = app.add_subcommand("canonical-lift-check", "checks on the canonical lifting of a splitting");
  add_common(s_canon, common);
  s_canon->add_option("--chart", canon.chart, "use the splitting associated to this lifting");
  s_canon->add_option("--splitting", canon.splitting, "splitting file");
  s_canon->add_option("--samples", canon.samples, "random samples")->capture_default_str();
  s_canon->add_option("--degree-cap", canon.degree_cap, "flatness degree cap (default 2p)");

  auto* s_p1 = app.add_subcommand("p1-scan", "coefficient scan for the P^1 obstruction");
  add_common(s_p1, common);

  auto* s_fano = app.add_subcommand("fano-screen", "screen a CSV table of Fano threefold invariants");
  add_common(s_fano, common, false);
  s_fano->add_option("table", table, "CSV file")->required();

  auto* s_bounds = app.add_subcommand("bounds", "boundedness constants N = 4 M m^3");
  add_common(s_bounds, common, false);
  s_bounds->add_option("--m", m, "very-ampleness multiple")->required()->check(CLI::PositiveNumber);
  s_bounds->add_option("--M", M, "Hilbert coefficient bound")->required()->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Report report;
  try {
    if (sub == s_witt) report = cmd_witt(common, witt);
    else if (sub == s_validate) report = cmd_lift_validate(common, chart);
    else if (sub == s_delta) report = cmd_delta(common, chart, f_text);
    else if (sub == s_xi) report = cmd_xi_det(common, chart);
    else if (sub == s_logxi) report = cmd_log_xi_det(common, chart, log_rank);
    else if (sub == s_split) report = cmd_split_from_lift(common, chart);
    else if (sub == s_compat) report = cmd_compat(common, chart, gens);
    else if (sub == s_blowup) report = cmd_blowup(common, chart, gens_center);
    else if (sub == s_product) report = cmd_product(common, chart, chart2);
    else if (sub == s_restrict) report = cmd_restrict(common, chart, var);
    else if (sub == s_psi) report = cmd_psi(common, psi);
    else if (sub == s_point) report = cmd_point_lift(common, chart, point);
    else if (sub == s_round) report = cmd_roundtrip(common, chart, f_text, samples);
    else if (sub == s_fedder) report = cmd_fedder(common, vars_text, f_text);
    else if (sub == s_csplit) report = cmd_compat_split(common, splitting, gens);
    else if (sub == s_div) report = cmd_divisor(common, splitting, factors);
    else if (sub == s_avg) report = cmd_average(common, splitting, group, probes);
    else if (sub == s_canon) report = cmd_canonical_lift_check(common, canon);
    else if (sub == s_p1) report = cmd_p1_scan(common);
    else if (sub == s_fano) report = cmd_fano_screen(table);
    else if (sub == s_bounds) report = cmd_bounds(m, M);
  } catch (const froblift::Error& e) {
    std::cerr << "froblift " << name << ": error: " << e.what() << "\n";
    return kPrecondition;
  }

  if (common.json) {
    Json out;
    out["command"] = name;
    out["result"] = report.result;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const std::string& line : report.human) std::cout << line << "\n";
  }
  return report.exit_code;
}
