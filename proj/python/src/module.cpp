#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "froblift/error.hpp"
#include "froblift/fano.hpp"
#include "froblift/io.hpp"
#include "froblift/lifting.hpp"
#include "froblift/parse.hpp"
#include "froblift/splitting.hpp"
#include "froblift/witt.hpp"

namespace py = pybind11;
using namespace froblift;

namespace {

// Polynomials cross the boundary as text in named variables.
struct Chart {
  std::vector<std::string> vars;
  ChartLifting lifting;

  std::string text(const MultiPoly& f) const { return f.to_string(vars); }
  std::vector<std::string> texts(std::span<const MultiPoly> fs) const {
    std::vector<std::string> out;
    for (const MultiPoly& f : fs) out.push_back(text(f));
    return out;
  }
};

struct Splitting {
  std::vector<std::string> vars;
  TraceSplitting sigma;
};

std::vector<std::string> names_or_default(std::optional<std::vector<std::string>> vars, std::size_t n) {
  auto out = vars ? *vars : default_variable_names(n);
  validate_variable_names(out);
  return out;
}

std::vector<MultiPoly> parse_all(const std::vector<std::string>& texts, const std::vector<std::string>& vars,
                                 const Prime& p, Level level) {
  std::vector<MultiPoly> out;
  for (const auto& t : texts) out.push_back(parse_poly(t, vars, p, level));
  return out;
}

Chart make_chart(Coeff p, const std::vector<std::string>& images, std::optional<std::vector<std::string>> vars) {
  const Prime prime(p);
  auto names = names_or_default(std::move(vars), images.size());
  return Chart{names, ChartLifting(prime, parse_all(images, names, prime, Level::ModP2))};
}

Chart chart_from_file(const std::string& path) {
  auto f = io::load_chart(path);
  return Chart{f.vars, f.lifting};
}

Splitting make_splitting(Coeff p, const std::string& u, std::vector<std::string> vars) {
  validate_variable_names(vars);
  const Prime prime(p);
  return Splitting{vars, TraceSplitting(parse_poly(u, vars, prime, Level::ModP))};
}

std::vector<std::size_t> indices(const std::vector<std::string>& vars, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) out.push_back(io::variable_index(vars, n));
  return out;
}

py::dict record_dict(const fano::ScreenedRow& row) {
  py::dict d;
  d["line"] = row.line;
  d["id"] = row.record.id;
  d["degree"] = row.record.degree;
  d["rho"] = row.record.rho;
  d["b3"] = row.record.b3;
  d["chi_tangent"] = row.chi_tangent;
  d["euler_c3"] = row.euler_c3;
  d["verdict"] = fano::to_string(row.verdict);
  return d;
}

fano::FanoInvariantRecord record(long long degree, long long rho, long long b3, long long c1c2) {
  fano::FanoInvariantRecord r;
  r.degree = degree;
  r.rho = rho;
  r.b3 = b3;
  r.c1c2 = c1c2;
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Frobenius liftings and splittings on affine charts over Z/p^2";

  auto base = py::register_exception<Error>(m, "FrobliftError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NotALifting>(m, "NotALifting", base.ptr());
  py::register_exception<NonIntegralChi>(m, "NonIntegralChi", base.ptr());
  py::register_exception<InvalidRecord>(m, "InvalidRecord", base.ptr());

  m.def(
      "witt_add",
      [](Coeff p, std::pair<Coeff, Coeff> a, std::pair<Coeff, Coeff> b) {
        const auto s = witt_add(WittScalar(Prime(p), a.first, a.second), WittScalar(Prime(p), b.first, b.second));
        return std::make_pair(s.a0(), s.a1());
      },
      py::arg("p"), py::arg("a"), py::arg("b"));
  m.def(
      "witt_mul",
      [](Coeff p, std::pair<Coeff, Coeff> a, std::pair<Coeff, Coeff> b) {
        const auto s = witt_mul(WittScalar(Prime(p), a.first, a.second), WittScalar(Prime(p), b.first, b.second));
        return std::make_pair(s.a0(), s.a1());
      },
      py::arg("p"), py::arg("a"), py::arg("b"));
  m.def(
      "ghost_map", [](Coeff p, std::pair<Coeff, Coeff> a) { return ghost_map(WittScalar(Prime(p), a.first, a.second)); },
      py::arg("p"), py::arg("a"));

  m.def(
      "normalize",
      [](Coeff p, const std::string& text, std::vector<std::string> vars, bool mod_p2) {
        validate_variable_names(vars);
        return parse_poly(text, vars, Prime(p), mod_p2 ? Level::ModP2 : Level::ModP).to_string(vars);
      },
      py::arg("p"), py::arg("text"), py::arg("vars"), py::arg("mod_p2") = false,
      "Parses a polynomial and prints it in canonical form.");

  py::class_<Chart>(m, "Chart")
      .def(py::init(&make_chart), py::arg("p"), py::arg("images"), py::arg("vars") = py::none())
      .def_static("load", &chart_from_file, py::arg("path"))
      .def_property_readonly("p", [](const Chart& c) { return c.lifting.prime().value(); })
      .def_property_readonly("vars", [](const Chart& c) { return c.vars; })
      .def_property_readonly("images", [](const Chart& c) { return c.texts(c.lifting.images()); })
      .def_property_readonly("deltas", [](const Chart& c) { return c.texts(c.lifting.deltas()); })
      .def(
          "delta",
          [](const Chart& c, const std::string& f) {
            return c.text(delta(c.lifting, parse_poly(f, c.vars, c.lifting.prime(), Level::ModP2)));
          },
          py::arg("f"))
      .def("xi_det", [](const Chart& c) { return c.text(xi_det(c.lifting).det); })
      .def(
          "log_xi_det", [](const Chart& c, std::size_t r) { return c.text(log_xi_det(c.lifting, r).det); },
          py::arg("log_rank"))
      .def("associated_splitting", [](const Chart& c) { return c.text(associated_splitting(c.lifting).key()); })
      .def(
          "is_compatible",
          [](const Chart& c, const std::vector<std::string>& gens) {
            const Prime& p = c.lifting.prime();
            return is_compatible_with_ideal(
                c.lifting, IdealPresentation(p, c.lifting.arity(), Level::ModP2, parse_all(gens, c.vars, p, Level::ModP2)));
          },
          py::arg("generators"))
      .def(
          "blowup_extends",
          [](const Chart& c, const std::vector<std::string>& center) {
            const auto idx = indices(c.vars, center);
            const auto cert = blowup_extends(c.lifting, idx);
            py::dict d;
            d["extends"] = cert.extends;
            d["pairwise_test"] = cert.pairwise_test;
            d["direct_test"] = cert.direct_test;
            d["f"] = c.texts(cert.f);
            return d;
          },
          py::arg("center"))
      .def(
          "product",
          [](const Chart& a, const Chart& b) {
            auto vars = a.vars;
            vars.insert(vars.end(), b.vars.begin(), b.vars.end());
            try {
              validate_variable_names(vars);
            } catch (const Error&) {
              vars = default_variable_names(vars.size());
            }
            return Chart{vars, product_lifting(a.lifting, b.lifting)};
          },
          py::arg("other"))
      .def(
          "restrict",
          [](const Chart& c, const std::string& var) {
            const std::size_t i = io::variable_index(c.vars, var);
            auto vars = c.vars;
            vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(i));
            return Chart{vars, restrict_to_coordinate_divisor(c.lifting, i)};
          },
          py::arg("var"))
      .def(
          "psi",
          [](const Chart& c, const std::vector<std::string>& phi, const std::vector<std::string>& source_vars) {
            validate_variable_names(source_vars);
            const auto psi = base_change_psi(c.lifting, parse_all(phi, source_vars, c.lifting.prime(), Level::ModP));
            std::vector<std::string> out;
            for (const auto& f : psi) out.push_back(f.to_string(source_vars));
            return out;
          },
          py::arg("phi"), py::arg("source_vars"))
      .def(
          "point_lift", [](const Chart& c, const std::vector<Coeff>& a) { return canonical_point_lift(c.lifting, a); },
          py::arg("point"))
      .def(
          "roundtrip",
          [](const Chart& c, const std::string& f) {
            return nu_theta_roundtrip(c.lifting, parse_poly(f, c.vars, c.lifting.prime(), Level::ModP2)).equal;
          },
          py::arg("f"))
      .def(
          "iso_check",
          [](const Chart& c, std::size_t samples, std::uint64_t seed) {
            return theorem_iso_check(c.lifting, samples, seed).ok();
          },
          py::arg("samples") = 50, py::arg("seed") = 1);

  py::class_<Splitting>(m, "Splitting")
      .def(py::init(&make_splitting), py::arg("p"), py::arg("u"), py::arg("vars"))
      .def_property_readonly("u", [](const Splitting& s) { return s.sigma.key().to_string(s.vars); })
      .def_property_readonly("vars", [](const Splitting& s) { return s.vars; })
      .def(
          "__call__",
          [](const Splitting& s, const std::string& f) {
            return s.sigma(parse_poly(f, s.vars, s.sigma.prime(), Level::ModP)).to_string(s.vars);
          },
          py::arg("f"))
      .def("is_unital", [](const Splitting& s) { return is_unital_splitting(s.sigma); })
      .def(
          "is_compatible",
          [](const Splitting& s, const std::vector<std::string>& gens) {
            const Prime& p = s.sigma.prime();
            return compatible_ideal_splitting(
                s.sigma, IdealPresentation(p, s.sigma.arity(), Level::ModP, parse_all(gens, s.vars, p, Level::ModP)));
          },
          py::arg("generators"))
      .def(
          "divisor",
          [](const Splitting& s, const std::vector<std::string>& factors) {
            const auto d = divisor_of_splitting(s.sigma, parse_all(factors, s.vars, s.sigma.prime(), Level::ModP));
            py::list comps;
            for (const auto& c : d.components)
              comps.append(py::make_tuple(c.factor.to_string(s.vars), c.multiplicity, c.coefficient.num, c.coefficient.den));
            return py::make_tuple(comps, d.residual.to_string(s.vars));
          },
          py::arg("factors"))
      .def(
          "average",
          [](const Splitting& s, const std::vector<std::vector<std::string>>& maps) {
            std::vector<std::vector<MultiPoly>> parsed;
            for (const auto& g : maps) parsed.push_back(parse_all(g, s.vars, s.sigma.prime(), Level::ModP));
            const GroupAction group(s.sigma.prime(), s.sigma.arity(), std::move(parsed));
            return Splitting{s.vars, group_average(s.sigma, group)};
          },
          py::arg("maps"))
      .def(
          "canonical_lift_flat",
          [](const Splitting& s, std::uint64_t cap) { return CanonicalLiftRing(s.sigma).flatness_check(cap); },
          py::arg("degree_cap"));

  m.def(
      "fedder_is_fsplit",
      [](Coeff p, const std::string& f, std::vector<std::string> vars) {
        validate_variable_names(vars);
        return fedder_is_fsplit(parse_poly(f, vars, Prime(p), Level::ModP));
      },
      py::arg("p"), py::arg("f"), py::arg("vars"));
  m.def("p1_invariant_scan", [](Coeff p) { return p1_invariant_scan(Prime(p)); }, py::arg("p"));

  m.def(
      "chi_tangent",
      [](long long degree, long long rho, long long b3, long long c1c2) {
        return fano::chi_tangent(record(degree, rho, b3, c1c2));
      },
      py::arg("degree"), py::arg("rho"), py::arg("b3"), py::arg("c1c2") = 24);
  m.def(
      "euler_c3", [](long long rho, long long b3) { return fano::euler_c3(record(2, rho, b3, 24)); }, py::arg("rho"), py::arg("b3"));
  m.def(
      "rigidity_screen",
      [](long long degree, long long rho, long long b3) {
        return std::string(fano::to_string(fano::rigidity_screen(record(degree, rho, b3, 24))));
      },
      py::arg("degree"), py::arg("rho"), py::arg("b3"));
  m.def(
      "hrr_chi",
      [](long long rk, long long c1c2_T, long long c1E_c1T2, long long c1E_c2T, long long c1T_c1E2, long long c1T_c2E,
         long long c1E3, long long c1E_c2E, long long c3E) {
        return fano::hrr_chi({rk, c1c2_T, c1E_c1T2, c1E_c2T, c1T_c1E2, c1T_c2E, c1E3, c1E_c2E, c3E});
      },
      py::arg("rk"), py::arg("c1c2_T"), py::arg("c1E_c1T2") = 0, py::arg("c1E_c2T") = 0, py::arg("c1T_c1E2") = 0,
      py::arg("c1T_c2E") = 0, py::arg("c1E3") = 0, py::arg("c1E_c2E") = 0, py::arg("c3E") = 0);
  m.def(
      "boundedness_bounds",
      [](std::uint64_t m_, std::uint64_t M) {
        const auto b = fano::boundedness_bounds({m_, M});
        py::dict d;
        d["N"] = b.N;
        d["chain"] = b.chain;
        d["chain_sum"] = b.chain_sum;
        d["strict"] = b.strict;
        d["equality_edge"] = b.equality_edge;
        return d;
      },
      py::arg("m"), py::arg("M"));
  m.def(
      "screen_table",
      [](const std::string& path) {
        const auto t = fano::ingest_table(path);
        py::list rows, diags;
        for (const auto& row : t.rows) rows.append(record_dict(row));
        for (const auto& d : t.diagnostics) diags.append(py::make_tuple(d.line, d.message));
        py::dict out;
        out["rows"] = rows;
        out["diagnostics"] = diags;
        out["not_rigid"] = t.not_rigid;
        out["possibly_rigid"] = t.possibly_rigid;
        return out;
      },
      py::arg("path"));
}
