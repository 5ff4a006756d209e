#include "froblift/fano.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "froblift/error.hpp"

namespace froblift::fano {

namespace {

long long exact_div(long long num, long long den) {
  if (num % den != 0) {
    const long long g = std::gcd(num, den);
    throw NonIntegralChi(num / g, den / g);
  }
  return num / den;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

long long parse_integer(const std::string& field, const std::string& column) {
  long long v = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc() || ptr != last)
    throw InvalidRecord("column " + column + ": '" + field + "' is not an integer");
  return v;
}

}  // namespace

void validate_record(const FanoInvariantRecord& r) {
  if (r.degree < 2) throw InvalidRecord("degree must be at least 2");
  if (r.rho < 1) throw InvalidRecord("rho must be positive");
  if (r.b3 < 0 || r.b3 % 2 != 0) throw InvalidRecord("b3 must be a nonnegative even integer");
  if (r.c1c2 != 24) throw InvalidRecord("c1c2 must equal 24 for a smooth Fano threefold");
}

long long hrr_chi(const ChernInput& c) {
  const long long twenty_four_chi = c.rk * c.c1c2_T + 2 * (c.c1E_c1T2 + c.c1E_c2T) +
                                    6 * (c.c1T_c1E2 - 2 * c.c1T_c2E) +
                                    4 * (c.c1E3 - 3 * c.c1E_c2E + 3 * c.c3E);
  return exact_div(twenty_four_chi, 24);
}

ChernInput tangent_chern_input(const FanoInvariantRecord& r) {
  ChernInput c;
  c.rk = 3;
  c.c1c2_T = r.c1c2;
  c.c1E_c1T2 = r.degree;
  c.c1E_c2T = r.c1c2;
  c.c1T_c1E2 = r.degree;
  c.c1T_c2E = r.c1c2;
  c.c1E3 = r.degree;
  c.c1E_c2E = r.c1c2;
  c.c3E = 2 + 2 * r.rho - r.b3;
  return c;
}

long long chi_tangent(const FanoInvariantRecord& r) {
  validate_record(r);
  return exact_div(r.degree - r.b3, 2) - 18 + r.rho;
}

long long euler_c3(const FanoInvariantRecord& r) { return 2 + 2 * r.rho - r.b3; }

const char* to_string(Rigidity r) { return r == Rigidity::NotRigid ? "NotRigid" : "PossiblyRigid"; }

Rigidity rigidity_screen(const FanoInvariantRecord& r) {
  return chi_tangent(r) < 0 ? Rigidity::NotRigid : Rigidity::PossiblyRigid;
}

BoundednessReport boundedness_bounds(const BoundednessParams& b) {
  if (b.m == 0 || b.M == 0) throw Error("boundedness parameters m and M must be positive");
  BoundednessReport out;
  std::uint64_t term = b.M;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i > 0 && __builtin_mul_overflow(term, b.m, &term)) throw Error("boundedness bound overflows 64 bits");
    out.chain[i] = term;
    if (__builtin_add_overflow(out.chain_sum, term, &out.chain_sum))
      throw Error("boundedness bound overflows 64 bits");
  }
  if (__builtin_mul_overflow(out.chain[3], std::uint64_t{4}, &out.N)) throw Error("boundedness bound overflows 64 bits");
  out.strict = out.chain_sum < out.N;
  out.equality_edge = out.chain_sum == out.N;
  return out;
}

TableReport ingest_table_text(const std::string& text) {
  TableReport report;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> column;
  bool have_header = false;
  std::size_t header_width = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::vector<std::string> fields = split_fields(line);

    if (!have_header) {
      have_header = true;
      header_width = fields.size();
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string& name = fields[i];
        if (name != "id" && name != "degree" && name != "rho" && name != "b3" && name != "c1c2" && name != "h12") {
          report.diagnostics.push_back({line_no, "unknown column '" + name + "'"});
          continue;
        }
        if (!column.emplace(name, i).second) report.diagnostics.push_back({line_no, "duplicate column '" + name + "'"});
      }
      for (const char* required : {"id", "degree", "rho", "b3"}) {
        if (!column.count(required)) {
          report.diagnostics.push_back({line_no, std::string("missing required column '") + required + "'"});
          return report;
        }
      }
      continue;
    }

    try {
      if (fields.size() != header_width)
        throw InvalidRecord("expected " + std::to_string(header_width) + " fields, found " +
                            std::to_string(fields.size()));
      const auto get = [&](const std::string& name) -> const std::string& {
        return fields[column.at(name)];
      };
      FanoInvariantRecord r;
      r.id = get("id");
      if (r.id.empty()) throw InvalidRecord("empty id");
      r.degree = parse_integer(get("degree"), "degree");
      r.rho = parse_integer(get("rho"), "rho");
      r.b3 = parse_integer(get("b3"), "b3");
      if (column.count("c1c2") && !get("c1c2").empty()) r.c1c2 = parse_integer(get("c1c2"), "c1c2");
      if (column.count("h12") && !get("h12").empty()) r.h12 = parse_integer(get("h12"), "h12");

      ScreenedRow row;
      row.line = line_no;
      row.chi_tangent = chi_tangent(r);
      row.euler_c3 = euler_c3(r);
      row.verdict = row.chi_tangent < 0 ? Rigidity::NotRigid : Rigidity::PossiblyRigid;
      row.record = std::move(r);
      (row.verdict == Rigidity::NotRigid ? report.not_rigid : report.possibly_rigid)++;
      report.rows.push_back(std::move(row));
    } catch (const Error& e) {
      report.diagnostics.push_back({line_no, e.what()});
    }
  }
  return report;
}

TableReport ingest_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    TableReport report;
    report.diagnostics.push_back({0, "cannot read '" + path + "'"});
    return report;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_table_text(buf.str());
}

}  // namespace froblift::fano
