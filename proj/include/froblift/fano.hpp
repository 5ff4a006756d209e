#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace froblift::fano {

/// Numerical data of a smooth Fano threefold X.
struct FanoInvariantRecord {
  std::string id;
  long long degree = 0;  // (-K_X)^3
  long long rho = 1;     // Picard rank
  long long b3 = 0;      // third Betti number
  long long c1c2 = 24;   // c_1(T_X) c_2(T_X)
  std::optional<long long> h12;  // pass-through only
};

/// Throws InvalidRecord on: b3 odd or negative, degree < 2, rho < 1, c1c2 != 24.
void validate_record(const FanoInvariantRecord& r);

/// Intersection numbers entering Riemann-Roch for a vector bundle E on a threefold.
struct ChernInput {
  long long rk = 0;
  long long c1c2_T = 0;     // c1(T) c2(T)
  long long c1E_c1T2 = 0;   // c1(E) c1(T)^2
  long long c1E_c2T = 0;    // c1(E) c2(T)
  long long c1T_c1E2 = 0;   // c1(T) c1(E)^2
  long long c1T_c2E = 0;    // c1(T) c2(E)
  long long c1E3 = 0;       // c1(E)^3
  long long c1E_c2E = 0;    // c1(E) c2(E)
  long long c3E = 0;        // c3(E)
};

/// chi(X, E). Throws NonIntegralChi (reduced fraction) if the value is not an integer.
long long hrr_chi(const ChernInput& c);

/// Chern data of E = T_X for the record, so that hrr_chi gives chi(X, T_X).
ChernInput tangent_chern_input(const FanoInvariantRecord& r);

/// chi(X, T_X) = (-K)^3 / 2 - 18 + rho - b3 / 2.
long long chi_tangent(const FanoInvariantRecord& r);

/// c_3(T_X) = topological Euler characteristic = 2 + 2 rho - b3.
long long euler_c3(const FanoInvariantRecord& r);

enum class Rigidity { NotRigid, PossiblyRigid };
const char* to_string(Rigidity r);

/// NotRigid iff chi(T_X) < 0. One-sided: PossiblyRigid does not certify rigidity.
Rigidity rigidity_screen(const FanoInvariantRecord& r);

struct BoundednessParams {
  std::uint64_t m = 1;  // very-ampleness multiple
  std::uint64_t M = 1;  // Hilbert coefficient bound
};

struct BoundednessReport {
  std::uint64_t N = 0;                      // 4 M m^3
  std::array<std::uint64_t, 4> chain{};     // M, Mm, Mm^2, Mm^3
  std::uint64_t chain_sum = 0;
  bool strict = false;                      // chain_sum < N
  bool equality_edge = false;               // chain_sum == N (happens exactly at m = 1)
};

/// Throws Error on m == 0, M == 0 or 64-bit overflow.
BoundednessReport boundedness_bounds(const BoundednessParams& b);

struct ScreenedRow {
  std::size_t line = 0;
  FanoInvariantRecord record;
  long long chi_tangent = 0;
  long long euler_c3 = 0;
  Rigidity verdict = Rigidity::PossiblyRigid;
};

struct RowDiagnostic {
  std::size_t line = 0;
  std::string message;
};

struct TableReport {
  std::vector<ScreenedRow> rows;
  std::vector<RowDiagnostic> diagnostics;
  std::size_t not_rigid = 0;
  std::size_t possibly_rigid = 0;
};

/// Parses CSV with header id,degree,rho,b3 and optional c1c2, h12 columns (any order).
/// Bad rows become diagnostics; the remaining rows are still screened.
TableReport ingest_table_text(const std::string& text);

/// Reads the file at `path`; an unreadable file yields a single diagnostic at line 0.
TableReport ingest_table(const std::string& path);

}  // namespace froblift::fano
