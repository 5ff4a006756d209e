#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "froblift/error.hpp"
#include "froblift/fano.hpp"

namespace froblift::fano {
namespace {

FanoInvariantRecord rec(const std::string& id, long long degree, long long rho, long long b3) {
  FanoInvariantRecord r;
  r.id = id;
  r.degree = degree;
  r.rho = rho;
  r.b3 = b3;
  return r;
}

const FanoInvariantRecord kP3 = rec("P3", 64, 1, 0);
const FanoInvariantRecord kQuadric = rec("Q", 54, 1, 0);
const FanoInvariantRecord kP1P2 = rec("P1xP2", 54, 2, 0);
const FanoInvariantRecord kQuartic = rec("V4", 4, 1, 60);

// Exact rational evaluation of Riemann-Roch term by term, for comparison.
struct Frac {
  long long num, den;
};
Frac hrr_oracle(const ChernInput& c) {
  // Common denominator 24.
  const long long n = c.rk * c.c1c2_T + 2 * (c.c1E_c1T2 + c.c1E_c2T) + 6 * (c.c1T_c1E2 - 2 * c.c1T_c2E) +
                      4 * (c.c1E3 - 3 * c.c1E_c2E + 3 * c.c3E);
  return {n, 24};
}

TEST(Fano, ChiTangentReferenceRecords) {
  EXPECT_EQ(chi_tangent(kP3), 15);
  EXPECT_EQ(chi_tangent(kQuadric), 10);
  EXPECT_EQ(chi_tangent(kP1P2), 11);
  EXPECT_EQ(chi_tangent(kQuartic), -45);
  EXPECT_EQ(chi_tangent(rec("art", 38, 2, 0)), 3);
}

TEST(Fano, EulerCharacteristic) {
  EXPECT_EQ(euler_c3(kP3), 4);
  EXPECT_EQ(euler_c3(kQuartic), -56);
  EXPECT_EQ(euler_c3(rec("t", 10, 1, 4)), 0);
  EXPECT_EQ(euler_c3(kP1P2), 6);
}

TEST(Fano, RigidityScreen) {
  EXPECT_EQ(rigidity_screen(kQuartic), Rigidity::NotRigid);
  EXPECT_EQ(rigidity_screen(kP3), Rigidity::PossiblyRigid);
  EXPECT_EQ(rigidity_screen(rec("art", 38, 2, 0)), Rigidity::PossiblyRigid);
  EXPECT_STREQ(to_string(Rigidity::NotRigid), "NotRigid");
  EXPECT_STREQ(to_string(Rigidity::PossiblyRigid), "PossiblyRigid");
}

TEST(Fano, Validation) {
  EXPECT_THROW(validate_record(rec("odd", 64, 1, 3)), InvalidRecord);
  EXPECT_THROW(validate_record(rec("neg", 64, 1, -2)), InvalidRecord);
  EXPECT_THROW(validate_record(rec("deg", 1, 1, 0)), InvalidRecord);
  EXPECT_THROW(validate_record(rec("rho", 64, 0, 0)), InvalidRecord);
  FanoInvariantRecord bad = kP3;
  bad.c1c2 = 12;
  EXPECT_THROW(validate_record(bad), InvalidRecord);
  EXPECT_THROW(chi_tangent(rec("odd", 64, 1, 3)), InvalidRecord);
  // Odd degree with even b3: the formula has a half-integer value.
  EXPECT_THROW(chi_tangent(rec("half", 63, 1, 0)), NonIntegralChi);
}

TEST(Hrr, Examples) {
  ChernInput o;
  o.rk = 1;
  o.c1c2_T = 24;
  EXPECT_EQ(hrr_chi(o), 1);
  EXPECT_EQ(hrr_chi(ChernInput{}), 0);
  // chi(O) = 1 exactly when c1 c2 = 24.
  for (long long c = -48; c <= 96; ++c) {
    o.c1c2_T = c;
    if (c % 24 != 0) {
      EXPECT_THROW(hrr_chi(o), NonIntegralChi);
    } else {
      EXPECT_EQ(hrr_chi(o) == 1, c == 24);
    }
  }
  o.c1c2_T = 12;
  try {
    hrr_chi(o);
    FAIL();
  } catch (const NonIntegralChi& e) {
    EXPECT_EQ(e.numerator(), 1);
    EXPECT_EQ(e.denominator(), 2);
  }
}

TEST(Hrr, TangentSpecializationMatchesFormula) {
  for (const auto& r : {kP3, kQuadric, kP1P2, kQuartic}) EXPECT_EQ(hrr_chi(tangent_chern_input(r)), chi_tangent(r)) << r.id;
  for (long long deg = 2; deg <= 64; deg += 2)
    for (long long rho = 1; rho <= 10; ++rho)
      for (long long b3 = 0; b3 <= 100; b3 += 2) {
        const auto r = rec("g", deg, rho, b3);
        ASSERT_EQ(hrr_chi(tangent_chern_input(r)), chi_tangent(r));
      }
}

TEST(Hrr, AgreesWithRationalOracle) {
  std::mt19937_64 rng(211);
  auto draw = [&] { return static_cast<long long>(rng() % 201) - 100; };
  int integral = 0;
  for (int k = 0; k < 5000; ++k) {
    ChernInput c{draw(), draw(), draw(), draw(), draw(), draw(), draw(), draw(), draw()};
    const Frac f = hrr_oracle(c);
    if (f.num % f.den == 0) {
      ASSERT_EQ(hrr_chi(c), f.num / f.den);
      ++integral;
    } else {
      ASSERT_THROW(hrr_chi(c), NonIntegralChi);
    }
  }
  EXPECT_GT(integral, 0);
}

TEST(Bounds, Examples) {
  const auto a = boundedness_bounds({2, 3});
  EXPECT_EQ(a.N, 96u);
  EXPECT_EQ(a.chain, (std::array<std::uint64_t, 4>{3, 6, 12, 24}));
  EXPECT_EQ(a.chain_sum, 45u);
  EXPECT_TRUE(a.strict);
  EXPECT_FALSE(a.equality_edge);
  const auto b = boundedness_bounds({1, 1});
  EXPECT_EQ(b.N, 4u);
  EXPECT_EQ(b.chain_sum, 4u);
  EXPECT_FALSE(b.strict);
  EXPECT_TRUE(b.equality_edge);
  const auto c = boundedness_bounds({3, 1});
  EXPECT_EQ(c.N, 108u);
  EXPECT_EQ(c.chain_sum, 40u);
  EXPECT_TRUE(c.strict);
  EXPECT_THROW(boundedness_bounds({0, 1}), Error);
  EXPECT_THROW(boundedness_bounds({1, 0}), Error);
  EXPECT_THROW(boundedness_bounds({1u << 22, 1u << 22}), Error);
}

TEST(Bounds, StrictForAllLargerMultiples) {
  for (std::uint64_t m = 1; m <= 50; ++m)
    for (std::uint64_t M = 1; M <= 50; ++M) {
      const auto r = boundedness_bounds({m, M});
      ASSERT_EQ(r.N, 4 * M * m * m * m);
      ASSERT_EQ(r.strict, m >= 2);
      ASSERT_EQ(r.equality_edge, m == 1);
    }
}

TEST(Table, ReferenceRows) {
  const auto t = ingest_table_text("id,degree,rho,b3\nP3,64,1,0\nQ,54,1,0\nP1xP2,54,2,0\nV4,4,1,60\n");
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_TRUE(t.diagnostics.empty());
  EXPECT_EQ(t.not_rigid, 1u);
  EXPECT_EQ(t.possibly_rigid, 3u);
  EXPECT_EQ(t.rows[3].chi_tangent, -45);
  EXPECT_EQ(t.rows[3].euler_c3, -56);
  EXPECT_EQ(t.rows[3].line, 5u);
}

TEST(Table, EmptyAndMalformed) {
  const auto empty = ingest_table_text("");
  EXPECT_TRUE(empty.rows.empty());
  EXPECT_TRUE(empty.diagnostics.empty());
  EXPECT_EQ(empty.not_rigid + empty.possibly_rigid, 0u);

  const auto t = ingest_table_text("b3,rho,id,degree,h12\nP3 odd,1,x,64,0\n0,1,P3,64,0\n\n# note\n0,1,Q,abc,\n0,1,short\n");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].record.id, "P3");
  EXPECT_EQ(t.rows[0].record.h12, 0);
  ASSERT_EQ(t.diagnostics.size(), 3u);
  EXPECT_EQ(t.diagnostics[0].line, 2u);
  EXPECT_EQ(t.diagnostics[1].line, 6u);
  EXPECT_EQ(t.diagnostics[2].line, 7u);

  const auto odd = ingest_table_text("id,degree,rho,b3\nA,64,1,3\nB,4,1,60\n");
  ASSERT_EQ(odd.rows.size(), 1u);
  ASSERT_EQ(odd.diagnostics.size(), 1u);
  EXPECT_EQ(odd.diagnostics[0].line, 2u);
  EXPECT_EQ(odd.not_rigid, 1u);

  const auto header = ingest_table_text("id,degree,b3\nA,64,0\n");
  EXPECT_TRUE(header.rows.empty());
  EXPECT_FALSE(header.diagnostics.empty());

  const auto c1c2 = ingest_table_text("id,degree,rho,b3,c1c2\nA,64,1,0,24\nB,64,1,0,23\n");
  EXPECT_EQ(c1c2.rows.size(), 1u);
  EXPECT_EQ(c1c2.diagnostics.size(), 1u);
}

TEST(Table, Files) {
  const auto missing = ingest_table("/nonexistent/fano.csv");
  ASSERT_EQ(missing.diagnostics.size(), 1u);
  EXPECT_EQ(missing.diagnostics[0].line, 0u);
  const auto path = std::filesystem::temp_directory_path() / "froblift_fano_rows.csv";
  {
    std::ofstream out(path);
    out << "id,degree,rho,b3\r\nP3,64,1,0\r\n";
  }
  const auto t = ingest_table(path.string());
  std::filesystem::remove(path);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].chi_tangent, 15);
}

}  // namespace
}  // namespace froblift::fano
