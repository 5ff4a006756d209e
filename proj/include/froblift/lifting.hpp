#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "froblift/ideal.hpp"
#include "froblift/poly.hpp"
#include "froblift/splitting.hpp"

namespace froblift {

/// Largest chart dimension for which determinants are expanded.
inline constexpr std::size_t kMaxDeterminantArity = 4;

/// A Frobenius lifting of affine n-space over Z/p^2, given by the images
/// F*(x_i). Validated on construction: each image reduces to x_i^p mod p.
class ChartLifting {
 public:
  /// Throws NotALifting naming the first bad image.
  ChartLifting(Prime prime, std::vector<MultiPoly> images);

  /// x_i -> x_i^p.
  static ChartLifting standard_toric(const Prime& prime, std::size_t arity);

  const Prime& prime() const noexcept { return prime_; }
  std::size_t arity() const noexcept { return images_.size(); }
  std::span<const MultiPoly> images() const noexcept { return images_; }
  /// delta(x_i) = (F*(x_i) - x_i^p)/p over F_p.
  std::span<const MultiPoly> deltas() const noexcept { return deltas_; }

  friend bool operator==(const ChartLifting& a, const ChartLifting& b) { return a.images_ == b.images_; }

 private:
  Prime prime_;
  std::vector<MultiPoly> images_;
  std::vector<MultiPoly> deltas_;
};

/// Same as the ChartLifting constructor; kept for symmetry with the CLI verb.
ChartLifting validate_lifting(const Prime& prime, std::vector<MultiPoly> images);

/// delta(f) = (F*(f) - f^p)/p for f over Z/p^2.
MultiPoly delta(const ChartLifting& lifting, const MultiPoly& f);

/// Matrix of (1/p)F* on differentials with its determinant.
struct XiMatrix {
  PolyMatrix entries;
  MultiPoly det;
};

/// Logarithmic variant along D = {x_1 ... x_r = 0}, in the basis
/// dx_i/x_i (i <= r), dx_i (i > r). `units` holds the cofactors u_i with
/// F*(x_i) = x_i^p u_i and `v` the reductions (u_i - 1)/p, for i <= r.
struct XiLogMatrix {
  std::size_t log_rank;
  PolyMatrix entries;
  MultiPoly det;
  std::vector<MultiPoly> units;
  std::vector<MultiPoly> v;
};

XiMatrix xi_det(const ChartLifting& lifting);
XiLogMatrix log_xi_det(const ChartLifting& lifting, std::size_t log_rank);

/// The splitting with key polynomial det(xi). Throws SplittingAxiomFailed if
/// it is not unital.
TraceSplitting associated_splitting(const ChartLifting& lifting);

/// F*(g) lies in I^p over Z/p^2 for every generator g of I.
bool is_compatible_with_ideal(const ChartLifting& lifting, const IdealPresentation& ideal);

/// Outcome of the blow-up extension test for a coordinate center.
struct BlowupCertificate {
  std::vector<std::size_t> center;  // 0-based variable indices
  std::vector<MultiPoly> f;         // delta(x_i) for the center coordinates
  struct PairCheck {
    std::size_t i, j;
    bool member;  // x_i^p f_j - x_j^p f_i in I^{2p}
  };
  std::vector<PairCheck> pairwise;
  std::vector<bool> direct;  // f_i in I^p
  bool pairwise_test;
  bool direct_test;
  bool extends;
};

/// Whether the lifting extends to the blow-up along the coordinate subspace
/// x_i = 0 (i in `center`). Both characterizations are evaluated; a
/// disagreement raises InternalInconsistency.
BlowupCertificate blowup_extends(const ChartLifting& lifting, std::span<const std::size_t> center);

/// Lifting on the product chart: the first factor's variables come first.
ChartLifting product_lifting(const ChartLifting& first, const ChartLifting& second);

/// Induced lifting on the divisor x_index = 0 (0-based), which must be compatible.
ChartLifting restrict_to_coordinate_divisor(const ChartLifting& lifting, std::size_t index);

/// psi*(y_i) = lift(phi_i)^p + p * lift(delta_i(phi)): a lifting of F_Y o phi.
std::vector<MultiPoly> base_change_psi(const ChartLifting& target, std::span<const MultiPoly> phi);

/// x_i = a_i^p + p * delta_i(a) in Z/p^2.
std::vector<Coeff> canonical_point_lift(const ChartLifting& lifting, std::span<const Coeff> point);

struct RoundtripResult {
  MultiPoly via_witt;  // lift(f)^p + p * lift(delta(f))
  MultiPoly direct;    // F*(f)
  bool equal;
};

/// Compares the composite through W_2 with F* itself; throws RoundtripFailed on mismatch.
RoundtripResult nu_theta_roundtrip(const ChartLifting& lifting, const MultiPoly& f);

}  // namespace froblift
