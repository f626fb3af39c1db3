// Block decomposition of 6D representations through the reducing frame R,
// irrep identification by trace signatures, and the subgroup reducers
// (I3 + Q, P1 + P2, R1 + R2) that split the blocks further.

#ifndef QCSCHUR_REDUCTION_HPP_
#define QCSCHUR_REDUCTION_HPP_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcschur/golden.hpp"
#include "qcschur/groups.hpp"
#include "qcschur/linalg.hpp"
#include "qcschur/tables.hpp"

namespace qcs {

/// The orthogonal frame R together with its projector rows.
class ReductionFrame {
public:
  /// Throws std::invalid_argument unless frame_check(matrix) holds.
  explicit ReductionFrame(ScaledGoldenMatrix matrix);

  static const ReductionFrame& standard();

  const ScaledGoldenMatrix& exact() const { return exact_; }
  const Mat6& matrix() const { return real_; }
  /// Rows 1-3 of R^T (pi parallel) and rows 4-6 (pi perp).
  Mat36 parallel_rows() const { return real_.transpose().topRows<3>(); }
  Mat36 perp_rows() const { return real_.transpose().bottomRows<3>(); }

private:
  ScaledGoldenMatrix exact_;
  Mat6 real_;
};

struct BlockDecomposition {
  std::vector<Mat3> top;     // one per generator
  std::vector<Mat3> bottom;
  std::optional<std::vector<GoldenMatrix>> exact_top;
  std::optional<std::vector<GoldenMatrix>> exact_bottom;
  double off_block_residual = 0.0;
  /// Set by apply_subgroup_reducer: distance from the reducer's block pattern.
  double pattern_residual = 0.0;
};

/// Exact track: R^-1 g R over Q(tau) for each generator of a signed
/// permutation group. Residual is exactly 0 when every off-block entry is.
BlockDecomposition reduce_rep(const ReductionFrame& frame, const MatrixGroup& rep);
/// Floating track: F^T g F for an orthogonal frame F.
BlockDecomposition reduce_rep(const Mat6& frame, std::span<const Mat6> generators);

enum class IrrepLabel { T1, T2, A2_E1, A2_E2, A2_E, Tetrahedral, ReducibleOther };
std::string to_string(IrrepLabel label);

struct UnidentifiedIrrep : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numeric closure of 3x3 orthogonal generators (entries matched to 1e-9).
/// Throws std::runtime_error past `cap` elements.
std::vector<Mat3> close_group(std::span<const Mat3> generators, std::size_t cap = 240);

/// Decides the irrep content of a 3D block from its closure order and
/// traces (tolerance 1e-9):
///   60: irreducible; trace of gen0*gen1 is tau -> T1, tau' -> T2
///   12: irreducible -> Tetrahedral
///   10: A2 + E; trace of the order-5 generator tau -> E1, 1 - tau -> E2
///    6: A2 + E
/// Throws UnidentifiedIrrep for other closure orders or for an irreducible
/// block whose traces match no row; reducible blocks that fit no pattern
/// are ReducibleOther.
IrrepLabel identify_irrep(std::span<const Mat3> generators);
IrrepLabel identify_irrep(std::span<const GoldenMatrix> generators);

enum class BlockPattern { None, EqualBlocks, ScalarPlusPair };

struct ConstantTableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SubgroupReducer {
  std::optional<Subgroup> subgroup;  // empty for the identity reducer
  Mat6 conjugator = Mat6::Identity();
  /// Golden form of the conjugator when it has one (T: 4(I3 + Q) / 4).
  std::optional<ScaledGoldenMatrix> exact;
  BlockPattern pattern = BlockPattern::None;
};

SubgroupReducer make_subgroup_reducer(Subgroup s,
                                      const ConstantTables& tables = ConstantTables::standard());
SubgroupReducer identity_reducer();

/// Largest |entry| coupling index 0 with indices 1, 2 (the A2 + E pattern).
double scalar_pair_residual(const Mat3& m);

/// Conjugates each block by the matching 3x3 piece of the reducer and checks
/// the pattern: EqualBlocks exactly on the golden track (1e-12 otherwise),
/// ScalarPlusPair to 1e-12. Throws ConstantTableError on violation.
BlockDecomposition apply_subgroup_reducer(const SubgroupReducer& reducer,
                                          const BlockDecomposition& decomposition);

} // namespace qcs

#endif
