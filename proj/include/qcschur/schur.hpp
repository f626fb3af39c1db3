// Schur rotation families in the centralizer of each maximal subgroup,
// the boundary-angle solver, and rotation paths between icosahedral frames.

#ifndef QCSCHUR_SCHUR_HPP_
#define QCSCHUR_SCHUR_HPP_

#include <array>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "qcschur/linalg.hpp"
#include "qcschur/tables.hpp"

namespace qcs {

/// Reduces to (-pi, pi].
double wrap_angle(double x);
/// Distance on the circle, in [0, pi].
double angular_distance(double a, double b);

/// One angle (T, D10) or two (D6), each kept in (-pi, pi].
class AngleParameter {
public:
  AngleParameter() : v_{0.0} {}
  AngleParameter(std::initializer_list<double> values) : AngleParameter(std::vector<double>(values)) {}
  /// Throws std::invalid_argument for arity outside 1..2 or non-finite values.
  explicit AngleParameter(std::vector<double> values);

  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  const std::vector<double>& values() const { return v_; }

  /// Componentwise sum mod 2 pi.
  AngleParameter operator+(const AngleParameter& o) const;
  /// t times the representative in (-pi, pi], then wrapped.
  AngleParameter scaled(double t) const;
  /// Max componentwise circular distance.
  double distance(const AngleParameter& o) const;

private:
  std::vector<double> v_;
};

struct ArityMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// X = C * B(angles) * C^T where B is N(beta), M(beta) or P(alpha, beta).
/// For D6, alpha turns the two E planes and beta the A2 pair.
class SchurFamily {
public:
  static SchurFamily make(Subgroup s, const ConstantTables& tables = ConstantTables::standard());

  Subgroup subgroup() const { return subgroup_; }
  std::size_t arity() const { return subgroup_ == Subgroup::D6 ? 2 : 1; }
  const Mat6& conjugator() const { return conjugator_; }
  const Mat6& frame() const { return frame_; }
  const std::array<Mat6, 2>& generators() const { return generators_; }
  const std::array<Mat6, 2>& partner_generators() const { return partner_; }

  Mat6 block_form(const AngleParameter& angles) const;
  /// Throws ArityMismatch.
  Mat6 evaluate(const AngleParameter& angles) const;

private:
  Subgroup subgroup_ = Subgroup::T;
  Mat6 conjugator_;
  Mat6 frame_;
  std::array<Mat6, 2> generators_;
  std::array<Mat6, 2> partner_;
};

/// Max over both generators g of |X g - g X|.
double commutation_residual(const SchurFamily& family, const AngleParameter& angles);

/// The 36 off-block entries of K_j = R_G^T g_j R_G, R_G = X R, over the two
/// partner generators g_j (upper-right block then lower-left, row-major).
Eigen::Matrix<double, 36, 1> off_block_entries(const SchurFamily& family,
                                               const AngleParameter& angles);
double off_block_residual_at(const SchurFamily& family, const AngleParameter& angles);

struct SolverFailure : std::runtime_error {
  SolverFailure(const std::string& what, AngleParameter seed)
      : std::runtime_error(what), seed(std::move(seed)) {}
  AngleParameter seed;
};

struct BoundaryScan {
  double step_s1 = 0.05;   // degrees
  double step_t2 = 0.5;    // degrees
  double seed_threshold = 0.05;
  double dedupe = 1e-6;
  int max_iterations = 200;
};

/// Zeros of off_block_residual_at on S^1 (T2 for D6): dense scan, every
/// local minimum below the seed threshold refined by Gauss-Newton until the
/// residual is below `tolerance`. `grid_offset` in [0, 1) shifts the grid by
/// that fraction of a step. Deduplicated, wrapped to (-pi, pi], and sorted by
/// canonical_less. Throws std::invalid_argument unless tolerance is in
/// (0, 1e-6]; SolverFailure when a seed does not converge.
std::vector<AngleParameter> boundary_solve(const SchurFamily& family, double tolerance = 1e-12,
                                           double grid_offset = 0.0,
                                           const BoundaryScan& scan = {});

/// Shorter rotations first (Euclidean norm of the angles), ties broken by
/// descending lexicographic order.
bool canonical_less(const AngleParameter& a, const AngleParameter& b);

/// evaluate(t * endpoint). Throws std::invalid_argument if t is outside
/// [0, 1] or the endpoint residual is not below 1e-9.
Mat6 rotation_path(const SchurFamily& family, const AngleParameter& endpoint, double t);

/// Piecewise-linear path through angle waypoints (first must be zero, last a
/// boundary solution), with waypoints at equally spaced t.
class AnglePath {
public:
  explicit AnglePath(std::vector<AngleParameter> waypoints);
  AngleParameter at(double t) const;
  const std::vector<AngleParameter>& waypoints() const { return waypoints_; }

private:
  std::vector<AngleParameter> waypoints_;
};

Mat6 rotation_path(const SchurFamily& family, const AnglePath& path, double t);

} // namespace qcs

#endif
