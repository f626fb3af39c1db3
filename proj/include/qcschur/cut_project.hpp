// Cut-and-project: hypercubic lattices, the projection window, model-set
// patches and point arrays along a Schur path, and the geometric oracles
// used to check them (lattice detection, set symmetry, Bain equivalence).

#ifndef QCSCHUR_CUT_PROJECT_HPP_
#define QCSCHUR_CUT_PROJECT_HPP_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcschur/groups.hpp"
#include "qcschur/linalg.hpp"
#include "qcschur/reduction.hpp"
#include "qcschur/schur.hpp"

namespace qcs {

enum class LatticeKind { SC, BCC, FCC };
std::string to_string(LatticeKind k);
std::optional<LatticeKind> parse_lattice(std::string_view s);

struct HypercubicLattice {
  LatticeKind kind = LatticeKind::SC;
  Mat6 generator = Mat6::Identity();  // columns are a basis

  static HypercubicLattice make(LatticeKind kind);
  /// Membership to 1e-9 by the coordinate rules (doubled coordinates for
  /// BCC all congruent mod 2; for FCC with even sum).
  bool contains(const Vec6& x) const;
};

// Convex hull of a small 3D point set, brute force over point triples.
struct HalfSpace {
  Vec3 normal;  // unit
  double offset = 0.0;
};

struct ConvexHull3 {
  std::vector<HalfSpace> faces;
  std::vector<Vec3> vertices;
  double volume = 0.0;
};

/// Faces are merged when normals and offsets agree to `tol`.
ConvexHull3 convex_hull(std::span<const Vec3> points, double tol = 1e-9);

struct SingularFrame : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProjectionWindow {
  std::vector<HalfSpace> half_spaces;
  std::vector<Vec3> vertices;
  double epsilon = 1e-9;
  double volume = 0.0;

  double circumradius() const;
  double diameter() const;
};

/// Projects the 64 vertices (+-1/2)^6 of the Voronoi cell through
/// pi_perp * rotation^-1 and returns their hull. Only SC is supported
/// (std::invalid_argument otherwise); SingularFrame if the volume < 1e-9.
ProjectionWindow build_window(const Mat6& rotation, const ReductionFrame& frame,
                              LatticeKind lattice = LatticeKind::SC);
/// Window from already-projected points.
ProjectionWindow window_from_points(std::span<const Vec3> points);

enum class Containment { Inside, Boundary, Outside };
Containment window_contains(const ProjectionWindow& w, const Vec3& x);

/// Projectors of the rotated frame, rows of R^T X^T: parallel then perp.
struct ProjectorPair {
  Mat36 parallel;
  Mat36 perp;
};
ProjectorPair projectors(const Mat6& rotation, const ReductionFrame& frame);

struct ModelSetPatch {
  std::vector<Vec3> points;
  std::vector<Vec6i> preimages;
  std::vector<bool> boundary;
  double t = 0.0;
  Subgroup subgroup = Subgroup::T;
  AngleParameter endpoint;
  double radius_max = 0.0;
  LatticeKind lattice = LatticeKind::SC;

  std::size_t boundary_count() const;
};

inline constexpr double kMaxRadius = 12.0;

/// Sigma for an arbitrary rotation (core of enumerate_model_set). Throws
/// std::invalid_argument unless 0 < radius_max <= 12.
ModelSetPatch enumerate_model_set_at(const Mat6& rotation, double radius_max,
                                     const ReductionFrame& frame = ReductionFrame::standard());

/// Sigma_t on the linear path to `endpoint` (must be a boundary solution).
ModelSetPatch enumerate_model_set(const SchurFamily& family, const AngleParameter& endpoint,
                                  double t, double radius_max);

struct CollisionEvent {
  std::size_t first;
  std::size_t second;
  double distance;
};

struct PointArray {
  std::vector<Vec3> points;
  std::vector<Vec6i> preimages;
  std::vector<CollisionEvent> collisions;
  double t = 0.0;
  Subgroup subgroup = Subgroup::T;
  AngleParameter endpoint;
};

/// {A seed : A in group}, deduplicated and sorted.
std::vector<Vec6i> orbit_array(const MatrixGroup& group, const Vec6i& seed);

/// Images under an explicit rotation; metadata left at defaults.
PointArray project_array_at(const Mat6& rotation, std::span<const Vec6i> orbit,
                            double collision_tol = 1e-9);

/// Images within `collision_tol` of each other are reported, not merged.
PointArray project_array(const SchurFamily& family, const AngleParameter& endpoint, double t,
                         std::span<const Vec6i> orbit, double collision_tol = 1e-9);

struct LatticeFit {
  Mat3 basis;  // columns
  double residual = 0.0;
};

/// Needs >= 20 points including the origin (std::invalid_argument
/// otherwise). Coincident points are merged first. The basis is the
/// smallest-volume independent triple among the 40 shortest differences,
/// refined by least squares; nullopt if some point is farther than
/// `tolerance` from the lattice it spans.
std::optional<LatticeFit> detect_lattice_3d(std::span<const Vec3> points, double tolerance = 1e-8);

/// True iff g p matches a point within match_tol for every g and every p
/// with |p| <= interior_radius.
bool check_set_symmetry(std::span<const Vec3> points, std::span<const Mat3> group,
                        double match_tol, double interior_radius);

double hausdorff_distance(std::span<const Vec3> a, std::span<const Vec3> b);

/// Sigma~_t from the deformed basis X(t)^-1 with the fixed frame, compared
/// with Sigma_t from the rotated frame. Returns the Hausdorff distance.
/// Throws std::invalid_argument unless 0 < radius_max <= 6.
double bain_equivalence_check(const SchurFamily& family, const AngleParameter& endpoint, double t,
                              double radius_max);

} // namespace qcs

#endif
