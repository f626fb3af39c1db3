#include <algorithm>
#include <cmath>

#include "qcschur/cut_project.hpp"

namespace qcs {

namespace {

std::vector<Vec3> unique_points(std::span<const Vec3> points, double tol) {
  std::vector<Vec3> out;
  for (const auto& p : points)
    if (std::none_of(out.begin(), out.end(), [&](const Vec3& q) { return (p - q).norm() < tol; }))
      out.push_back(p);
  return out;
}

// Area-weighted fan: sort the face's points by angle around their centroid.
double face_volume(const HalfSpace& f, const std::vector<Vec3>& on_face) {
  if (on_face.size() < 3)
    return 0.0;
  Vec3 c = Vec3::Zero();
  for (const auto& p : on_face)
    c += p;
  c /= static_cast<double>(on_face.size());
  Vec3 u = (on_face[0] - c).normalized();
  Vec3 v = f.normal.cross(u);
  std::vector<std::pair<double, Vec3>> ring;
  for (const auto& p : on_face)
    ring.emplace_back(std::atan2((p - c).dot(v), (p - c).dot(u)), p);
  std::sort(ring.begin(), ring.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double area = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec3& a = ring[i].second;
    const Vec3& b = ring[(i + 1) % ring.size()].second;
    area += 0.5 * (a - c).cross(b - c).dot(f.normal);
  }
  return std::abs(area) * f.offset / 3.0;
}

} // namespace

ConvexHull3 convex_hull(std::span<const Vec3> input, double tol) {
  const std::vector<Vec3> pts = unique_points(input, tol);
  const std::size_t n = pts.size();
  ConvexHull3 hull;
  double scale = 0.0;
  for (const auto& p : pts)
    scale = std::max(scale, p.norm());
  const double plane_tol = tol * std::max(1.0, scale);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 nrm = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        if (nrm.norm() < 1e-12 * std::max(1.0, scale * scale))
          continue;
        nrm.normalize();
        double off = nrm.dot(pts[i]);
        bool above = false, below = false;
        for (const auto& p : pts) {
          double s = nrm.dot(p) - off;
          above |= s > plane_tol;
          below |= s < -plane_tol;
          if (above && below)
            break;
        }
        if (above && below)
          continue;
        if (above) {
          nrm = -nrm;
          off = -off;
        }
        bool known = std::any_of(hull.faces.begin(), hull.faces.end(), [&](const HalfSpace& f) {
          return (f.normal - nrm).norm() < tol && std::abs(f.offset - off) < plane_tol;
        });
        if (!known)
          hull.faces.push_back({nrm, off});
      }

  // a vertex lies on faces whose normals span R^3
  for (const auto& p : pts) {
    std::vector<Vec3> normals;
    for (const auto& f : hull.faces)
      if (std::abs(f.normal.dot(p) - f.offset) <= plane_tol)
        normals.push_back(f.normal);
    if (normals.size() < 3)
      continue;
    Eigen::MatrixXd m(3, normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i)
      m.col(static_cast<Eigen::Index>(i)) = normals[i];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-9);
    if (lu.rank() == 3)
      hull.vertices.push_back(p);
  }

  double volume = 0.0;
  for (const auto& f : hull.faces) {
    std::vector<Vec3> on_face;
    for (const auto& v : hull.vertices)
      if (std::abs(f.normal.dot(v) - f.offset) <= plane_tol)
        on_face.push_back(v);
    volume += face_volume(f, on_face);
  }
  hull.volume = volume;
  return hull;
}

} // namespace qcs
