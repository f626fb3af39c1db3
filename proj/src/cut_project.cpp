#include "qcschur/cut_project.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace qcs {

namespace {

// Uniform grid over R^3 for nearest-match queries within `tol` < cell.
class SpatialHash {
public:
  explicit SpatialHash(double cell) : cell_(cell) {}
  SpatialHash(std::span<const Vec3> points, double cell) : cell_(cell) {
    for (const auto& p : points)
      add(p);
  }

  void add(const Vec3& p) {
    grid_[key(cell_of(p))].push_back(pts_.size());
    pts_.push_back(p);
  }

  bool has_match(const Vec3& q, double tol) const {
    const auto c = cell_of(q);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = grid_.find(key({c[0] + dx, c[1] + dy, c[2] + dz}));
          if (it == grid_.end())
            continue;
          for (std::size_t i : it->second)
            if ((pts_[i] - q).norm() <= tol)
              return true;
        }
    return false;
  }

private:
  using Cell = std::array<long long, 3>;
  Cell cell_of(const Vec3& p) const {
    return {static_cast<long long>(std::floor(p[0] / cell_)),
            static_cast<long long>(std::floor(p[1] / cell_)),
            static_cast<long long>(std::floor(p[2] / cell_))};
  }
  static std::size_t key(const Cell& c) {
    std::size_t h = 1469598103934665603ull;
    for (long long v : c)
      h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }

  std::vector<Vec3> pts_;
  double cell_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> grid_;
};

struct Hit {
  Vec3 point;
  Vec6i preimage;
  bool boundary;
};

bool hit_less(const Hit& a, const Hit& b) {
  const auto na = std::llround(a.point.norm() * 1e9);
  const auto nb = std::llround(b.point.norm() * 1e9);
  return std::tie(na, a.point[0], a.point[1], a.point[2], a.preimage) <
         std::tie(nb, b.point[0], b.point[1], b.point[2], b.preimage);
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// All v in Z^6 with |v| within the Pythagoras bound, |P_par v| <= keep_radius
// and P_perp v in the window. Rows 0-2 of `proj` are parallel, 3-5 perp.
std::vector<Hit> enumerate_hits(const Mat6& proj, const ProjectionWindow& window,
                                double keep_radius) {
  const double circ = window.circumradius();
  const double bound2 = keep_radius * keep_radius + circ * circ + 1e-9;
  const int lim = static_cast<int>(std::floor(std::sqrt(bound2)));

  auto scan_first = [&](int v1) {
    std::vector<Hit> hits;
    Vec6i v{};
    v[0] = v1;
    auto rec = [&](auto&& self, int depth, long long partial) -> void {
      if (depth == 6) {
        Vec6 x = to_real(v);
        Vec6 y = proj * x;
        Vec3 par = y.head<3>();
        if (par.norm() > keep_radius)
          return;
        Containment c = window_contains(window, y.tail<3>());
        if (c != Containment::Outside)
          hits.push_back({par, v, c == Containment::Boundary});
        return;
      }
      const double rest = bound2 - static_cast<double>(partial);
      if (rest < 0)
        return;
      const int m = static_cast<int>(std::floor(std::sqrt(rest)));
      for (int k = -m; k <= m; ++k) {
        v[depth] = k;
        self(self, depth + 1, partial + static_cast<long long>(k) * k);
      }
      v[depth] = 0;
    };
    rec(rec, 1, static_cast<long long>(v1) * v1);
    return hits;
  };

  std::vector<int> firsts;
  for (int k = -lim; k <= lim; ++k)
    firsts.push_back(k);
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(firsts.size()));
  std::vector<std::future<std::vector<Hit>>> jobs;
  for (unsigned w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      std::vector<Hit> out;
      for (std::size_t i = w; i < firsts.size(); i += workers) {
        auto part = scan_first(firsts[i]);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }));
  std::vector<Hit> all;
  for (auto& j : jobs) {
    auto part = j.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end(), hit_less);
  return all;
}

std::vector<Vec3> voronoi_vertices(const Mat36& perp) {
  std::vector<Vec3> out;
  for (int mask = 0; mask < 64; ++mask) {
    Vec6 v;
    for (int i = 0; i < 6; ++i)
      v[i] = (mask >> i) & 1 ? 0.5 : -0.5;
    out.push_back(perp * v);
  }
  return out;
}

} // namespace

std::string to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::SC: return "SC";
    case LatticeKind::BCC: return "BCC";
    case LatticeKind::FCC: return "FCC";
  }
  return "?";
}

std::optional<LatticeKind> parse_lattice(std::string_view s) {
  if (s == "SC")
    return LatticeKind::SC;
  if (s == "BCC")
    return LatticeKind::BCC;
  if (s == "FCC")
    return LatticeKind::FCC;
  return std::nullopt;
}

HypercubicLattice HypercubicLattice::make(LatticeKind kind) {
  HypercubicLattice l;
  l.kind = kind;
  l.generator = Mat6::Identity();
  if (kind == LatticeKind::BCC) {
    l.generator.col(5).setConstant(0.5);
  } else if (kind == LatticeKind::FCC) {
    // half of the D6 root lattice basis e1+e2, e2-e1, e3-e2, ..., e6-e5
    l.generator = Mat6::Zero();
    l.generator(0, 0) = l.generator(1, 0) = 0.5;
    for (int i = 1; i < 6; ++i) {
      l.generator(i, i) = 0.5;
      l.generator(i - 1, i) = -0.5;
    }
  }
  return l;
}

bool HypercubicLattice::contains(const Vec6& x) const {
  constexpr double tol = 1e-9;
  std::array<long long, 6> d{};
  for (int i = 0; i < 6; ++i) {
    double twice = 2 * x[i];
    d[i] = std::llround(twice);
    if (std::abs(twice - static_cast<double>(d[i])) > tol)
      return false;
  }
  switch (kind) {
    case LatticeKind::SC:
      return std::all_of(d.begin(), d.end(), [](long long v) { return v % 2 == 0; });
    case LatticeKind::BCC:
      return std::all_of(d.begin(), d.end(), [&](long long v) { return (v - d[0]) % 2 == 0; });
    case LatticeKind::FCC: {
      long long s = 0;
      for (auto v : d)
        s += v;
      return s % 2 == 0;
    }
  }
  return false;
}

double ProjectionWindow::circumradius() const {
  double r = 0.0;
  for (const auto& v : vertices)
    r = std::max(r, v.norm());
  return r;
}

double ProjectionWindow::diameter() const {
  double d = 0.0;
  for (const auto& a : vertices)
    for (const auto& b : vertices)
      d = std::max(d, (a - b).norm());
  return d;
}

ProjectionWindow window_from_points(std::span<const Vec3> points) {
  ConvexHull3 hull = convex_hull(points);
  if (!(hull.volume >= 1e-9))
    throw SingularFrame("projection window is degenerate (volume " + std::to_string(hull.volume) + ")");
  ProjectionWindow w;
  w.half_spaces = std::move(hull.faces);
  w.vertices = std::move(hull.vertices);
  w.volume = hull.volume;
  return w;
}

ProjectorPair projectors(const Mat6& rotation, const ReductionFrame& frame) {
  const Mat6 p = frame.matrix().transpose() * rotation.transpose();
  return {p.topRows<3>(), p.bottomRows<3>()};
}

ProjectionWindow build_window(const Mat6& rotation, const ReductionFrame& frame,
                              LatticeKind lattice) {
  if (lattice != LatticeKind::SC)
    throw std::invalid_argument("projection windows are implemented for the SC lattice only");
  const auto verts = voronoi_vertices(projectors(rotation, frame).perp);
  return window_from_points(verts);
}

Containment window_contains(const ProjectionWindow& w, const Vec3& x) {
  bool on_face = false;
  for (const auto& h : w.half_spaces) {
    const double s = h.normal.dot(x) - h.offset;
    if (s > w.epsilon)
      return Containment::Outside;
    if (s > -w.epsilon)
      on_face = true;
  }
  return on_face ? Containment::Boundary : Containment::Inside;
}

std::size_t ModelSetPatch::boundary_count() const {
  return static_cast<std::size_t>(std::count(boundary.begin(), boundary.end(), true));
}

ModelSetPatch enumerate_model_set_at(const Mat6& rotation, double radius_max,
                                     const ReductionFrame& frame) {
  if (!(radius_max > 0.0 && radius_max <= kMaxRadius))
    throw std::invalid_argument("radiusMax must lie in (0, 12]");
  const ProjectionWindow window = build_window(rotation, frame);
  const ProjectorPair pp = projectors(rotation, frame);
  Mat6 proj;
  proj << pp.parallel, pp.perp;
  ModelSetPatch patch;
  patch.radius_max = radius_max;
  for (auto& h : enumerate_hits(proj, window, radius_max)) {
    patch.points.push_back(h.point);
    patch.preimages.push_back(h.preimage);
    patch.boundary.push_back(h.boundary);
  }
  return patch;
}

ModelSetPatch enumerate_model_set(const SchurFamily& family, const AngleParameter& endpoint,
                                  double t, double radius_max) {
  if (!(radius_max > 0.0 && radius_max <= kMaxRadius))
    throw std::invalid_argument("radiusMax must lie in (0, 12]");
  ModelSetPatch patch = enumerate_model_set_at(rotation_path(family, endpoint, t), radius_max);
  patch.t = t;
  patch.subgroup = family.subgroup();
  patch.endpoint = endpoint;
  return patch;
}

std::vector<Vec6i> orbit_array(const MatrixGroup& group, const Vec6i& seed) {
  std::set<Vec6i> orbit;
  orbit.insert(seed);
  for (const auto& g : group.elements)
    orbit.insert(g.apply(seed));
  return {orbit.begin(), orbit.end()};
}

PointArray project_array_at(const Mat6& rotation, std::span<const Vec6i> orbit,
                            double collision_tol) {
  const ProjectorPair pp = projectors(rotation, ReductionFrame::standard());
  PointArray a;
  for (const auto& v : orbit) {
    a.preimages.push_back(v);
    a.points.push_back(pp.parallel * to_real(v));
  }
  for (std::size_t i = 0; i < a.points.size(); ++i)
    for (std::size_t j = i + 1; j < a.points.size(); ++j) {
      const double d = (a.points[i] - a.points[j]).norm();
      if (d <= collision_tol)
        a.collisions.push_back({i, j, d});
    }
  return a;
}

PointArray project_array(const SchurFamily& family, const AngleParameter& endpoint, double t,
                         std::span<const Vec6i> orbit, double collision_tol) {
  PointArray a = project_array_at(rotation_path(family, endpoint, t), orbit, collision_tol);
  a.t = t;
  a.subgroup = family.subgroup();
  a.endpoint = endpoint;
  return a;
}

std::optional<LatticeFit> detect_lattice_3d(std::span<const Vec3> input, double tolerance) {
  if (input.size() < 20)
    throw std::invalid_argument("lattice detection needs at least 20 points");
  if (std::none_of(input.begin(), input.end(), [](const Vec3& p) { return p.norm() < 1e-9; }))
    throw std::invalid_argument("lattice detection needs the origin among the points");

  // merge coincident points
  std::vector<Vec3> pts;
  {
    std::vector<Vec3> merged;
    SpatialHash hash(1e-3);
    for (const auto& p : input) {
      if (hash.has_match(p, 1e-9))
        continue;
      hash.add(p);
      merged.push_back(p);
    }
    pts = std::move(merged);
  }

  struct Diff {
    double len;
    Vec3 v;
  };
  std::vector<Diff> diffs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Vec3 d = pts[j] - pts[i];
      // one representative per +-pair
      if (d[0] < -1e-12 || (std::abs(d[0]) <= 1e-12 && (d[1] < -1e-12 || (std::abs(d[1]) <= 1e-12 && d[2] < 0))))
        d = -d;
      diffs.push_back({d.norm(), d});
    }
  std::sort(diffs.begin(), diffs.end(), [](const Diff& a, const Diff& b) {
    return std::tie(a.len, a.v[0], a.v[1], a.v[2]) < std::tie(b.len, b.v[0], b.v[1], b.v[2]);
  });
  std::vector<Vec3> cand;
  for (const auto& d : diffs) {
    if (d.len < 1e-9)
      continue;
    if (std::any_of(cand.begin(), cand.end(), [&](const Vec3& c) { return (c - d.v).norm() < 1e-9; }))
      continue;
    cand.push_back(d.v);
    if (cand.size() == 40)
      break;
  }

  double best = std::numeric_limits<double>::infinity();
  Mat3 basis = Mat3::Zero();
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j)
      for (std::size_t k = j + 1; k < cand.size(); ++k) {
        const double vol = std::abs(cand[i].dot(cand[j].cross(cand[k])));
        const double scale = cand[i].norm() * cand[j].norm() * cand[k].norm();
        if (vol < 1e-6 * scale)
          continue;
        if (vol < best * (1 - 1e-9)) {
          best = vol;
          basis.col(0) = cand[i];
          basis.col(1) = cand[j];
          basis.col(2) = cand[k];
        }
      }
  if (!std::isfinite(best))
    return std::nullopt;

  const Mat3 inv = basis.inverse();
  std::vector<Vec3> coeffs;
  for (const auto& p : pts)
    coeffs.push_back((inv * p).array().round().matrix());
  // least squares: B = (sum p n^T)(sum n n^T)^-1
  Mat3 pn = Mat3::Zero(), nn = Mat3::Zero();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pn += pts[i] * coeffs[i].transpose();
    nn += coeffs[i] * coeffs[i].transpose();
  }
  Mat3 refined = basis;
  if (std::abs(nn.determinant()) > 1e-12)
    refined = pn * nn.inverse();
  double residual = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    residual = std::max(residual, (refined * coeffs[i] - pts[i]).norm());
  if (!(residual < tolerance))
    return std::nullopt;
  return LatticeFit{refined, residual};
}

bool check_set_symmetry(std::span<const Vec3> points, std::span<const Mat3> group, double match_tol,
                        double interior_radius) {
  const SpatialHash hash(points, std::max(1e-3, 2 * match_tol));
  for (const auto& g : group)
    for (const auto& p : points) {
      if (p.norm() > interior_radius)
        continue;
      if (!hash.has_match(g * p, match_tol))
        return false;
    }
  return true;
}

double hausdorff_distance(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.empty() && b.empty())
    return 0.0;
  if (a.empty() || b.empty())
    return std::numeric_limits<double>::infinity();
  auto directed = [](std::span<const Vec3> x, std::span<const Vec3> y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) {
        best = std::min(best, (p - q).squaredNorm());
        if (best == 0.0)
          break;
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

double bain_equivalence_check(const SchurFamily& family, const AngleParameter& endpoint, double t,
                              double radius_max) {
  if (!(radius_max > 0.0 && radius_max <= 6.0))
    throw std::invalid_argument("bain check needs radiusMax in (0, 6]");
  const ReductionFrame& frame = ReductionFrame::standard();
  const Mat6 x = rotation_path(family, endpoint, t);
  // slack keeps both constructions away from the radius cut
  const double keep = radius_max + 1e-9;

  // fixed lattice, rotated frame
  std::vector<Vec3> rotated;
  {
    const ProjectorPair pp = projectors(x, frame);
    Mat6 proj;
    proj << pp.parallel, pp.perp;
    for (auto& h : enumerate_hits(proj, build_window(x, frame), keep))
      rotated.push_back(h.point);
  }

  // deformed basis X^-1, fixed frame
  std::vector<Vec3> deformed;
  {
    const Mat6 b = x.inverse();
    const Mat36 par = frame.parallel_rows() * b;
    const Mat36 perp = frame.perp_rows() * b;
    const ProjectionWindow w = window_from_points(voronoi_vertices(perp));
    Mat6 proj;
    proj << par, perp;
    for (auto& h : enumerate_hits(proj, w, keep))
      deformed.push_back(h.point);
  }
  return hausdorff_distance(rotated, deformed);
}

} // namespace qcs
