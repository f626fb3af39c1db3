#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qcschur/cut_project.hpp"
#include "qcschur/verify.hpp"

using namespace qcs;

namespace {

std::vector<Vec3> voronoi_images(const Mat6& rotation) {
  const auto pr = projectors(rotation, ReductionFrame::standard());
  std::vector<Vec3> out;
  for (int m = 0; m < 64; ++m) {
    Vec6 v;
    for (int i = 0; i < 6; ++i)
      v[i] = (m >> i & 1) ? 0.5 : -0.5;
    out.push_back(pr.perp * v);
  }
  return out;
}

std::vector<double> sorted_offsets(const ProjectionWindow& w) {
  std::vector<double> o;
  for (const auto& h : w.half_spaces)
    o.push_back(h.offset);
  std::sort(o.begin(), o.end());
  return o;
}

std::vector<Mat3> parallel_group(const SchurFamily& f, const AngleParameter& e, double t) {
  // top blocks of the rotated frame for the subgroup generators, closed
  const Mat6 rg = f.evaluate(e.scaled(t)) * f.frame();
  std::vector<Mat3> gens;
  for (const auto& g : f.generators())
    gens.push_back((rg.transpose() * g * rg).topLeftCorner<3, 3>());
  return close_group(gens);
}

std::set<Vec6i> preimage_set(const ModelSetPatch& p) {
  return {p.preimages.begin(), p.preimages.end()};
}

AngleParameter first_solution(Subgroup s) { return boundary_solve(SchurFamily::make(s))[0]; }

} // namespace

TEST_SUITE("cut_project") {

TEST_CASE("hypercubic lattices") {
  auto sc = HypercubicLattice::make(LatticeKind::SC);
  auto bcc = HypercubicLattice::make(LatticeKind::BCC);
  auto fcc = HypercubicLattice::make(LatticeKind::FCC);
  CHECK(sc.generator.determinant() == doctest::Approx(1.0));
  CHECK(std::abs(bcc.generator.determinant()) == doctest::Approx(0.5));
  CHECK(std::abs(fcc.generator.determinant()) == doctest::Approx(1.0 / 32.0));
  for (const auto* l : {&sc, &bcc, &fcc})
    for (int c = 0; c < 6; ++c)
      CHECK(l->contains(l->generator.col(c)));
  Vec6 half = Vec6::Constant(0.5);
  CHECK(bcc.contains(half));
  CHECK_FALSE(sc.contains(half));
  Vec6 e1 = Vec6::Zero();
  e1[0] = 1;
  CHECK(sc.contains(e1));
  CHECK(bcc.contains(e1));
  Vec6 f = Vec6::Zero();
  f[0] = f[1] = 0.5;
  CHECK(fcc.contains(f));
  f[1] = -0.5;
  CHECK(fcc.contains(f));
  f[2] = 0.5;
  CHECK_FALSE(fcc.contains(f));
  CHECK(parse_lattice("BCC") == LatticeKind::BCC);
  CHECK_FALSE(parse_lattice("hex").has_value());
}

TEST_CASE("projection window at t = 0") {
  const auto& frame = ReductionFrame::standard();
  auto w = build_window(Mat6::Identity(), frame);
  CHECK(w.half_spaces.size() == 30);
  CHECK(w.vertices.size() == 32);
  // Euler for rhombic faces: V = F + 2
  CHECK(w.vertices.size() == w.half_spaces.size() + 2);
  CHECK(w.diameter() == doctest::Approx(2 * w.circumradius()));

  // support function oracle: every face offset is attained by the 64 images
  // and no image leaves the window
  auto img = voronoi_images(Mat6::Identity());
  for (const auto& h : w.half_spaces) {
    double best = -1e9;
    for (const auto& p : img)
      best = std::max(best, h.normal.dot(p));
    CHECK(best == doctest::Approx(h.offset).epsilon(1e-12));
  }
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (int k = 0; k < 200; ++k) {
    Vec3 u(n(rng), n(rng), n(rng));
    double a = -1e9, b = -1e9;
    for (const auto& p : img)
      a = std::max(a, u.dot(p));
    for (const auto& v : w.vertices)
      b = std::max(b, u.dot(v));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }

  CHECK(window_contains(w, Vec3::Zero()) == Containment::Inside);
  double min_offset = 1e9;
  for (const auto& h : w.half_spaces)
    min_offset = std::min(min_offset, h.offset);
  CHECK(min_offset > 0.3);
  CHECK(window_contains(w, Vec3(10, 0, 0)) == Containment::Outside);
  CHECK(window_contains(w, w.vertices[0]) == Containment::Boundary);
  // centrally symmetric
  for (const auto& v : w.vertices)
    CHECK(window_contains(w, -v) == Containment::Boundary);
}

TEST_CASE("window at a T boundary solution has the same face offsets") {
  auto f = SchurFamily::make(Subgroup::T);
  auto e = first_solution(Subgroup::T);
  auto w0 = build_window(Mat6::Identity(), ReductionFrame::standard());
  auto w1 = build_window(f.evaluate(e), ReductionFrame::standard());
  REQUIRE(w1.half_spaces.size() == 30);
  auto a = sorted_offsets(w0), b = sorted_offsets(w1);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
  CHECK(w1.volume == doctest::Approx(w0.volume).epsilon(1e-9));
}

TEST_CASE("window errors") {
  CHECK_THROWS_AS(build_window(Mat6::Identity(), ReductionFrame::standard(), LatticeKind::BCC),
                  std::invalid_argument);
  // the zero map collapses the window
  CHECK_THROWS_AS(build_window(Mat6::Zero(), ReductionFrame::standard()), SingularFrame);
}

TEST_CASE("projector split is Pythagorean along every path") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3), ut(0, 1);
  for (Subgroup s : {Subgroup::T, Subgroup::D10, Subgroup::D6}) {
    auto f = SchurFamily::make(s);
    auto e = first_solution(s);
    for (int k = 0; k < 300; ++k) {
      auto pr = projectors(f.evaluate(e.scaled(ut(rng))), ReductionFrame::standard());
      Vec6 v;
      for (int i = 0; i < 6; ++i)
        v[i] = u(rng);
      const double lhs = (pr.parallel * v).squaredNorm() + (pr.perp * v).squaredNorm();
      CHECK(lhs == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
    }
  }
}

TEST_CASE("model set basics") {
  auto f = SchurFamily::make(Subgroup::T);
  auto e = first_solution(Subgroup::T);
  auto tiny = enumerate_model_set(f, e, 0.0, 0.4);
  REQUIRE(tiny.points.size() == 1);
  CHECK(tiny.points[0].norm() == 0.0);
  CHECK(tiny.preimages[0] == Vec6i{});

  auto p = enumerate_model_set(f, e, 0.0, 2.0);
  CHECK(p.points.size() == p.preimages.size());
  CHECK(p.boundary.size() == p.points.size());
  double shortest = 1e9;
  for (const auto& x : p.points)
    if (x.norm() > 1e-12)
      shortest = std::min(shortest, x.norm());
  CHECK(shortest == doctest::Approx(std::sqrt(0.5)));

  // every point is the projection of its preimage and the preimage is in the window
  const Mat6 x = rotation_path(f, e, 0.0);
  const auto pr = projectors(x, ReductionFrame::standard());
  const auto w = build_window(x, ReductionFrame::standard());
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    const Vec6 v = to_real(p.preimages[i]);
    CHECK(max_abs(pr.parallel * v - p.points[i]) < 1e-12);
    CHECK(p.points[i].norm() <= 2.0 + 1e-9);
    CHECK(window_contains(w, pr.perp * v) != Containment::Outside);
    CHECK(p.boundary[i] == (window_contains(w, pr.perp * v) == Containment::Boundary));
  }

  CHECK_THROWS_AS(enumerate_model_set(f, e, 0.0, 12.5), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_model_set(f, e, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("patches grow with radius") {
  auto f = SchurFamily::make(Subgroup::D10);
  auto e = first_solution(Subgroup::D10);
  for (double t : {0.0, 0.3}) {
    auto small = enumerate_model_set(f, e, t, 1.5);
    auto big = enumerate_model_set(f, e, t, 2.5);
    auto a = preimage_set(small), b = preimage_set(big);
    CHECK(a.size() < b.size());
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("icosahedral symmetry at both ends of the T path") {
  auto f = SchurFamily::make(Subgroup::T);
  auto e = first_solution(Subgroup::T);
  const double rmax = 3.0;
  for (double t : {0.0, 1.0}) {
    auto p = enumerate_model_set(f, e, t, rmax);
    const Mat6 rg = rotation_path(f, e, t) * f.frame();
    const auto& gens = t == 0.0 ? f.generators() : f.partner_generators();
    std::vector<Mat3> g3;
    for (const auto& g : gens)
      g3.push_back((rg.transpose() * g * rg).topLeftCorner<3, 3>());
    auto group = close_group(g3);
    CHECK(group.size() == (t == 0.0 ? 12u : 60u));
    if (t == 0.0) {
      std::vector<Mat3> ico;
      for (const auto& g : icosahedral_group().generators)
        ico.push_back((rg.transpose() * g.to_real() * rg).topLeftCorner<3, 3>());
      group = close_group(ico);
      CHECK(group.size() == 60u);
    }
    CHECK(check_set_symmetry(p.points, group, 1e-9, rmax - 2.5));
  }
}

TEST_CASE("deleting a point breaks the symmetry check") {
  auto f = SchurFamily::make(Subgroup::T);
  auto e = first_solution(Subgroup::T);
  auto p = enumerate_model_set(f, e, 0.25, 3.0);
  auto group = parallel_group(f, e, 0.25);
  CHECK(check_set_symmetry(p.points, group, 1e-9, 0.5));
  auto pts = p.points;
  auto it = std::find_if(pts.begin(), pts.end(), [](const Vec3& x) { return x.norm() > 0.5 && x.norm() < 1.0; });
  REQUIRE(it != pts.end());
  pts.erase(it);
  CHECK_FALSE(check_set_symmetry(pts, group, 1e-9, 1.0));
}

TEST_CASE("intermediate symmetry under the subgroup blocks") {
  for (Subgroup s : {Subgroup::T, Subgroup::D10, Subgroup::D6}) {
    auto f = SchurFamily::make(s);
    auto e = first_solution(s);
    auto p = enumerate_model_set(f, e, 0.5, 3.0);
    auto group = parallel_group(f, e, 0.5);
    CHECK(group.size() == subgroup_group(s).order());
    CHECK(check_set_symmetry(p.points, group, 1e-9, 0.5));
  }
}

TEST_CASE("lattice detection") {
  // synthetic lattice with a skew basis
  Mat3 b;
  b << 1.0, 0.3, 0.1, 0.0, 1.2, -0.2, 0.0, 0.0, 0.9;
  std::vector<Vec3> pts;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      for (int k = -2; k <= 2; ++k)
        pts.push_back(b * Vec3(i, j, k));
  auto fit = detect_lattice_3d(pts);
  REQUIRE(fit);
  CHECK(fit->residual < 1e-12);
  CHECK(std::abs(fit->basis.determinant()) == doctest::Approx(std::abs(b.determinant())));

  auto jittered = pts;
  jittered[7] += Vec3(1e-4, 0, 0);
  CHECK_FALSE(detect_lattice_3d(jittered));

  std::vector<Vec3> few(pts.begin(), pts.begin() + 10);
  CHECK_THROWS_AS(detect_lattice_3d(few), std::invalid_argument);
  auto no_origin = pts;
  no_origin.erase(std::find_if(no_origin.begin(), no_origin.end(), [](const Vec3& x) { return x.norm() < 1e-12; }));
  CHECK_THROWS_AS(detect_lattice_3d(no_origin), std::invalid_argument);
}

TEST_CASE("lattices appear half way along the T and D6 paths") {
  auto t = SchurFamily::make(Subgroup::T);
  auto et = first_solution(Subgroup::T);
  auto s0 = enumerate_model_set(t, et, 0.0, 4.0);
  CHECK_FALSE(detect_lattice_3d(s0.points, 1e-6));
  auto s5 = enumerate_model_set(t, et, 0.5, 4.0);
  auto fit = detect_lattice_3d(s5.points);
  REQUIRE(fit);
  CHECK(fit->residual < 1e-8);

  auto d6 = SchurFamily::make(Subgroup::D6);
  auto m = enumerate_model_set(d6, first_solution(Subgroup::D6), 0.5, 4.0);
  auto fit6 = detect_lattice_3d(m.points);
  REQUIRE(fit6);
  CHECK(fit6->residual < 1e-8);
}

TEST_CASE("orbits") {
  auto ico = icosahedral_group();
  auto orb = orbit_array(ico, {1, 0, 0, 0, 0, 0});
  CHECK(orb.size() == 12);
  for (const auto& v : orb) {
    int nz = 0;
    for (int x : v)
      nz += x != 0;
    CHECK(nz == 1);
  }
  CHECK(std::is_sorted(orb.begin(), orb.end()));
  for (Subgroup s : {Subgroup::T, Subgroup::D10, Subgroup::D6}) {
    auto g = subgroup_group(s);
    for (const Vec6i& seed : {Vec6i{1, 0, 0, 0, 0, 0}, Vec6i{1, 1, 0, 0, 0, 0}, Vec6i{2, -1, 0, 3, 0, 1}})
      CHECK(g.order() % orbit_array(g, seed).size() == 0);
  }
  CHECK(orbit_array(closure(std::vector<SignedPermMatrix>{}), {1, 0, 0, 0, 0, 0}).size() == 1);
  CHECK(orbit_array(ico, {0, 0, 0, 0, 0, 0}).size() == 1);
}

TEST_CASE("D6 array: icosahedron, hexagonal prism, icosahedron") {
  auto f = SchurFamily::make(Subgroup::D6);
  const AngleParameter e{std::atan(0.5), std::atan(2.0)};
  auto orb = orbit_array(icosahedral_group(), {1, 0, 0, 0, 0, 0});

  auto is_icosahedron = [](const std::vector<Vec3>& p) {
    if (p.size() != 12)
      return false;
    double dmin = 1e9;
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = i + 1; j < 12; ++j)
        dmin = std::min(dmin, (p[i] - p[j]).norm());
    for (std::size_t i = 0; i < 12; ++i) {
      if (std::abs(p[i].norm() - p[0].norm()) > 1e-9)
        return false;
      int nn = 0;
      for (std::size_t j = 0; j < 12; ++j)
        nn += i != j && std::abs((p[i] - p[j]).norm() - dmin) < 1e-9;
      if (nn != 5)
        return false;
    }
    return true;
  };

  auto c0 = project_array(f, e, 0.0, orb);
  auto c1 = project_array(f, e, 1.0, orb);
  CHECK(is_icosahedron(c0.points));
  CHECK(is_icosahedron(c1.points));
  double far = 0.0;
  for (const auto& p : c1.points) {
    double near = 1e9;
    for (const auto& q : c0.points)
      near = std::min(near, (p - q).norm());
    far = std::max(far, near);
  }
  CHECK(far > 0.1);

  // prism: heights along the 3-fold axis split 6/6, each layer a regular hexagon
  auto c5 = project_array(f, e, 0.5, orb);
  CHECK(c5.collisions.empty());
  const auto group = parallel_group(f, e, 0.5);
  Vec3 axis = Vec3::Zero();
  for (const auto& g : group)
    if (std::abs(g.trace()) < 1e-9) {  // order-3 rotation
      Eigen::JacobiSVD<Mat3> svd(g - Mat3::Identity(), Eigen::ComputeFullV);
      axis = svd.matrixV().col(2);
    }
  REQUIRE(axis.norm() > 0.5);
  std::vector<Vec3> up, down;
  for (const auto& p : c5.points)
    (p.dot(axis) > 0 ? up : down).push_back(p);
  REQUIRE(up.size() == 6);
  REQUIRE(down.size() == 6);
  for (auto* layer : {&up, &down}) {
    const double h = (*layer)[0].dot(axis);
    double side = -1;
    for (const auto& p : *layer) {
      CHECK(p.dot(axis) == doctest::Approx(h).epsilon(1e-9));
      double nearest = 1e9;
      for (const auto& q : *layer)
        if (&p != &q)
          nearest = std::min(nearest, (p - q).norm());
      if (side < 0)
        side = nearest;
      CHECK(nearest == doctest::Approx(side).epsilon(1e-9));
      CHECK((p - h * axis).norm() == doctest::Approx(side).epsilon(1e-9));  // hexagon: radius = side
    }
  }
}

TEST_CASE("D10 five-fold vertices meet at the origin half way") {
  auto f = SchurFamily::make(Subgroup::D10);
  const AngleParameter e{std::numbers::pi / 2};
  auto orb = orbit_array(icosahedral_group(), {1, 0, 0, 0, 0, 0});
  auto mid = project_array(f, e, 0.5, orb);
  REQUIRE(mid.collisions.size() == 1);
  const auto& c = mid.collisions[0];
  CHECK(mid.points[c.first].norm() < 1e-9);
  Vec6i sum{};
  for (int i = 0; i < 6; ++i)
    sum[i] = mid.preimages[c.first][i] + mid.preimages[c.second][i];
  CHECK(sum == Vec6i{});
  for (int k = 0; k <= 10; ++k) {
    if (k == 5)
      continue;
    CHECK(project_array(f, e, k / 10.0, orb).collisions.empty());
  }
}

TEST_CASE("Hausdorff distance") {
  std::vector<Vec3> a{Vec3(0, 0, 0), Vec3(1, 0, 0)};
  std::vector<Vec3> b{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 3, 0)};
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(hausdorff_distance(a, b) == doctest::Approx(3.0));
  CHECK(hausdorff_distance(b, a) == doctest::Approx(3.0));
}

TEST_CASE("Bain equivalence") {
  for (Subgroup s : {Subgroup::T, Subgroup::D10, Subgroup::D6}) {
    auto f = SchurFamily::make(s);
    auto e = first_solution(s);
    for (double t : {0.0, 0.5, 1.0})
      CHECK(bain_equivalence_check(f, e, t, 2.5) < 1e-9);
  }
  auto f = SchurFamily::make(Subgroup::T);
  CHECK_THROWS_AS(bain_equivalence_check(f, first_solution(Subgroup::T), 0.5, 7.0), std::invalid_argument);
}

}
