#include "qcschur/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace qcs {

namespace {

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

nlohmann::json vec3_json(const Vec3& p) { return {p[0], p[1], p[2]}; }

Vec3 vec3_from(const nlohmann::json& j) {
  if (j.size() != 3)
    throw std::invalid_argument("expected a 3-vector");
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

Vec6i vec6i_from(const nlohmann::json& j) {
  if (j.size() != 6)
    throw std::invalid_argument("expected a 6-vector");
  return j.get<Vec6i>();
}

void write_row(std::ostream& out, const Vec3& p, const Vec6i& v, bool flag) {
  out << format_g15(p[0]) << ',' << format_g15(p[1]) << ',' << format_g15(p[2]);
  for (int c : v)
    out << ',' << c;
  out << ',' << (flag ? 1 : 0) << '\n';
}

} // namespace

std::string format_g15(double x) {
  if (x == 0.0)
    return "0";
  std::string s = fmt("%.15g", x);
  if (s == "-0")
    return "0";
  return s;
}

double round_g15(double x) { return std::stod(format_g15(x)); }

void write_csv(std::ostream& out, const ModelSetPatch& patch) {
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < patch.points.size(); ++i)
    write_row(out, patch.points[i], patch.preimages[i], patch.boundary[i]);
}

void write_csv(std::ostream& out, const PointArray& array) {
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < array.points.size(); ++i)
    write_row(out, array.points[i], array.preimages[i], false);
}

void write_xyz(std::ostream& out, std::span<const Vec3> points, const std::string& comment) {
  out << points.size() << '\n' << comment << '\n';
  for (const auto& p : points)
    out << "C " << format_g15(p[0]) << ' ' << format_g15(p[1]) << ' ' << format_g15(p[2]) << '\n';
}

Vec3 default_axis(Subgroup s, const ConstantTables& tables) {
  const auto& st = tables.subgroup(s);
  const Mat3 m = st.block1[1].to_real();
  Eigen::JacobiSVD<Mat3> svd(m - Mat3::Identity(), Eigen::ComputeFullV);
  Vec3 axis = svd.matrixV().col(2);
  Eigen::Index k;
  axis.cwiseAbs().maxCoeff(&k);
  if (axis[k] < 0)
    axis = -axis;
  return axis.normalized();
}

void write_svg(std::ostream& out, std::span<const Vec3> points, const std::vector<bool>& flagged,
               const Vec3& axis_in, const std::string& title) {
  const Vec3 axis = axis_in.normalized();
  Vec3 helper = std::abs(axis[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 u = axis.cross(helper).normalized();
  const Vec3 v = axis.cross(u);

  constexpr double size = 800.0, margin = 40.0;
  double extent = 1e-9, dmin = 0.0, dmax = 0.0;
  for (const auto& p : points) {
    extent = std::max({extent, std::abs(p.dot(u)), std::abs(p.dot(v))});
    dmin = std::min(dmin, p.dot(axis));
    dmax = std::max(dmax, p.dot(axis));
  }
  const double scale = (size / 2 - margin) / extent;
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].dot(axis) < points[b].dot(axis);
  });

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out << "<title>" << title << "</title>\n";
  out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (std::size_t i : order) {
    const Vec3& p = points[i];
    const double depth = dmax > dmin ? (p.dot(axis) - dmin) / (dmax - dmin) : 1.0;
    const double r = 2.0 + 3.0 * depth;
    const double x = size / 2 + scale * p.dot(u);
    const double y = size / 2 - scale * p.dot(v);
    const bool hollow = i < flagged.size() && flagged[i];
    out << "<circle cx=\"" << fmt("%.3f", x) << "\" cy=\"" << fmt("%.3f", y) << "\" r=\""
        << fmt("%.3f", r) << "\" "
        << (hollow ? "fill=\"none\" stroke=\"#c03030\" stroke-width=\"1\""
                   : "fill=\"#203060\" fill-opacity=\"" + fmt("%.3f", 0.35 + 0.65 * depth) + "\"")
        << "/>\n";
  }
  out << "</svg>\n";
}

nlohmann::json to_json(const ModelSetPatch& patch) {
  nlohmann::json doc;
  doc["kind"] = "model_set";
  doc["subgroup"] = to_string(patch.subgroup);
  doc["t"] = patch.t;
  doc["endpoint"] = patch.endpoint.values();
  doc["radius_max"] = patch.radius_max;
  doc["lattice"] = to_string(patch.lattice);
  doc["count"] = patch.points.size();
  doc["boundary_count"] = patch.boundary_count();
  nlohmann::json pts = nlohmann::json::array(), pre = nlohmann::json::array(),
                 flags = nlohmann::json::array();
  for (std::size_t i = 0; i < patch.points.size(); ++i) {
    pts.push_back(vec3_json(patch.points[i]));
    pre.push_back(patch.preimages[i]);
    flags.push_back(static_cast<bool>(patch.boundary[i]));
  }
  doc["points"] = pts;
  doc["preimages"] = pre;
  doc["boundary"] = flags;
  return doc;
}

ModelSetPatch patch_from_json(const nlohmann::json& doc) {
  if (doc.at("kind") != "model_set")
    throw std::invalid_argument("not a model_set document");
  ModelSetPatch p;
  auto sg = parse_subgroup(doc.at("subgroup").get<std::string>());
  auto lk = parse_lattice(doc.at("lattice").get<std::string>());
  if (!sg || !lk)
    throw std::invalid_argument("unknown subgroup or lattice in model_set document");
  p.subgroup = *sg;
  p.lattice = *lk;
  p.t = doc.at("t").get<double>();
  p.endpoint = AngleParameter(doc.at("endpoint").get<std::vector<double>>());
  p.radius_max = doc.at("radius_max").get<double>();
  const auto& pts = doc.at("points");
  const auto& pre = doc.at("preimages");
  const auto& flags = doc.at("boundary");
  if (pts.size() != pre.size() || pts.size() != flags.size())
    throw std::invalid_argument("model_set arrays differ in length");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    p.points.push_back(vec3_from(pts[i]));
    p.preimages.push_back(vec6i_from(pre[i]));
    p.boundary.push_back(flags[i].get<bool>());
  }
  return p;
}

nlohmann::json to_json(const PointArray& a) {
  nlohmann::json doc;
  doc["kind"] = "point_array";
  doc["subgroup"] = to_string(a.subgroup);
  doc["t"] = a.t;
  doc["endpoint"] = a.endpoint.values();
  doc["count"] = a.points.size();
  nlohmann::json pts = nlohmann::json::array(), pre = nlohmann::json::array(),
                 col = nlohmann::json::array();
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    pts.push_back(vec3_json(a.points[i]));
    pre.push_back(a.preimages[i]);
  }
  for (const auto& c : a.collisions)
    col.push_back({{"first", c.first}, {"second", c.second}, {"distance", c.distance}});
  doc["points"] = pts;
  doc["preimages"] = pre;
  doc["collisions"] = col;
  return doc;
}

PointArray array_from_json(const nlohmann::json& doc) {
  if (doc.at("kind") != "point_array")
    throw std::invalid_argument("not a point_array document");
  PointArray a;
  auto sg = parse_subgroup(doc.at("subgroup").get<std::string>());
  if (!sg)
    throw std::invalid_argument("unknown subgroup in point_array document");
  a.subgroup = *sg;
  a.t = doc.at("t").get<double>();
  a.endpoint = AngleParameter(doc.at("endpoint").get<std::vector<double>>());
  const auto& pts = doc.at("points");
  const auto& pre = doc.at("preimages");
  if (pts.size() != pre.size())
    throw std::invalid_argument("point_array arrays differ in length");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    a.points.push_back(vec3_from(pts[i]));
    a.preimages.push_back(vec6i_from(pre[i]));
  }
  for (const auto& c : doc.at("collisions"))
    a.collisions.push_back({c.at("first").get<std::size_t>(), c.at("second").get<std::size_t>(),
                            c.at("distance").get<double>()});
  return a;
}

nlohmann::json trajectory_json(std::span<const PointArray> sweep) {
  nlohmann::json doc;
  doc["kind"] = "trajectory";
  if (sweep.empty()) {
    doc["t"] = nlohmann::json::array();
    doc["tracks"] = nlohmann::json::array();
    return doc;
  }
  doc["subgroup"] = to_string(sweep.front().subgroup);
  doc["endpoint"] = sweep.front().endpoint.values();
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& a : sweep)
    ts.push_back(a.t);
  doc["t"] = ts;
  nlohmann::json tracks = nlohmann::json::array();
  for (std::size_t i = 0; i < sweep.front().preimages.size(); ++i) {
    nlohmann::json positions = nlohmann::json::array();
    for (const auto& a : sweep) {
      if (a.preimages.size() != sweep.front().preimages.size() ||
          a.preimages[i] != sweep.front().preimages[i])
        throw std::invalid_argument("sweep arrays do not share an orbit");
      positions.push_back(vec3_json(a.points[i]));
    }
    tracks.push_back({{"preimage", sweep.front().preimages[i]}, {"positions", positions}});
  }
  doc["tracks"] = tracks;
  return doc;
}

nlohmann::json boundary_report(const SchurFamily& family, std::span<const AngleParameter> solutions) {
  nlohmann::json doc;
  doc["subgroup"] = to_string(family.subgroup());
  doc["count"] = solutions.size();
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    nlohmann::json angles = nlohmann::json::array();
    for (double v : solutions[i].values())
      angles.push_back(round_g15(v));
    list.push_back({{"index", i},
                    {"angles", angles},
                    {"residual", round_g15(off_block_residual_at(family, solutions[i]))}});
  }
  doc["solutions"] = list;
  return doc;
}

} // namespace qcs
