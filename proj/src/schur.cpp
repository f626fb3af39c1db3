#include "qcschur/schur.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

namespace qcs {

namespace {

using std::numbers::pi;
using Residuals = Eigen::Matrix<double, 36, 1>;

void rotate_pair(Mat6& x, int i, int j, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  x(i, i) = c;
  x(i, j) = -s;
  x(j, i) = s;
  x(j, j) = c;
}

struct Candidate {
  std::vector<double> seed;
};

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

AngleParameter refine(const SchurFamily& family, const std::vector<double>& seed, double tolerance,
                      int max_iterations) {
  const int n = static_cast<int>(seed.size());
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(seed.data(), n);
  auto entries = [&](const Eigen::VectorXd& v) {
    return off_block_entries(family, AngleParameter(std::vector<double>(v.data(), v.data() + n)));
  };
  Residuals r = entries(x);
  constexpr double h = 1e-6;
  for (int it = 0; it < max_iterations; ++it) {
    if (r.cwiseAbs().maxCoeff() < tolerance) {
      std::vector<double> out(x.data(), x.data() + n);
      for (auto& a : out)
        a = wrap_angle(a);
      return AngleParameter(out);
    }
    // central differences: the derivative of the quadratic through x-h, x, x+h
    Eigen::Matrix<double, 36, Eigen::Dynamic> jac(36, n);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      jac.col(i) = (entries(xp) - entries(xm)) / (2 * h);
    }
    Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
    double lambda = 1.0;
    Residuals next = entries(x + step);
    while (next.norm() > r.norm() && lambda > 1e-4) {
      lambda /= 2;
      next = entries(x + lambda * step);
    }
    x += lambda * step;
    r = next;
  }
  if (r.cwiseAbs().maxCoeff() < tolerance) {
    std::vector<double> out(x.data(), x.data() + n);
    for (auto& a : out)
      a = wrap_angle(a);
    return AngleParameter(out);
  }
  char msg[160];
  std::snprintf(msg, sizeof msg, "refinement did not reach %.3g within %d iterations (residual %.3g)",
                tolerance, max_iterations, r.cwiseAbs().maxCoeff());
  throw SolverFailure(msg, AngleParameter(seed));
}

std::vector<Candidate> scan_circle(const SchurFamily& family, double grid_offset,
                                   const BoundaryScan& scan) {
  const int n = static_cast<int>(std::lround(360.0 / scan.step_s1));
  const double h = 2 * pi / n;
  std::vector<double> res(n);
  auto angle = [&](int k) { return -pi + (k + grid_offset) * h; };
  for (int k = 0; k < n; ++k)
    res[k] = off_block_residual_at(family, AngleParameter{angle(k)});
  std::vector<Candidate> out;
  for (int k = 0; k < n; ++k) {
    double prev = res[(k + n - 1) % n], next = res[(k + 1) % n];
    if (res[k] < scan.seed_threshold && res[k] <= prev && res[k] <= next)
      out.push_back({{angle(k)}});
  }
  return out;
}

std::vector<Candidate> scan_torus(const SchurFamily& family, double grid_offset,
                                  const BoundaryScan& scan) {
  const int n = static_cast<int>(std::lround(360.0 / scan.step_t2));
  const double h = 2 * pi / n;
  auto angle = [&](int k) { return -pi + (k + grid_offset) * h; };
  std::vector<double> res(static_cast<std::size_t>(n) * n);
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(n));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers))
        for (int j = 0; j < n; ++j)
          res[static_cast<std::size_t>(i) * n + j] =
              off_block_residual_at(family, AngleParameter{angle(i), angle(j)});
    }));
  }
  for (auto& f : jobs)
    f.get();
  auto at = [&](int i, int j) {
    return res[static_cast<std::size_t>((i + n) % n) * n + (j + n) % n];
  };
  std::vector<Candidate> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = at(i, j);
      if (v >= scan.seed_threshold)
        continue;
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && at(i + di, j + dj) < v) {
            minimum = false;
            break;
          }
      if (minimum)
        out.push_back({{angle(i), angle(j)}});
    }
  }
  return out;
}

} // namespace

double wrap_angle(double x) {
  double r = std::remainder(x, 2 * pi);  // [-pi, pi]
  if (r <= -pi)
    r += 2 * pi;
  return r;
}

double angular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

AngleParameter::AngleParameter(std::vector<double> values) : v_(std::move(values)) {
  if (v_.empty() || v_.size() > 2)
    throw std::invalid_argument("angle parameter needs 1 or 2 values");
  for (auto& a : v_) {
    if (!std::isfinite(a))
      throw std::invalid_argument("angle parameter must be finite");
    a = wrap_angle(a);
  }
}

AngleParameter AngleParameter::operator+(const AngleParameter& o) const {
  if (o.size() != size())
    throw ArityMismatch("cannot add angle parameters of different arity");
  std::vector<double> out(v_);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += o.v_[i];
  return AngleParameter(out);
}

AngleParameter AngleParameter::scaled(double t) const {
  std::vector<double> out(v_);
  for (auto& a : out)
    a *= t;
  return AngleParameter(out);
}

double AngleParameter::distance(const AngleParameter& o) const {
  if (o.size() != size())
    throw ArityMismatch("cannot compare angle parameters of different arity");
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    d = std::max(d, angular_distance(v_[i], o.v_[i]));
  return d;
}

SchurFamily SchurFamily::make(Subgroup s, const ConstantTables& tables) {
  SchurFamily f;
  f.subgroup_ = s;
  f.frame_ = tables.frame.to_real();
  const auto& st = tables.subgroup(s);
  f.conjugator_ = f.frame_ * direct_sum(st.reducer1, st.reducer2);
  for (int i = 0; i < 2; ++i) {
    f.generators_[i] = st.generators[i].to_real();
    f.partner_[i] = st.partner_generators[i].to_real();
  }
  return f;
}

Mat6 SchurFamily::block_form(const AngleParameter& angles) const {
  if (angles.size() != arity())
    throw ArityMismatch(to_string(subgroup_) + " family takes " + std::to_string(arity()) +
                        " angle(s), got " + std::to_string(angles.size()));
  Mat6 x = Mat6::Identity();
  switch (subgroup_) {
    case Subgroup::T:
      for (int i = 0; i < 3; ++i)
        rotate_pair(x, i, i + 3, angles[0]);
      break;
    case Subgroup::D10:
      rotate_pair(x, 0, 3, angles[0]);
      break;
    case Subgroup::D6:
      // alpha turns the two E planes, beta the A2 pair; with this labelling
      // the closed-form solution set and the prism path line up
      rotate_pair(x, 0, 3, angles[1]);
      rotate_pair(x, 1, 4, angles[0]);
      rotate_pair(x, 2, 5, angles[0]);
      break;
  }
  return x;
}

Mat6 SchurFamily::evaluate(const AngleParameter& angles) const {
  return conjugator_ * block_form(angles) * conjugator_.transpose();
}

double commutation_residual(const SchurFamily& family, const AngleParameter& angles) {
  const Mat6 x = family.evaluate(angles);
  double r = 0.0;
  for (const auto& g : family.generators())
    r = std::max(r, max_abs(x * g - g * x));
  return r;
}

Eigen::Matrix<double, 36, 1> off_block_entries(const SchurFamily& family,
                                               const AngleParameter& angles) {
  const Mat6 rg = family.evaluate(angles) * family.frame();
  Eigen::Matrix<double, 36, 1> out;
  int k = 0;
  for (const auto& g : family.partner_generators()) {
    const Mat6 m = rg.transpose() * g * rg;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        out[k++] = m(i, 3 + j);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        out[k++] = m(3 + i, j);
  }
  return out;
}

double off_block_residual_at(const SchurFamily& family, const AngleParameter& angles) {
  return off_block_entries(family, angles).cwiseAbs().maxCoeff();
}

bool canonical_less(const AngleParameter& a, const AngleParameter& b) {
  auto norm = [](const AngleParameter& p) {
    double s = 0.0;
    for (double v : p.values())
      s += v * v;
    return std::sqrt(s);
  };
  const double na = norm(a), nb = norm(b);
  if (std::abs(na - nb) > 1e-9)
    return na < nb;
  return b.values() < a.values();
}

std::vector<AngleParameter> boundary_solve(const SchurFamily& family, double tolerance,
                                           double grid_offset, const BoundaryScan& scan) {
  if (!(tolerance > 0.0 && tolerance <= 1e-6))
    throw std::invalid_argument("boundary_solve tolerance must be in (0, 1e-6]");
  if (!(grid_offset >= 0.0 && grid_offset < 1.0))
    throw std::invalid_argument("grid offset must be in [0, 1)");
  const auto seeds = family.arity() == 1 ? scan_circle(family, grid_offset, scan)
                                         : scan_torus(family, grid_offset, scan);
  std::vector<AngleParameter> found;
  for (const auto& c : seeds) {
    AngleParameter p = refine(family, c.seed, tolerance, scan.max_iterations);
    bool duplicate = std::any_of(found.begin(), found.end(),
                                 [&](const AngleParameter& q) { return q.distance(p) < scan.dedupe; });
    if (!duplicate)
      found.push_back(p);
  }
  std::sort(found.begin(), found.end(), canonical_less);
  return found;
}

Mat6 rotation_path(const SchurFamily& family, const AngleParameter& endpoint, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("path parameter t must lie in [0, 1]");
  const double r = off_block_residual_at(family, endpoint);
  if (!(r < 1e-9)) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "endpoint is not a boundary solution (residual %.3g)", r);
    throw std::invalid_argument(msg);
  }
  return family.evaluate(endpoint.scaled(t));
}

AnglePath::AnglePath(std::vector<AngleParameter> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2)
    throw std::invalid_argument("angle path needs at least two waypoints");
  for (const auto& w : waypoints_)
    if (w.size() != waypoints_.front().size())
      throw ArityMismatch("angle path waypoints differ in arity");
}

AngleParameter AnglePath::at(double t) const {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("path parameter t must lie in [0, 1]");
  const std::size_t segments = waypoints_.size() - 1;
  const double u = t * static_cast<double>(segments);
  const std::size_t k = std::min(segments - 1, static_cast<std::size_t>(u));
  const double f = u - static_cast<double>(k);
  const auto& a = waypoints_[k].values();
  const auto& b = waypoints_[k + 1].values();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] + f * (b[i] - a[i]);
  return AngleParameter(out);
}

Mat6 rotation_path(const SchurFamily& family, const AnglePath& path, double t) {
  const auto& first = path.waypoints().front();
  for (double v : first.values())
    if (v != 0.0)
      throw std::invalid_argument("angle path must start at zero");
  const double r = off_block_residual_at(family, path.waypoints().back());
  if (!(r < 1e-9))
    throw std::invalid_argument("angle path must end at a boundary solution");
  return family.evaluate(path.at(t));
}

} // namespace qcs
