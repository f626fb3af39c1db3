// qcschur: verification suites, boundary angles, model sets, point arrays
// and Bain checks from the command line.
//
// Exit codes: 0 success, 1 verification or I/O failure, 2 usage error,
// 3 solver failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcschur/cut_project.hpp"
#include "qcschur/io.hpp"
#include "qcschur/run_config.hpp"
#include "qcschur/schur.hpp"
#include "qcschur/verify.hpp"

namespace fs = std::filesystem;
using namespace qcs;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kSolver = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raw flag values; applied on top of an optional --config document.
struct Flags {
  std::string config;
  std::string subgroup;
  std::size_t endpoint = 0;
  std::string angles;
  double t = 0.0;
  std::string sweep;
  double rmax = 0.0;
  std::string lattice;
  std::string output;
  std::string format;
  std::string seed;
  std::string axis;
  double tolerance = 0.0;
  std::vector<std::string> only;
  std::string constants;
};

struct Options {
  CLI::App* app = nullptr;
  CLI::Option* subgroup = nullptr;
  CLI::Option* endpoint = nullptr;
  CLI::Option* angles = nullptr;
  CLI::Option* t = nullptr;
  CLI::Option* sweep = nullptr;
  CLI::Option* rmax = nullptr;
  CLI::Option* lattice = nullptr;
  CLI::Option* output = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* axis = nullptr;
  CLI::Option* tolerance = nullptr;
};

bool given(const CLI::Option* o) { return o && o->count() > 0; }

RunConfig resolve(const std::string& command, const Flags& f, const Options& o) {
  RunConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in)
      throw ConfigError("cannot read config file " + f.config);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    c = config_from_json(doc);
  }
  c.command = command;
  if (given(o.subgroup))
    c.subgroup = *parse_subgroup(f.subgroup);
  if (given(o.endpoint))
    c.endpoint_index = f.endpoint;
  if (given(o.angles))
    c.angles = parse_real_list(f.angles);
  if (given(o.t))
    c.t_values = {f.t};
  if (given(o.sweep))
    c.t_values = parse_real_list(f.sweep);
  if (given(o.rmax))
    c.radius_max = f.rmax;
  if (given(o.lattice))
    c.lattice = *parse_lattice(f.lattice);
  if (given(o.output))
    c.output = f.output;
  if (given(o.format))
    c.format = *parse_format(f.format);
  if (given(o.seed))
    c.seed = parse_seed(f.seed);
  if (given(o.axis)) {
    auto a = parse_real_list(f.axis);
    if (a.size() != 3)
      throw ConfigError("--axis needs three components");
    c.axis = Vec3(a[0], a[1], a[2]);
  }
  if (given(o.tolerance))
    c.boundary_tolerance = f.tolerance;
  c.validate();
  return c;
}

// A configured state: boundary endpoint (or explicit angles) and family.
struct State {
  SchurFamily family;
  AngleParameter endpoint;
  bool explicit_angles = false;

  Mat6 rotation(double t) const {
    return explicit_angles ? family.evaluate(endpoint.scaled(t)) : rotation_path(family, endpoint, t);
  }
};

State make_state(const RunConfig& c) {
  State s{SchurFamily::make(c.subgroup), AngleParameter{}, false};
  if (c.angles) {
    s.endpoint = AngleParameter(*c.angles);
    s.explicit_angles = true;
    return s;
  }
  auto solutions = boundary_solve(s.family, c.boundary_tolerance);
  c.validate_endpoint(solutions.size());
  s.endpoint = solutions[c.endpoint_index];
  return s;
}

std::string extension(OutputFormat f) { return to_string(f); }

std::string t_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

std::string default_dir() {
  const char* env = std::getenv("QCSCHUR_OUTPUT_DIR");
  return env ? env : "";
}

// Single t: the --output file, else a file in $QCSCHUR_OUTPUT_DIR, else stdout.
// Sweeps: one file per t inside the --output directory (or the env default, or ".").
fs::path target_for(const RunConfig& c, const std::string& stem, double t, bool sweep) {
  const std::string name = stem + "_" + to_string(c.subgroup) + "_t" + t_label(t) + "." + extension(c.format);
  if (sweep) {
    fs::path dir = !c.output.empty() ? fs::path(c.output) : !default_dir().empty() ? fs::path(default_dir()) : fs::path(".");
    fs::create_directories(dir);
    return dir / name;
  }
  if (!c.output.empty())
    return c.output;
  if (!default_dir().empty()) {
    fs::create_directories(default_dir());
    return fs::path(default_dir()) / name;
  }
  return {};
}

void emit(const fs::path& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out)
    throw std::runtime_error("write failed for " + path.string());
  std::cerr << "wrote " << path.string() << '\n';
}

std::string angles_text(const AngleParameter& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (i ? "," : "") + format_g15(a[i]);
  return s;
}

int cmd_verify(const Flags& f) {
  ConstantTables tables = ConstantTables::standard();
  if (!f.constants.empty()) {
    std::ifstream in(f.constants);
    if (!in)
      throw std::runtime_error("cannot read constants file " + f.constants);
    nlohmann::json doc;
    in >> doc;
    tables = tables_from_json(doc);
  }
  const auto results = run_verification(tables, f.only);
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::printf("%-4s  %-12s %-28s %s\n", r.passed ? "PASS" : "FAIL", r.suite.c_str(), r.name.c_str(),
                r.detail.c_str());
    passed += r.passed;
  }
  std::printf("%zu/%zu checks passed\n", passed, results.size());
  for (const auto& r : results)
    if (!r.passed)
      std::fprintf(stderr, "failed: %s (%s)\n", r.name.c_str(), r.detail.c_str());
  return passed == results.size() ? kOk : kFailure;
}

int cmd_boundary(const RunConfig& c) {
  auto family = SchurFamily::make(c.subgroup);
  auto solutions = boundary_solve(family, c.boundary_tolerance);
  emit(c.output.empty() ? fs::path() : fs::path(c.output),
       boundary_report(family, solutions).dump(2) + "\n");
  return kOk;
}

std::string render_patch(const RunConfig& c, const ModelSetPatch& p) {
  std::ostringstream out;
  switch (c.format) {
    case OutputFormat::Csv: write_csv(out, p); break;
    case OutputFormat::Json: out << to_json(p).dump(1) << '\n'; break;
    case OutputFormat::Xyz:
      write_xyz(out, p.points, "model set " + to_string(p.subgroup) + " t=" + format_g15(p.t) +
                                   " endpoint=" + angles_text(p.endpoint));
      break;
    case OutputFormat::Svg:
      write_svg(out, p.points, p.boundary, c.axis.value_or(default_axis(c.subgroup)),
                "model set " + to_string(p.subgroup) + " t=" + format_g15(p.t));
      break;
  }
  return out.str();
}

int cmd_modelset(const RunConfig& c) {
  if (c.lattice != LatticeKind::SC)
    throw UsageError("model sets are generated for the SC lattice only");
  const State s = make_state(c);
  const bool sweep = c.t_values.size() > 1;
  for (double t : c.t_values) {
    ModelSetPatch p = enumerate_model_set_at(s.rotation(t), c.radius_max);
    p.t = t;
    p.subgroup = c.subgroup;
    p.endpoint = s.endpoint;
    p.lattice = c.lattice;
    emit(target_for(c, "modelset", t, sweep), render_patch(c, p));
  }
  return kOk;
}

std::string render_array(const RunConfig& c, const PointArray& a) {
  std::ostringstream out;
  switch (c.format) {
    case OutputFormat::Csv: write_csv(out, a); break;
    case OutputFormat::Json: out << to_json(a).dump(1) << '\n'; break;
    case OutputFormat::Xyz:
      write_xyz(out, a.points, "point array " + to_string(a.subgroup) + " t=" + format_g15(a.t) +
                                   " endpoint=" + angles_text(a.endpoint));
      break;
    case OutputFormat::Svg:
      write_svg(out, a.points, {}, c.axis.value_or(default_axis(c.subgroup)),
                "point array " + to_string(a.subgroup) + " t=" + format_g15(a.t));
      break;
  }
  return out.str();
}

int cmd_array(const RunConfig& c) {
  const State s = make_state(c);
  const auto orbit = orbit_array(icosahedral_group(), c.seed);
  const bool sweep = c.t_values.size() > 1;
  std::vector<PointArray> arrays;
  for (double t : c.t_values) {
    PointArray a = project_array_at(s.rotation(t), orbit);
    a.t = t;
    a.subgroup = c.subgroup;
    a.endpoint = s.endpoint;
    for (const auto& e : a.collisions)
      std::fprintf(stderr, "collision at t=%s: points %zu and %zu (distance %.3g)\n",
                   format_g15(t).c_str(), e.first, e.second, e.distance);
    emit(target_for(c, "array", t, sweep), render_array(c, a));
    arrays.push_back(std::move(a));
  }
  if (sweep) {
    fs::path dir = target_for(c, "array", c.t_values.front(), true).parent_path();
    emit(dir / ("trajectory_" + to_string(c.subgroup) + ".json"), trajectory_json(arrays).dump(1) + "\n");
  }
  return kOk;
}

int cmd_bain(const RunConfig& c) {
  if (c.radius_max > 6.0)
    throw UsageError("bain-check needs --rmax <= 6");
  const State s = make_state(c);
  if (s.explicit_angles)
    throw UsageError("bain-check runs along a boundary path; use --endpoint, not --angles");
  bool ok = true;
  nlohmann::json rows = nlohmann::json::array();
  for (double t : c.t_values) {
    const double d = bain_equivalence_check(s.family, s.endpoint, t, c.radius_max);
    ok = ok && d < 1e-9;
    rows.push_back({{"t", t}, {"hausdorff", round_g15(d)}, {"pass", d < 1e-9}});
  }
  nlohmann::json doc{{"subgroup", to_string(c.subgroup)},
                     {"endpoint", s.endpoint.values()},
                     {"rmax", c.radius_max},
                     {"samples", rows}};
  emit(c.output.empty() ? fs::path() : fs::path(c.output), doc.dump(2) + "\n");
  return ok ? kOk : kFailure;
}

int cmd_export(const RunConfig& c) {
  emit(c.output.empty() ? fs::path() : fs::path(c.output),
       tables_to_json(ConstantTables::standard()).dump(2) + "\n");
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur rotations between icosahedral frames and the model sets they carry"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "RunConfig JSON document (flags override it)");

  const std::vector<std::string> subgroups{"T", "D10", "D6"};
  auto common = [&](CLI::App* sub, Options& o, bool with_state) {
    o.app = sub;
    o.subgroup = sub->add_option("--subgroup", f.subgroup, "T, D10 or D6")->check(CLI::IsMember(subgroups));
    o.tolerance = sub->add_option("--tolerance", f.tolerance, "boundary solver tolerance");
    o.output = sub->add_option("-o,--output", f.output, "output file (directory for sweeps)");
    if (with_state) {
      o.endpoint = sub->add_option("--endpoint", f.endpoint, "index into the sorted boundary solutions");
      o.angles = sub->add_option("--angles", f.angles, "explicit angles a[,b] instead of an endpoint");
      o.t = sub->add_option("--t", f.t, "path parameter in [0, 1]");
      o.sweep = sub->add_option("--sweep", f.sweep, "comma-separated t values");
      o.t->excludes(o.sweep);
    }
  };

  Options verify_o, boundary_o, modelset_o, array_o, bain_o, export_o;
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--only", f.only, "restrict to suites")
      ->check(CLI::IsMember(verification_suites()));
  verify->add_option("--constants", f.constants, "constant tables JSON (as from export-constants)");

  auto* boundary = app.add_subcommand("boundary-angles", "boundary solutions as JSON");
  boundary->alias("boundary");
  common(boundary, boundary_o, false);
  boundary_o.subgroup->required();

  auto* modelset = app.add_subcommand("modelset", "model-set patch at t");
  common(modelset, modelset_o, true);
  modelset_o.rmax = modelset->add_option("--rmax", f.rmax, "patch radius, at most 12");
  modelset_o.lattice = modelset->add_option("--lattice", f.lattice, "SC (BCC, FCC have no window)")
                           ->check(CLI::IsMember({"SC", "BCC", "FCC"}));
  modelset_o.format = modelset->add_option("--format", f.format, "csv, json, xyz or svg")
                          ->check(CLI::IsMember({"csv", "json", "xyz", "svg"}));
  modelset_o.axis = modelset->add_option("--axis", f.axis, "SVG view axis x,y,z");

  auto* array = app.add_subcommand("array", "projected orbit of a lattice point under the icosahedral group");
  common(array, array_o, true);
  array_o.seed = array->add_option("--seed", f.seed, "e1..e6 or six integers");
  array_o.format = array->add_option("--format", f.format, "csv, json, xyz or svg")
                       ->check(CLI::IsMember({"csv", "json", "xyz", "svg"}));
  array_o.axis = array->add_option("--axis", f.axis, "SVG view axis x,y,z");

  auto* bain = app.add_subcommand("bain-check", "deformed-basis versus rotated-frame Hausdorff distance");
  common(bain, bain_o, true);
  bain_o.rmax = bain->add_option("--rmax", f.rmax, "patch radius, at most 6");

  auto* exporter = app.add_subcommand("export-constants", "constant tables as JSON");
  export_o.output = exporter->add_option("-o,--output", f.output, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed())
      return cmd_verify(f);
    if (boundary->parsed())
      return cmd_boundary(resolve("boundary", f, boundary_o));
    if (modelset->parsed())
      return cmd_modelset(resolve("modelset", f, modelset_o));
    if (array->parsed())
      return cmd_array(resolve("array", f, array_o));
    if (bain->parsed()) {
      RunConfig c = resolve("bain-check", f, bain_o);
      if (!given(bain_o.rmax) && f.config.empty())
        c.radius_max = 3.0;
      return cmd_bain(c);
    }
    if (exporter->parsed())
      return cmd_export(resolve("export-constants", f, export_o));
  } catch (const SolverFailure& e) {
    std::fprintf(stderr, "solver failure: %s (seed %s)\n", e.what(), angles_text(e.seed).c_str());
    return kSolver;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "usage error: malformed JSON input: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kUsage;
}
