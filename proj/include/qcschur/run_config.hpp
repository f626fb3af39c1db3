// Run parameters for the command-line tool, from flags or a JSON document.

#ifndef QCSCHUR_RUN_CONFIG_HPP_
#define QCSCHUR_RUN_CONFIG_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qcschur/cut_project.hpp"

namespace qcs {

enum class OutputFormat { Csv, Json, Xyz, Svg };
std::string to_string(OutputFormat f);
std::optional<OutputFormat> parse_format(std::string_view s);

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  Subgroup subgroup = Subgroup::T;
  std::size_t endpoint_index = 0;
  std::optional<std::vector<double>> angles;  // overrides the endpoint index
  std::vector<double> t_values{0.0};
  double radius_max = 4.0;
  LatticeKind lattice = LatticeKind::SC;
  std::string output;  // file, directory for sweeps, or empty for stdout
  OutputFormat format = OutputFormat::Csv;
  Vec6i seed{1, 0, 0, 0, 0, 0};
  std::optional<Vec3> axis;
  double boundary_tolerance = 1e-12;
  double match_tolerance = 1e-9;

  /// Range checks: every t in [0, 1], radius_max in (0, 12], tolerances
  /// positive, angles of the subgroup's arity. Throws ConfigError.
  void validate() const;
  /// Also checks endpoint_index < solution_count.
  void validate_endpoint(std::size_t solution_count) const;
};

/// Keys mirror the field names (subgroup, endpoint, angles, t, sweep,
/// rmax, lattice, output, format, seed, axis, tolerance, match_tolerance).
/// Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});

/// "e3", "-e2" or six comma-separated integers.
Vec6i parse_seed(std::string_view text);
/// Comma-separated reals.
std::vector<double> parse_real_list(std::string_view text);

} // namespace qcs

#endif
