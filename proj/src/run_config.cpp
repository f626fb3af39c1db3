#include "qcschur/run_config.hpp"

#include <charconv>
#include <cmath>

namespace qcs {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
    --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

} // namespace

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Xyz: return "xyz";
    case OutputFormat::Svg: return "svg";
  }
  return "?";
}

std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "csv")
    return OutputFormat::Csv;
  if (s == "json")
    return OutputFormat::Json;
  if (s == "xyz")
    return OutputFormat::Xyz;
  if (s == "svg")
    return OutputFormat::Svg;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (t_values.empty())
    throw ConfigError("at least one t value is required");
  for (double t : t_values)
    if (!(t >= 0.0 && t <= 1.0))
      throw ConfigError("t values must lie in [0, 1]");
  if (!(radius_max > 0.0 && radius_max <= kMaxRadius))
    throw ConfigError("--rmax must lie in (0, 12] (desk-scale guard)");
  if (!(boundary_tolerance > 0.0 && boundary_tolerance <= 1e-6))
    throw ConfigError("boundary tolerance must lie in (0, 1e-6]");
  if (!(match_tolerance > 0.0))
    throw ConfigError("match tolerance must be positive");
  if (angles) {
    const std::size_t arity = subgroup == Subgroup::D6 ? 2 : 1;
    if (angles->size() != arity)
      throw ConfigError(to_string(subgroup) + " takes " + std::to_string(arity) + " angle(s)");
    for (double a : *angles)
      if (!std::isfinite(a))
        throw ConfigError("angles must be finite");
  }
  if (axis && axis->norm() < 1e-12)
    throw ConfigError("axis must be nonzero");
}

void RunConfig::validate_endpoint(std::size_t solution_count) const {
  if (!angles && endpoint_index >= solution_count)
    throw ConfigError("endpoint index " + std::to_string(endpoint_index) + " out of range: " +
                      to_string(subgroup) + " has " + std::to_string(solution_count) +
                      " boundary solutions");
}

Vec6i parse_seed(std::string_view text) {
  std::string s = trim(text);
  if (s.size() >= 2 && (s[0] == 'e' || (s[0] == '-' && s.size() == 3 && s[1] == 'e'))) {
    const bool negative = s[0] == '-';
    const std::string digit = s.substr(negative ? 2 : 1);
    if (digit.size() == 1 && digit[0] >= '1' && digit[0] <= '6') {
      Vec6i v{};
      v[digit[0] - '1'] = negative ? -1 : 1;
      return v;
    }
    throw ConfigError("bad seed '" + s + "': expected e1..e6 or six integers");
  }
  auto parts = split(s);
  if (parts.size() != 6)
    throw ConfigError("bad seed '" + s + "': expected e1..e6 or six integers");
  Vec6i v{};
  for (int i = 0; i < 6; ++i) {
    const auto& p = parts[i];
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v[i]);
    if (ec != std::errc() || ptr != p.data() + p.size())
      throw ConfigError("bad seed component '" + p + "'");
  }
  return v;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& p : split(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + p + "'");
    }
    if (used != p.size())
      throw ConfigError("bad number '" + p + "'");
    out.push_back(v);
  }
  return out;
}

RunConfig config_from_json(const nlohmann::json& doc, RunConfig c) {
  if (!doc.is_object())
    throw ConfigError("config document must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "command") {
        c.command = value.get<std::string>();
      } else if (key == "subgroup") {
        auto s = parse_subgroup(value.get<std::string>());
        if (!s)
          throw ConfigError("unknown subgroup '" + value.get<std::string>() + "'");
        c.subgroup = *s;
      } else if (key == "endpoint") {
        c.endpoint_index = value.get<std::size_t>();
      } else if (key == "angles") {
        c.angles = value.get<std::vector<double>>();
      } else if (key == "t") {
        c.t_values = {value.get<double>()};
      } else if (key == "sweep") {
        c.t_values = value.get<std::vector<double>>();
      } else if (key == "rmax") {
        c.radius_max = value.get<double>();
      } else if (key == "lattice") {
        auto k = parse_lattice(value.get<std::string>());
        if (!k)
          throw ConfigError("unknown lattice '" + value.get<std::string>() + "'");
        c.lattice = *k;
      } else if (key == "output") {
        c.output = value.get<std::string>();
      } else if (key == "format") {
        auto f = parse_format(value.get<std::string>());
        if (!f)
          throw ConfigError("unknown format '" + value.get<std::string>() + "'");
        c.format = *f;
      } else if (key == "seed") {
        c.seed = value.is_string() ? parse_seed(value.get<std::string>()) : value.get<Vec6i>();
      } else if (key == "axis") {
        auto a = value.get<std::vector<double>>();
        if (a.size() != 3)
          throw ConfigError("axis needs three components");
        c.axis = Vec3(a[0], a[1], a[2]);
      } else if (key == "tolerance") {
        c.boundary_tolerance = value.get<double>();
      } else if (key == "match_tolerance") {
        c.match_tolerance = value.get<double>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

} // namespace qcs
