// Output formats for patches, arrays and reports: CSV, XYZ, SVG and JSON.

#ifndef QCSCHUR_IO_HPP_
#define QCSCHUR_IO_HPP_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcschur/cut_project.hpp"

namespace qcs {

/// printf "%.15g", with negative zero printed as "0".
std::string format_g15(double x);
/// x rounded to 15 significant digits (what format_g15 prints).
double round_g15(double x);

inline constexpr const char* kCsvHeader = "x,y,z,v1,v2,v3,v4,v5,v6,boundary_flag";

void write_csv(std::ostream& out, const ModelSetPatch& patch);
void write_csv(std::ostream& out, const PointArray& array);

void write_xyz(std::ostream& out, std::span<const Vec3> points, const std::string& comment);

/// The rotation axis of the second generator's parallel block: the 3-fold
/// axis for T and D6, the 5-fold axis for D10.
Vec3 default_axis(Subgroup s, const ConstantTables& tables = ConstantTables::standard());

/// Orthographic view along `axis`, far points drawn first and smaller;
/// flagged points are drawn hollow.
void write_svg(std::ostream& out, std::span<const Vec3> points, const std::vector<bool>& flagged,
               const Vec3& axis, const std::string& title);

/// Full-precision documents: doubles are stored shortest round-trip so that
/// reading back reproduces the in-memory value exactly.
nlohmann::json to_json(const ModelSetPatch& patch);
ModelSetPatch patch_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const PointArray& array);
PointArray array_from_json(const nlohmann::json& doc);

/// Positions of each orbit point across a sweep (arrays share preimages).
nlohmann::json trajectory_json(std::span<const PointArray> sweep);

/// Boundary solutions with residuals, numbers at 15 significant digits.
nlohmann::json boundary_report(const SchurFamily& family, std::span<const AngleParameter> solutions);

} // namespace qcs

#endif
