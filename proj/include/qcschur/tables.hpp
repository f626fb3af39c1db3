// Source-of-truth constant tables: the icosahedral generators and their
// partner representations, the reducing frame R, and the block irreps and
// reducing matrices for the three maximal subgroups T, D10 and D6.

#ifndef QCSCHUR_TABLES_HPP_
#define QCSCHUR_TABLES_HPP_

#include <array>
#include <optional>
#include <string>

#include <json.hpp>

#include "qcschur/golden.hpp"
#include "qcschur/groups.hpp"
#include "qcschur/linalg.hpp"

namespace qcs {

enum class Subgroup { T, D10, D6 };

std::string to_string(Subgroup s);
/// Accepts "T", "D10", "D6"; nullopt otherwise.
std::optional<Subgroup> parse_subgroup(std::string_view s);

using GeneratorPair = std::array<SignedPermMatrix, 2>;
using GoldenPair = std::array<GoldenMatrix, 2>;

/// Everything tied to one maximal subgroup G.
struct SubgroupTables {
  GeneratorPair generators;          // G~ inside I~
  GeneratorPair partner_generators;  // I~_G with G~ = I~ n I~_G
  GoldenPair block1;                 // R^-1 G~ R, top block  (Gamma1 / D1 / S1)
  GoldenPair block2;                 // R^-1 G~ R, bottom block (Gamma2 / D2 / S2)
  Mat3 reducer1 = Mat3::Identity();  // I3 / P1 / R1
  Mat3 reducer2 = Mat3::Identity();  // Q  / P2 / R2
};

struct ConstantTables {
  /// R = entries / sqrt(2(2 + tau)).
  ScaledGoldenMatrix frame{GoldenMatrix::identity(6), 1};
  GeneratorPair icosahedral;
  GoldenPair rho3;        // T1 block of R^-1 I~ R
  GoldenPair rho3_prime;  // T2 block
  /// 4Q with norm_squared 16; Q^-1 Gamma2 Q = Gamma1.
  ScaledGoldenMatrix tetrahedral_q{GoldenMatrix::identity(3), 1};
  SubgroupTables tetrahedral;
  SubgroupTables dihedral10;
  SubgroupTables dihedral6;

  const SubgroupTables& subgroup(Subgroup s) const;

  /// The published tables. Built once; read-only.
  static const ConstantTables& standard();
};

/// Named groups built from a table set.
MatrixGroup icosahedral_group(const ConstantTables& tables = ConstantTables::standard());
MatrixGroup subgroup_group(Subgroup s, const ConstantTables& tables = ConstantTables::standard());
MatrixGroup partner_group(Subgroup s, const ConstantTables& tables = ConstantTables::standard());

GroupLabel subgroup_label(Subgroup s);
GroupLabel partner_label(Subgroup s);

/// JSON audit document: golden entries as canonical text, signed
/// permutations as 36-entry integer rows, floating reducers as numbers.
nlohmann::json tables_to_json(const ConstantTables& tables);
/// Inverse of tables_to_json. Throws nlohmann::json::exception or
/// std::invalid_argument on malformed input.
ConstantTables tables_from_json(const nlohmann::json& doc);

} // namespace qcs

#endif
