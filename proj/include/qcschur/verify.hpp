// Verification suites over a constant-table set: groups, reduction,
// centralizer and boundary angles.

#ifndef QCSCHUR_VERIFY_HPP_
#define QCSCHUR_VERIFY_HPP_

#include <string>
#include <vector>

#include "qcschur/reduction.hpp"
#include "qcschur/schur.hpp"
#include "qcschur/tables.hpp"

namespace qcs {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// "groups", "reduction", "centralizer", "boundary".
const std::vector<std::string>& verification_suites();

/// Runs the named suites (all when `only` is empty). A check that throws is
/// recorded as failed with the exception text. Unknown suite names throw
/// std::invalid_argument.
std::vector<CheckResult> run_verification(const ConstantTables& tables,
                                          const std::vector<std::string>& only = {});

/// Closed-form boundary solutions: S_T, {pi/2}, S_D6. The D6 list carries
/// (-arctan 2, pi - arctan(1/2)) in place of the misprinted
/// (arctan 2, pi - arctan(1/2)).
std::vector<AngleParameter> published_solutions(Subgroup s);
/// The misprinted D6 pair as it appears in print.
AngleParameter misprinted_d6_solution();

/// The two blocks of R_G^-1 I_G R_G at `angles`, identified.
struct PartnerBlocks {
  IrrepLabel top;
  IrrepLabel bottom;
  double off_block_residual;
};
PartnerBlocks identify_partner_blocks(const SchurFamily& family, const AngleParameter& angles);

} // namespace qcs

#endif
