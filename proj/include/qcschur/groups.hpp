// Finite subgroups of the hyperoctahedral group B6 (6x6 signed permutation
// matrices): closure, presentations, intersections and trace statistics.

#ifndef QCSCHUR_GROUPS_HPP_
#define QCSCHUR_GROUPS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qcschur/linalg.hpp"

namespace qcs {

inline constexpr std::size_t kHyperoctahedralOrder = 46080;  // 2^6 * 6!

/// A 6x6 integer matrix with entries in {-1, 0, 1} and exactly one nonzero
/// per row and column. Stored as (column, sign) per row.
class SignedPermMatrix {
public:
  /// Identity.
  SignedPermMatrix();
  /// Validates the B6 invariant; throws std::invalid_argument otherwise.
  explicit SignedPermMatrix(const std::array<int, 36>& row_major);

  static SignedPermMatrix identity() { return {}; }

  int operator()(int r, int c) const { return col_[r] == c ? sign_[r] : 0; }
  std::array<int, 36> to_array() const;
  Mat6 to_real() const;

  SignedPermMatrix inverse() const;  // = transpose
  int trace() const;
  /// Smallest k >= 1 with M^k = I.
  int order() const;
  Vec6i apply(const Vec6i& v) const;

  friend SignedPermMatrix operator*(const SignedPermMatrix& a, const SignedPermMatrix& b);
  friend bool operator==(const SignedPermMatrix& a, const SignedPermMatrix& b) {
    return a.col_ == b.col_ && a.sign_ == b.sign_;
  }
  friend bool operator<(const SignedPermMatrix& a, const SignedPermMatrix& b) {
    return std::tie(a.col_, a.sign_) < std::tie(b.col_, b.sign_);
  }
  std::size_t hash() const;

private:
  std::array<std::int8_t, 6> col_{};
  std::array<std::int8_t, 6> sign_{};
};

struct SignedPermHash {
  std::size_t operator()(const SignedPermMatrix& m) const { return m.hash(); }
};

enum class GroupLabel { I, I_T, I_D10, I_D6, T, D10, D6, Other };

std::string to_string(GroupLabel label);

/// A closed finite matrix group with an ordered generator list. Elements are
/// kept sorted so that equality of groups is equality of element vectors.
struct MatrixGroup {
  GroupLabel label = GroupLabel::Other;
  std::vector<SignedPermMatrix> generators;
  std::vector<SignedPermMatrix> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(const SignedPermMatrix& m) const;
};

struct GroupTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Breadth-first product closure of the generators (plus identity).
/// Throws GroupTooLarge if more than `cap` elements appear.
MatrixGroup closure(std::span<const SignedPermMatrix> generators,
                    GroupLabel label = GroupLabel::Other,
                    std::size_t cap = kHyperoctahedralOrder);

/// Checks the label's relations a^p = b^q = (ab)^r = e on the two ordered
/// generators: I* (2,3,5), T (2,3,3), D10 (2,5,2), D6 (2,3,2).
/// Throws std::invalid_argument for GroupLabel::Other or a generator count != 2.
bool verify_presentation(const MatrixGroup& g);

/// Set intersection, with a small generating set chosen greedily.
MatrixGroup intersect(const MatrixGroup& g, const MatrixGroup& h,
                      GroupLabel label = GroupLabel::Other);

/// Counts of elements per (matrix order, trace).
std::map<std::pair<int, int>, int> character_vector(const MatrixGroup& g);

} // namespace qcs

#endif
