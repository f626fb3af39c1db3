#include "qcschur/groups.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace qcs {

SignedPermMatrix::SignedPermMatrix() {
  for (int i = 0; i < 6; ++i) {
    col_[i] = static_cast<std::int8_t>(i);
    sign_[i] = 1;
  }
}

SignedPermMatrix::SignedPermMatrix(const std::array<int, 36>& m) {
  std::array<bool, 6> used{};
  for (int r = 0; r < 6; ++r) {
    int found = -1;
    for (int c = 0; c < 6; ++c) {
      int v = m[r * 6 + c];
      if (v == 0)
        continue;
      if ((v != 1 && v != -1) || found >= 0)
        throw std::invalid_argument("not a signed permutation matrix: row " + std::to_string(r));
      found = c;
      sign_[r] = static_cast<std::int8_t>(v);
    }
    if (found < 0 || used[found])
      throw std::invalid_argument("not a signed permutation matrix: row " + std::to_string(r));
    used[found] = true;
    col_[r] = static_cast<std::int8_t>(found);
  }
}

std::array<int, 36> SignedPermMatrix::to_array() const {
  std::array<int, 36> a{};
  for (int r = 0; r < 6; ++r)
    a[r * 6 + col_[r]] = sign_[r];
  return a;
}

Mat6 SignedPermMatrix::to_real() const {
  Mat6 m = Mat6::Zero();
  for (int r = 0; r < 6; ++r)
    m(r, col_[r]) = sign_[r];
  return m;
}

SignedPermMatrix SignedPermMatrix::inverse() const {
  SignedPermMatrix t;
  for (int r = 0; r < 6; ++r) {
    t.col_[col_[r]] = static_cast<std::int8_t>(r);
    t.sign_[col_[r]] = sign_[r];
  }
  return t;
}

int SignedPermMatrix::trace() const {
  int t = 0;
  for (int r = 0; r < 6; ++r)
    if (col_[r] == r)
      t += sign_[r];
  return t;
}

int SignedPermMatrix::order() const {
  SignedPermMatrix p = *this;
  int k = 1;
  while (!(p == identity())) {
    p = p * *this;
    ++k;
  }
  return k;
}

Vec6i SignedPermMatrix::apply(const Vec6i& v) const {
  Vec6i out{};
  for (int r = 0; r < 6; ++r)
    out[r] = sign_[r] * v[col_[r]];
  return out;
}

SignedPermMatrix operator*(const SignedPermMatrix& a, const SignedPermMatrix& b) {
  // (AB)_{r,c}: row r of A picks row col_a[r] of B
  SignedPermMatrix p;
  for (int r = 0; r < 6; ++r) {
    int k = a.col_[r];
    p.col_[r] = b.col_[k];
    p.sign_[r] = static_cast<std::int8_t>(a.sign_[r] * b.sign_[k]);
  }
  return p;
}

std::size_t SignedPermMatrix::hash() const {
  std::size_t h = 0;
  for (int r = 0; r < 6; ++r)
    h = h * 13 + static_cast<std::size_t>(col_[r] * 2 + (sign_[r] > 0 ? 1 : 0));
  return h;
}

std::string to_string(GroupLabel label) {
  switch (label) {
    case GroupLabel::I: return "I";
    case GroupLabel::I_T: return "I_T";
    case GroupLabel::I_D10: return "I_D10";
    case GroupLabel::I_D6: return "I_D6";
    case GroupLabel::T: return "T";
    case GroupLabel::D10: return "D10";
    case GroupLabel::D6: return "D6";
    case GroupLabel::Other: return "other";
  }
  return "other";
}

bool MatrixGroup::contains(const SignedPermMatrix& m) const {
  return std::binary_search(elements.begin(), elements.end(), m);
}

MatrixGroup closure(std::span<const SignedPermMatrix> generators, GroupLabel label,
                    std::size_t cap) {
  std::unordered_set<SignedPermMatrix, SignedPermHash> seen;
  std::deque<SignedPermMatrix> queue;
  seen.insert(SignedPermMatrix::identity());
  queue.push_back(SignedPermMatrix::identity());
  while (!queue.empty()) {
    SignedPermMatrix a = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      SignedPermMatrix p = a * g;
      if (seen.insert(p).second) {
        if (seen.size() > cap)
          throw GroupTooLarge("closure exceeded cap of " + std::to_string(cap) + " elements");
        queue.push_back(p);
      }
    }
  }
  MatrixGroup g;
  g.label = label;
  g.generators.assign(generators.begin(), generators.end());
  g.elements.assign(seen.begin(), seen.end());
  std::sort(g.elements.begin(), g.elements.end());
  return g;
}

namespace {

SignedPermMatrix power(const SignedPermMatrix& m, int k) {
  SignedPermMatrix p;
  for (int i = 0; i < k; ++i)
    p = p * m;
  return p;
}

} // namespace

bool verify_presentation(const MatrixGroup& g) {
  if (g.generators.size() != 2)
    throw std::invalid_argument("verify_presentation needs exactly two generators");
  int p, q, r;
  switch (g.label) {
    case GroupLabel::I:
    case GroupLabel::I_T:
    case GroupLabel::I_D10:
    case GroupLabel::I_D6: p = 2; q = 3; r = 5; break;
    case GroupLabel::T: p = 2; q = 3; r = 3; break;
    case GroupLabel::D10: p = 2; q = 5; r = 2; break;
    case GroupLabel::D6: p = 2; q = 3; r = 2; break;
    default:
      throw std::invalid_argument("unsupported presentation for label " + to_string(g.label));
  }
  const auto& a = g.generators[0];
  const auto& b = g.generators[1];
  const SignedPermMatrix e;
  return power(a, p) == e && power(b, q) == e && power(a * b, r) == e;
}

MatrixGroup intersect(const MatrixGroup& g, const MatrixGroup& h, GroupLabel label) {
  std::vector<SignedPermMatrix> common;
  std::set_intersection(g.elements.begin(), g.elements.end(), h.elements.begin(),
                        h.elements.end(), std::back_inserter(common));
  // greedy generating set: add any element not yet generated
  std::vector<SignedPermMatrix> gens;
  MatrixGroup current = closure(gens, label);
  for (const auto& m : common) {
    if (current.contains(m))
      continue;
    gens.push_back(m);
    current = closure(gens, label);
  }
  current.elements = std::move(common);
  return current;
}

std::map<std::pair<int, int>, int> character_vector(const MatrixGroup& g) {
  std::map<std::pair<int, int>, int> counts;
  for (const auto& m : g.elements)
    ++counts[{m.order(), m.trace()}];
  return counts;
}

} // namespace qcs
