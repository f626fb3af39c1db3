#include "qcschur/reduction.hpp"

#include <cmath>
#include <deque>

namespace qcs {

namespace {

constexpr double kTraceTol = 1e-9;
constexpr double kPatternTol = 1e-12;
const double kTau = (1.0 + std::sqrt(5.0)) / 2.0;

GoldenMatrix to_golden(const SignedPermMatrix& g) {
  GoldenMatrix m(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c)
      m(r, c) = g(r, c);
  return m;
}

bool near(double a, double b) { return std::abs(a - b) < kTraceTol; }

bool is_identity(const Mat3& m) { return max_abs(m - Mat3::Identity()) < kTraceTol; }

int order_of(const Mat3& m, int limit) {
  Mat3 p = m;
  for (int k = 1; k <= limit; ++k) {
    if (is_identity(p))
      return k;
    p = p * m;
  }
  return 0;
}

} // namespace

ReductionFrame::ReductionFrame(ScaledGoldenMatrix matrix) : exact_(std::move(matrix)) {
  if (exact_.rows() != 6 || exact_.cols() != 6)
    throw std::invalid_argument("reduction frame must be 6x6");
  if (!frame_check(exact_))
    throw std::invalid_argument("frameCheck failed: reduction frame is not orthogonal");
  real_ = exact_.to_real();
}

const ReductionFrame& ReductionFrame::standard() {
  static const ReductionFrame frame(ConstantTables::standard().frame);
  return frame;
}

BlockDecomposition reduce_rep(const ReductionFrame& frame, const MatrixGroup& rep) {
  const GoldenMatrix& e = frame.exact().entries();
  const GoldenMatrix et = e.transpose();
  BlockDecomposition d;
  d.exact_top.emplace();
  d.exact_bottom.emplace();
  bool exact_zero = true;
  double residual = 0.0;
  for (const auto& g : rep.generators) {
    GoldenMatrix k = (et * to_golden(g) * e).divided(frame.exact().norm_squared());
    GoldenMatrix top = k.block(0, 0, 3, 3);
    GoldenMatrix bottom = k.block(3, 3, 3, 3);
    GoldenMatrix upper = k.block(0, 3, 3, 3);
    GoldenMatrix lower = k.block(3, 0, 3, 3);
    if (!upper.is_zero() || !lower.is_zero()) {
      exact_zero = false;
      residual = std::max({residual, max_abs(upper.to_real()), max_abs(lower.to_real())});
    }
    d.top.push_back(top.to_real());
    d.bottom.push_back(bottom.to_real());
    d.exact_top->push_back(std::move(top));
    d.exact_bottom->push_back(std::move(bottom));
  }
  d.off_block_residual = exact_zero ? 0.0 : residual;
  return d;
}

BlockDecomposition reduce_rep(const Mat6& frame, std::span<const Mat6> generators) {
  BlockDecomposition d;
  for (const auto& g : generators) {
    Mat6 k = frame.transpose() * g * frame;
    d.top.push_back(k.topLeftCorner<3, 3>());
    d.bottom.push_back(k.bottomRightCorner<3, 3>());
    d.off_block_residual = std::max(d.off_block_residual, off_block_max(k));
  }
  return d;
}

std::string to_string(IrrepLabel label) {
  switch (label) {
    case IrrepLabel::T1: return "T1";
    case IrrepLabel::T2: return "T2";
    case IrrepLabel::A2_E1: return "A2+E1";
    case IrrepLabel::A2_E2: return "A2+E2";
    case IrrepLabel::A2_E: return "A2+E";
    case IrrepLabel::Tetrahedral: return "T";
    case IrrepLabel::ReducibleOther: return "reducible-other";
  }
  return "?";
}

std::vector<Mat3> close_group(std::span<const Mat3> generators, std::size_t cap) {
  std::vector<Mat3> elements{Mat3::Identity()};
  std::deque<std::size_t> queue{0};
  auto find = [&](const Mat3& m) {
    for (const auto& e : elements)
      if (max_abs(e - m) < kTraceTol)
        return true;
    return false;
  };
  while (!queue.empty()) {
    Mat3 a = elements[queue.front()];
    queue.pop_front();
    for (const auto& g : generators) {
      Mat3 p = a * g;
      if (find(p))
        continue;
      elements.push_back(p);
      if (elements.size() > cap)
        throw std::runtime_error("matrix group closure exceeded " + std::to_string(cap) + " elements");
      queue.push_back(elements.size() - 1);
    }
  }
  return elements;
}

IrrepLabel identify_irrep(std::span<const Mat3> generators) {
  std::vector<Mat3> elements;
  try {
    elements = close_group(generators);
  } catch (const std::runtime_error& e) {
    throw UnidentifiedIrrep(std::string("block does not generate a known finite group: ") + e.what());
  }
  const std::size_t n = elements.size();
  double norm = 0.0;
  for (const auto& e : elements)
    norm += e.trace() * e.trace();
  norm /= static_cast<double>(n);
  const bool irreducible = std::abs(norm - 1.0) < 1e-6;
  const bool two_parts = std::abs(norm - 2.0) < 1e-6;

  // in A2 + E the reflections act as -1 on the A2 line and have trace -1
  auto reflections_are_a2 = [&] {
    for (const auto& e : elements)
      if (order_of(e, 2) == 2 && !near(e.trace(), -1.0))
        return false;
    return true;
  };

  switch (n) {
    case 60:
      if (irreducible && generators.size() >= 2) {
        double tr = (generators[0] * generators[1]).trace();
        if (near(tr, kTau))
          return IrrepLabel::T1;
        if (near(tr, 1.0 - kTau))
          return IrrepLabel::T2;
      }
      break;
    case 12:
      if (irreducible)
        return IrrepLabel::Tetrahedral;
      break;
    case 10:
      if (two_parts && reflections_are_a2()) {
        for (const auto& g : generators) {
          if (order_of(g, 5) != 5)
            continue;
          if (near(g.trace(), kTau))
            return IrrepLabel::A2_E1;
          if (near(g.trace(), 1.0 - kTau))
            return IrrepLabel::A2_E2;
        }
      }
      break;
    case 6:
      if (two_parts && reflections_are_a2())
        return IrrepLabel::A2_E;
      break;
    default:
      throw UnidentifiedIrrep("block group of order " + std::to_string(n) +
                              " is not a known image (6, 10, 12, 60)");
  }
  if (!irreducible)
    return IrrepLabel::ReducibleOther;
  throw UnidentifiedIrrep("trace pattern of order-" + std::to_string(n) +
                          " block matches no character table row");
}

IrrepLabel identify_irrep(std::span<const GoldenMatrix> generators) {
  std::vector<Mat3> real;
  for (const auto& g : generators) {
    if (g.rows() != 3 || g.cols() != 3)
      throw std::invalid_argument("identify_irrep expects 3x3 blocks");
    real.push_back(g.to_real());
  }
  return identify_irrep(std::span<const Mat3>(real));
}

SubgroupReducer make_subgroup_reducer(Subgroup s, const ConstantTables& tables) {
  const auto& st = tables.subgroup(s);
  SubgroupReducer r;
  r.subgroup = s;
  r.conjugator = direct_sum(st.reducer1, st.reducer2);
  if (s == Subgroup::T) {
    const GoldenMatrix& q = tables.tetrahedral_q.entries();
    // I3 scaled by 4 to share Q's normalization
    GoldenMatrix m(6, 6);
    for (int i = 0; i < 3; ++i)
      m(i, i) = 4;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m(3 + i, 3 + j) = q(i, j);
    r.exact = ScaledGoldenMatrix(m, tables.tetrahedral_q.norm_squared());
    r.conjugator = r.exact->to_real();
    r.pattern = BlockPattern::EqualBlocks;
  } else {
    r.pattern = BlockPattern::ScalarPlusPair;
  }
  return r;
}

SubgroupReducer identity_reducer() { return SubgroupReducer{}; }

double scalar_pair_residual(const Mat3& m) {
  return std::max({std::abs(m(0, 1)), std::abs(m(0, 2)), std::abs(m(1, 0)), std::abs(m(2, 0))});
}

BlockDecomposition apply_subgroup_reducer(const SubgroupReducer& reducer,
                                          const BlockDecomposition& d) {
  if (reducer.pattern == BlockPattern::None)
    return d;
  BlockDecomposition out = d;
  const Mat3 c1 = reducer.conjugator.topLeftCorner<3, 3>();
  const Mat3 c2 = reducer.conjugator.bottomRightCorner<3, 3>();
  for (std::size_t i = 0; i < d.top.size(); ++i) {
    out.top[i] = c1.transpose() * d.top[i] * c1;
    out.bottom[i] = c2.transpose() * d.bottom[i] * c2;
  }
  double residual = 0.0;
  if (reducer.pattern == BlockPattern::EqualBlocks) {
    if (reducer.exact && d.exact_top && d.exact_bottom) {
      const GoldenMatrix& e = reducer.exact->entries();
      const GoldenNumber& n = reducer.exact->norm_squared();
      const GoldenMatrix e1 = e.block(0, 0, 3, 3), e2 = e.block(3, 3, 3, 3);
      for (std::size_t i = 0; i < d.top.size(); ++i) {
        GoldenMatrix top = (e1.transpose() * (*d.exact_top)[i] * e1).divided(n);
        GoldenMatrix bottom = (e2.transpose() * (*d.exact_bottom)[i] * e2).divided(n);
        if (!(top == bottom))
          residual = std::max(residual, max_abs((top - bottom).to_real()));
        out.top[i] = top.to_real();
        out.bottom[i] = bottom.to_real();
        (*out.exact_top)[i] = std::move(top);
        (*out.exact_bottom)[i] = std::move(bottom);
      }
      if (residual > 0.0)
        throw ConstantTableError("reduced blocks differ exactly (max " + std::to_string(residual) + ")");
    } else {
      out.exact_top.reset();
      out.exact_bottom.reset();
      for (std::size_t i = 0; i < d.top.size(); ++i)
        residual = std::max(residual, max_abs(out.top[i] - out.bottom[i]));
      if (residual > kPatternTol)
        throw ConstantTableError("reduced blocks differ by " + std::to_string(residual));
    }
  } else {
    out.exact_top.reset();
    out.exact_bottom.reset();
    for (std::size_t i = 0; i < d.top.size(); ++i)
      residual = std::max({residual, scalar_pair_residual(out.top[i]),
                           scalar_pair_residual(out.bottom[i])});
    if (residual > kPatternTol)
      throw ConstantTableError("A2+E block pattern violated by " + std::to_string(residual));
  }
  out.pattern_residual = residual;
  return out;
}

} // namespace qcs
