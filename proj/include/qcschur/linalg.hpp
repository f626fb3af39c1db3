// Fixed-size floating-point types shared across modules.

#ifndef QCSCHUR_LINALG_HPP_
#define QCSCHUR_LINALG_HPP_

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace qcs {

using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat36 = Eigen::Matrix<double, 3, 6>;

/// Integer point of Z^6.
using Vec6i = std::array<int, 6>;

inline Vec6 to_real(const Vec6i& v) {
  Vec6 r;
  for (int i = 0; i < 6; ++i)
    r[i] = v[i];
  return r;
}

inline double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Direct sum A (+) B of two square blocks.
inline Mat6 direct_sum(const Mat3& a, const Mat3& b) {
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<3, 3>() = a;
  m.bottomRightCorner<3, 3>() = b;
  return m;
}

/// Largest |entry| outside the two diagonal 3x3 blocks.
inline double off_block_max(const Mat6& m) {
  return std::max(max_abs(m.topRightCorner<3, 3>()), max_abs(m.bottomLeftCorner<3, 3>()));
}

} // namespace qcs

#endif
