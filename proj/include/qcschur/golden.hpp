// Exact arithmetic in the golden field Q(tau), tau = (1 + sqrt 5) / 2.

#ifndef QCSCHUR_GOLDEN_HPP_
#define QCSCHUR_GOLDEN_HPP_

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

namespace qcs {

using Rational = boost::multiprecision::cpp_rational;

/// An element a + b*tau of Q(tau) with arbitrary-precision rational a, b.
///
/// Values are immutable; all arithmetic is exact and uses tau^2 = tau + 1.
/// Equality is structural (a, b are kept in lowest terms by cpp_rational).
class GoldenNumber {
public:
  GoldenNumber() = default;
  GoldenNumber(long long a) : a_(a) {}  // NOLINT: integers embed implicitly
  GoldenNumber(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static GoldenNumber tau() { return {0, 1}; }

  const Rational& rational_part() const { return a_; }
  const Rational& tau_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  // exact sign of the real number a + b*tau
  int sign() const;

  GoldenNumber operator-() const { return {-a_, -b_}; }
  friend GoldenNumber operator+(const GoldenNumber& x, const GoldenNumber& y) {
    return {x.a_ + y.a_, x.b_ + y.b_};
  }
  friend GoldenNumber operator-(const GoldenNumber& x, const GoldenNumber& y) {
    return {x.a_ - y.a_, x.b_ - y.b_};
  }
  // (a + b t)(c + d t) = (ac + bd) + (ad + bc + bd) t
  friend GoldenNumber operator*(const GoldenNumber& x, const GoldenNumber& y) {
    Rational bd = x.b_ * y.b_;
    return {x.a_ * y.a_ + bd, x.a_ * y.b_ + x.b_ * y.a_ + bd};
  }
  // throws std::domain_error when y == 0
  friend GoldenNumber operator/(const GoldenNumber& x, const GoldenNumber& y);

  GoldenNumber& operator+=(const GoldenNumber& y) { return *this = *this + y; }
  GoldenNumber& operator-=(const GoldenNumber& y) { return *this = *this - y; }
  GoldenNumber& operator*=(const GoldenNumber& y) { return *this = *this * y; }

  friend bool operator==(const GoldenNumber& x, const GoldenNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const GoldenNumber& x, const GoldenNumber& y) { return !(x == y); }

  /// Field norm a^2 + ab - b^2 = x * conj(x), a rational.
  Rational norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }

  /// Canonical text "a + b*tau" with reduced fractions, e.g. "1/2 + -1/2*tau".
  std::string str() const;

  /// Parses the canonical form, a bare rational ("3/4"), or a short
  /// tau expression as written in tables ("t-1", "2t-1", "-t-2", "3-t").
  static GoldenNumber parse(std::string_view text);

private:
  Rational a_{0};
  Rational b_{0};
};

/// a + b*tau -> (a + b) - b*tau. Ring automorphism and involution.
GoldenNumber galois_conjugate(const GoldenNumber& x);

/// Double-precision value. Cancellation-free: when a and b have opposite
/// signs the value is recovered as norm / conj, so relative error stays
/// within a few ulps.
double to_double(const GoldenNumber& x);

/// Dense row-major matrix over Q(tau).
class GoldenMatrix {
public:
  GoldenMatrix() = default;
  GoldenMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols) {}
  GoldenMatrix(std::size_t rows, std::size_t cols, std::vector<GoldenNumber> entries);

  static GoldenMatrix identity(std::size_t n);
  /// Builds from tau expressions ("t-1", "1", ...), each divided by `denominator`.
  static GoldenMatrix from_strings(std::size_t rows, std::size_t cols,
                                   std::initializer_list<std::string_view> cells,
                                   long long denominator = 1);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const GoldenNumber& operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }
  GoldenNumber& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
  const std::vector<GoldenNumber>& entries() const { return v_; }

  GoldenMatrix transpose() const;
  GoldenMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  GoldenMatrix scaled(const GoldenNumber& s) const;
  GoldenMatrix divided(const GoldenNumber& s) const;
  bool is_zero() const;

  Eigen::MatrixXd to_real() const;

  friend GoldenMatrix operator*(const GoldenMatrix& x, const GoldenMatrix& y);
  friend GoldenMatrix operator+(const GoldenMatrix& x, const GoldenMatrix& y);
  friend GoldenMatrix operator-(const GoldenMatrix& x, const GoldenMatrix& y);
  friend bool operator==(const GoldenMatrix& x, const GoldenMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.v_ == y.v_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GoldenNumber> v_;
};

/// A real matrix entries / sqrt(norm_squared) with golden entries.
/// norm_squared must be a strictly positive real.
class ScaledGoldenMatrix {
public:
  ScaledGoldenMatrix(GoldenMatrix entries, GoldenNumber norm_squared);

  const GoldenMatrix& entries() const { return entries_; }
  const GoldenNumber& norm_squared() const { return norm_squared_; }
  std::size_t rows() const { return entries_.rows(); }
  std::size_t cols() const { return entries_.cols(); }

  Eigen::MatrixXd to_real() const;

private:
  GoldenMatrix entries_;
  GoldenNumber norm_squared_;
};

/// True iff entries * entries^T == norm_squared * I exactly.
bool frame_check(const ScaledGoldenMatrix& m);

} // namespace qcs

#endif
