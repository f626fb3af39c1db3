#include "qcschur/golden.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qcs {

namespace {

constexpr double kTau = 1.6180339887498948482;

double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

std::string rational_str(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1)
    return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view s) {
  if (s.empty())
    throw std::invalid_argument("empty rational");
  std::size_t slash = s.find('/');
  auto parse_int = [](std::string_view d) {
    if (d.empty())
      throw std::invalid_argument("empty integer");
    std::size_t i = (d[0] == '-' || d[0] == '+') ? 1 : 0;
    if (i == d.size())
      throw std::invalid_argument("bad integer: " + std::string(d));
    for (std::size_t k = i; k < d.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(d[k])))
        throw std::invalid_argument("bad integer: " + std::string(d));
    return boost::multiprecision::cpp_int(std::string(d[0] == '+' ? d.substr(1) : d));
  };
  if (slash == std::string_view::npos)
    return Rational(parse_int(s));
  auto den = parse_int(s.substr(slash + 1));
  if (den == 0)
    throw std::domain_error("zero denominator");
  return Rational(parse_int(s.substr(0, slash)), den);
}

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c)))
      out += c;
  return out;
}

// Short expressions like "t-1", "-2t+3", "1-t", "t". Terms are integers or
// [int]t, joined by + and -.
GoldenNumber parse_tau_expression(const std::string& s) {
  GoldenNumber acc;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
      ++j;
    std::string_view coeff(s.data() + i, j - i);
    bool is_tau = j < s.size() && s[j] == 't';
    if (coeff.empty() && !is_tau)
      throw std::invalid_argument("bad golden expression: " + s);
    Rational c = coeff.empty() ? Rational(1) : parse_rational(coeff);
    if (is_tau) {
      acc += GoldenNumber(0, sign * c);
      ++j;
    } else {
      acc += GoldenNumber(sign * c, 0);
    }
    if (j < s.size() && s[j] != '+' && s[j] != '-')
      throw std::invalid_argument("bad golden expression: " + s);
    i = j;
  }
  return acc;
}

} // namespace

int GoldenNumber::sign() const {
  // a + b t = p + q sqrt5 with p = a + b/2, q = b/2
  Rational p = a_ + b_ / 2;
  Rational q = b_ / 2;
  int sp = p.sign(), sq = q.sign();
  if (sq == 0)
    return sp;
  if (sp == 0 || sp == sq)
    return sq;
  // opposite signs: compare p^2 with 5 q^2
  Rational d = p * p - 5 * q * q;
  return d.sign() == 0 ? 0 : (d.sign() > 0 ? sp : sq);
}

GoldenNumber operator/(const GoldenNumber& x, const GoldenNumber& y) {
  if (y.is_zero())
    throw std::domain_error("golden division by zero");
  // x / y = x * conj(y) / N(y)
  Rational n = y.norm();
  GoldenNumber num = x * galois_conjugate(y);
  return {num.a_ / n, num.b_ / n};
}

std::string GoldenNumber::str() const {
  return rational_str(a_) + " + " + rational_str(b_) + "*tau";
}

GoldenNumber GoldenNumber::parse(std::string_view text) {
  std::string s = strip(text);
  std::size_t pos = s.find("*tau");
  if (pos != std::string::npos) {
    if (pos + 4 != s.size())
      throw std::invalid_argument("trailing characters after *tau: " + std::string(text));
    // split "a+b*tau" at the '+' that separates the parts
    std::string head = s.substr(0, pos);
    std::size_t plus = head.find('+', 1);
    if (plus == std::string::npos)
      return {0, parse_rational(head)};
    return {parse_rational(head.substr(0, plus)), parse_rational(head.substr(plus + 1))};
  }
  if (s.find('t') != std::string::npos)
    return parse_tau_expression(s);
  return {parse_rational(s), 0};
}

GoldenNumber galois_conjugate(const GoldenNumber& x) {
  return {x.rational_part() + x.tau_part(), -x.tau_part()};
}

double to_double(const GoldenNumber& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.tau_part();
  double da = rational_to_double(a), db = rational_to_double(b);
  if (b == 0 || a == 0 || a.sign() == b.sign())
    return std::fma(db, kTau, da);
  // conj = (a + b) - b t has no cancellation when a, b differ in sign
  double conj = std::fma(-db, kTau, rational_to_double(a + b));
  return rational_to_double(x.norm()) / conj;
}

GoldenMatrix::GoldenMatrix(std::size_t rows, std::size_t cols, std::vector<GoldenNumber> entries)
    : rows_(rows), cols_(cols), v_(std::move(entries)) {
  if (v_.size() != rows * cols)
    throw std::invalid_argument("GoldenMatrix: entry count does not match shape");
}

GoldenMatrix GoldenMatrix::identity(std::size_t n) {
  GoldenMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

GoldenMatrix GoldenMatrix::from_strings(std::size_t rows, std::size_t cols,
                                        std::initializer_list<std::string_view> cells,
                                        long long denominator) {
  std::vector<GoldenNumber> v;
  v.reserve(cells.size());
  GoldenNumber den(denominator);
  for (auto c : cells)
    v.push_back(GoldenNumber::parse(c) / den);
  return GoldenMatrix(rows, cols, std::move(v));
}

GoldenMatrix GoldenMatrix::transpose() const {
  GoldenMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

GoldenMatrix GoldenMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                 std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw std::out_of_range("GoldenMatrix::block");
  GoldenMatrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c)
      b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

GoldenMatrix GoldenMatrix::scaled(const GoldenNumber& s) const {
  GoldenMatrix m = *this;
  for (auto& e : m.v_)
    e *= s;
  return m;
}

GoldenMatrix GoldenMatrix::divided(const GoldenNumber& s) const {
  GoldenNumber inv = GoldenNumber(1) / s;
  return scaled(inv);
}

bool GoldenMatrix::is_zero() const {
  for (const auto& e : v_)
    if (!e.is_zero())
      return false;
  return true;
}

Eigen::MatrixXd GoldenMatrix::to_real() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      m(r, c) = to_double((*this)(r, c));
  return m;
}

GoldenMatrix operator*(const GoldenMatrix& x, const GoldenMatrix& y) {
  if (x.cols_ != y.rows_)
    throw std::invalid_argument("GoldenMatrix product: shape mismatch");
  GoldenMatrix p(x.rows_, y.cols_);
  for (std::size_t r = 0; r < x.rows_; ++r)
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const GoldenNumber& xv = x(r, k);
      if (xv.is_zero())
        continue;
      for (std::size_t c = 0; c < y.cols_; ++c)
        if (!y(k, c).is_zero())
          p(r, c) += xv * y(k, c);
    }
  return p;
}

GoldenMatrix operator+(const GoldenMatrix& x, const GoldenMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
    throw std::invalid_argument("GoldenMatrix sum: shape mismatch");
  GoldenMatrix s = x;
  for (std::size_t i = 0; i < s.v_.size(); ++i)
    s.v_[i] += y.v_[i];
  return s;
}

GoldenMatrix operator-(const GoldenMatrix& x, const GoldenMatrix& y) {
  return x + y.scaled(-1);
}

ScaledGoldenMatrix::ScaledGoldenMatrix(GoldenMatrix entries, GoldenNumber norm_squared)
    : entries_(std::move(entries)), norm_squared_(std::move(norm_squared)) {
  if (norm_squared_.sign() <= 0)
    throw std::invalid_argument("ScaledGoldenMatrix: norm_squared must be positive");
}

Eigen::MatrixXd ScaledGoldenMatrix::to_real() const {
  return entries_.to_real() / std::sqrt(to_double(norm_squared_));
}

bool frame_check(const ScaledGoldenMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("frame_check: matrix must be square");
  return m.entries() * m.entries().transpose() ==
         GoldenMatrix::identity(m.rows()).scaled(m.norm_squared());
}

} // namespace qcs
