// Exact rational scalars, vectors and matrices.
//
// Everything downstream (coset enumeration, vertex enumeration, belt tests)
// makes discrete decisions, so no floating point enters any predicate here.

#ifndef VOREXT_EXACT_HPP
#define VOREXT_EXACT_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vorext {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using Vec = std::vector<Rational>;
using IntVec = std::vector<std::int64_t>;

/// Error raised on violated preconditions; `kind` is a stable machine tag.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }
inline bool is_integral(const Rational& r) { return denominator(r) == 1; }
inline int sign(const Rational& r) { return r.sign(); }
inline Rational abs(const Rational& r) { return r.sign() < 0 ? Rational(-r) : r; }

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& r) {
  if (is_integral(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t");
    const auto e = t.find_last_not_of(" \t");
    t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw Error("ParseError", "empty rational");
  const auto slash = s.find('/');
  auto parse_int = [&](std::string t) -> Integer {
    trim(t);
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) throw Error("ParseError", "bad integer '" + t + "'");
    for (std::size_t k = i; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') throw Error("ParseError", "bad integer '" + t + "'");
    if (t[0] == '+') t.erase(0, 1);
    return Integer(t);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  const Integer num = parse_int(s.substr(0, slash));
  const Integer den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error("ParseError", "zero denominator in '" + s + "'");
  return Rational(num, den);
}

inline Vec to_vec(const IntVec& v) {
  Vec out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(x);
  return out;
}

inline Rational dot(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw Error("DimensionMismatch", "dot of vectors of different length");
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline Rational dot(const IntVec& u, const Vec& v) {
  if (u.size() != v.size()) throw Error("DimensionMismatch", "dot of vectors of different length");
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) s += v[i] * u[i];
  return s;
}

inline std::int64_t dot(const IntVec& u, const IntVec& v) {
  if (u.size() != v.size()) throw Error("DimensionMismatch", "dot of vectors of different length");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline Vec operator+(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Vec operator-(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Vec operator*(const Rational& s, Vec a) {
  for (auto& x : a) x *= s;
  return a;
}
inline Vec operator-(Vec a) {
  for (auto& x : a) x = -x;
  return a;
}

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Scale `v` to the primitive integer vector on the same ray. Returns the
/// positive factor applied.
inline Rational make_primitive(Vec& v) {
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, denominator(x));
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, Integer(numerator(x) * (l / denominator(x))));
  if (g == 0) return Rational(1);
  const Rational factor(l, g);
  for (auto& x : v) x *= factor;
  return factor;
}

/// Dense row-major rational matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("DimensionMismatch", "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return {};
    Mat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error("DimensionMismatch", "ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  Vec operator*(const Vec& v) const {
    if (v.size() != cols_) throw Error("DimensionMismatch", "matrix-vector product");
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (v[j] != 0) s += (*this)(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw Error("DimensionMismatch", "matrix product");
    Mat out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  Mat operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("DimensionMismatch", "matrix sum");
    Mat out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += o.data_[k];
    return out;
  }

  Mat scaled(const Rational& s) const {
    Mat out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form, in place. Returns pivot columns.
inline std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Exact rank by fraction-free (Bareiss) elimination.
inline std::size_t rank(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Bareiss needs an integral matrix; clear denominators row-wise first.
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec row = m.row(i);
    make_primitive(row);
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = numerator(row[j]);
  }
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j)
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline std::size_t rank(const std::vector<Vec>& rows) { return rank(Mat::from_rows(rows)); }

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
  SolveStatus status = SolveStatus::Inconsistent;
  Vec solution;  // set only when status == Unique
  explicit operator bool() const noexcept { return status == SolveStatus::Unique; }
};

inline SolveResult solve_linear(const Mat& m, const Vec& rhs) {
  if (!m.square()) throw Error("DimensionMismatch", "solve_linear needs a square matrix");
  if (rhs.size() != m.rows()) throw Error("DimensionMismatch", "rhs length differs from matrix size");
  const std::size_t n = m.rows();
  Mat aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) return {SolveStatus::Inconsistent, {}};
  if (pivots.size() < n) return {SolveStatus::Underdetermined, {}};
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return {SolveStatus::Unique, std::move(x)};
}

inline std::optional<Mat> inverse(const Mat& m) {
  if (!m.square()) throw Error("DimensionMismatch", "inverse needs a square matrix");
  const std::size_t n = m.rows();
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline Rational determinant(const Mat& m) {
  if (!m.square()) throw Error("DimensionMismatch", "determinant needs a square matrix");
  Mat a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Sylvester's criterion on the leading principal minors.
inline bool is_positive_definite(const Mat& m) {
  if (!m.symmetric()) throw Error("NotSymmetric", "positive-definiteness test needs a symmetric matrix");
  // Gaussian elimination without pivoting: pivot k equals minor_k / minor_{k-1}.
  Mat a = m;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    if (a(c, c) <= 0) return false;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return true;
}

/// Integer floor of a rational.
inline Integer floor(const Rational& r) {
  Integer q = numerator(r) / denominator(r);  // truncates toward zero
  if (r.sign() < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q;
}

inline Integer ceil(const Rational& r) { return -floor(Rational(-r)); }

/// floor(sqrt(r)) for r >= 0.
inline Integer isqrt_floor(const Rational& r) {
  if (r.sign() <= 0) return 0;
  return boost::multiprecision::sqrt(floor(r));
}

/// Basis (rref rows) of the row space; canonical, so equal spaces compare equal.
inline std::vector<Vec> row_space_basis(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  Mat m = Mat::from_rows(rows);
  const auto piv = rref(m);
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < piv.size(); ++i) basis.push_back(m.row(i));
  return basis;
}

/// Basis of the orthogonal complement of span(rows) in Q^dim (standard dot product).
inline std::vector<Vec> orthogonal_complement(const std::vector<Vec>& rows, std::size_t dim) {
  std::vector<Vec> out;
  if (rows.empty()) {
    for (std::size_t i = 0; i < dim; ++i) {
      Vec e(dim);
      e[i] = 1;
      out.push_back(std::move(e));
    }
    return out;
  }
  Mat m = Mat::from_rows(rows);
  const auto piv = rref(m);
  std::vector<bool> is_pivot(dim, false);
  for (auto c : piv) is_pivot[c] = true;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    Vec v(dim);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, free);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace vorext

#endif  // VOREXT_EXACT_HPP
