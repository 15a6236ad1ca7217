#pragma once

// Dense exact matrices and polynomial matrices.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "matpfd/error.hpp"
#include "matpfd/parallel.hpp"
#include "matpfd/poly.hpp"
#include "matpfd/scalars.hpp"

namespace matpfd {

/// Hard cap on the dimension accepted by the adjugate and PFD routines.
inline constexpr std::size_t kMaxDimension = 12;

template <ExactField T>
using Vector = std::vector<T>;

template <ExactField T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix column(const Vector<T>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  static Matrix from_columns(const std::vector<Vector<T>>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }

  Vector<T> col(std::size_t j) const {
    Vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!matpfd::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// A - lambda I
  Matrix shifted(const T& lambda) const {
    Matrix m = *this;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) m(i, i) -= lambda;
    return m;
  }

  template <ExactField U>
  Matrix<U> cast() const {
    Matrix<U> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = U((*this)(i, j));
    return m;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& k) {
    for (auto& x : data_) x *= k;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& k) { return a *= k; }
  friend Matrix operator*(const T& k, Matrix a) { return a *= k; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(ErrorKind::DimensionMismatch, shape_text(*this) + " vs " + shape_text(o));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;

 public:
  static std::string shape_text(const Matrix& m) {
    return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
  }
};

template <ExactField T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <ExactField T>
Matrix<T> Matrix<T>::from_columns(const std::vector<Vector<T>>& cols) {
  if (cols.empty()) return {};
  Matrix m(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.rows())
      throw Error(ErrorKind::DimensionMismatch, "columns of unequal length");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
  }
  return m;
}

/// Exact product. Rows are independent, so the parallel kernel computes the
/// same entries as the serial one in the same summation order.
template <ExactField T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b, ExecPolicy policy = default_policy()) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::DimensionMismatch,
                Matrix<T>::shape_text(a) + " times " + Matrix<T>::shape_text(b));
  Matrix<T> c(a.rows(), b.cols());
  const auto rows = static_cast<long>(a.rows());
  const auto row_kernel = [&](std::size_t i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc{};
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (is_zero(a(i, k))) continue;
        acc += a(i, k) * b(k, j);
      }
      c(i, j) = std::move(acc);
    }
  };
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < rows; ++i) row_kernel(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < rows; ++i) row_kernel(static_cast<std::size_t>(i));
  }
  return c;
}

template <ExactField T>
Vector<T> apply(const Matrix<T>& a, const Vector<T>& v) {
  return matmul(a, Matrix<T>::column(v), ExecPolicy::serial).col(0);
}

template <ExactField T>
Matrix<T> power(const Matrix<T>& a, unsigned e) {
  Matrix<T> r = Matrix<T>::identity(a.rows());
  for (unsigned k = 0; k < e; ++k) r = r * a;
  return r;
}

template <ExactField T>
bool is_zero_vector(const Vector<T>& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

/// C_0 + C_1 s + ... + C_m s^m with square n x n coefficients.
template <ExactField T>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::vector<Matrix<T>> coeffs, std::size_t n) : n_(n), c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::size_t size() const { return n_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Matrix<T>>& coeffs() const { return c_; }

  Poly<T> entry(std::size_t i, std::size_t j) const {
    std::vector<T> e;
    for (const auto& m : c_) e.push_back(m(i, j));
    return Poly<T>(std::move(e));
  }

  template <class U>
  Matrix<U> eval(const U& s) const {
    Matrix<U> acc(n_, n_);
    for (std::size_t k = c_.size(); k-- > 0;) {
      Matrix<U> next = acc * s;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) next(i, j) += U(c_[k](i, j));
      acc = std::move(next);
    }
    return acc;
  }

  template <ExactField U>
  PolyMatrix<U> cast() const {
    std::vector<Matrix<U>> c;
    for (const auto& m : c_) c.push_back(m.template cast<U>());
    return PolyMatrix<U>(std::move(c), n_);
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Matrix<T>> c_;
};

}  // namespace matpfd
