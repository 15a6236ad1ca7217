#pragma once

// Fraction-free (Bareiss) elimination and the Faddeev-LeVerrier iteration.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "matpfd/matrix.hpp"

namespace matpfd {

/// Row echelon form produced by fraction-free elimination. Every division is
/// by the previous pivot and is exact; over Z it never leaves the integers.
template <ExactField T>
struct Echelon {
  Matrix<T> form;
  std::vector<std::size_t> pivot_cols;
  bool odd_swaps = false;
  std::size_t rank() const { return pivot_cols.size(); }
};

template <ExactField T>
Echelon<T> bareiss(Matrix<T> m) {
  Echelon<T> out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  T prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      out.odd_swaps = !out.odd_swaps;
    }
    const T pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const T lead = m(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) m(i, j) = (pivot * m(i, j) - lead * m(r, j)) / prev;
      m(i, c) = T();
    }
    prev = pivot;
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.form = std::move(m);
  return out;
}

template <ExactField T>
T det(const Matrix<T>& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  if (m.rows() == 0) return T(1);
  const auto e = bareiss(m);
  if (e.rank() < m.rows()) return T();
  // The last Bareiss pivot is the determinant up to the row-swap sign.
  T d = e.form(m.rows() - 1, m.cols() - 1);
  return e.odd_swaps ? -d : d;
}

template <ExactField T>
std::size_t rank(const Matrix<T>& m) {
  return bareiss(m).rank();
}

/// Scales v to integer (Gaussian-integer) entries with content 1 and first
/// nonzero entry positive (equal to a positive integer).
template <ExactField T>
Vector<T> integral_normalize(Vector<T> v) {
  auto first = std::find_if(v.begin(), v.end(), [](const T& x) { return !is_zero(x); });
  if (first == v.end()) return v;
  if constexpr (std::is_same_v<T, Gaussian>) {
    const Gaussian lead = *first;
    for (auto& x : v) x = x / lead;
  }
  std::vector<const Rational*> parts;
  for (auto& x : v) {
    if constexpr (std::is_same_v<T, Rational>) {
      parts.push_back(&x);
    } else {
      parts.push_back(&x.re());
      parts.push_back(&x.im());
    }
  }
  Integer lcm = 1, gcd = 0;
  for (auto* p : parts) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p->den().get_mpz_t());
  for (auto* p : parts) {
    const Integer scaled = p->num() * (lcm / p->den());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational factor(lcm, gcd);
  if constexpr (std::is_same_v<T, Rational>) {
    if (first->sign() < 0) factor = -factor;
  }
  for (auto& x : v) x *= T(factor);
  return v;
}

/// Basis of {x : m x = 0}, each vector normalized by integral_normalize and
/// ordered by free column.
template <ExactField T>
std::vector<Vector<T>> nullspace(const Matrix<T>& m) {
  const auto e = bareiss(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vector<T>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector<T> x(n);
    x[f] = T(1);
    for (std::size_t r = e.rank(); r-- > 0;) {
      const std::size_t pc = e.pivot_cols[r];
      T acc{};
      for (std::size_t j = pc + 1; j < n; ++j) acc += e.form(r, j) * x[j];
      x[pc] = -acc / e.form(r, pc);
    }
    basis.push_back(integral_normalize(std::move(x)));
  }
  return basis;
}

/// One exact solution of m x = rhs (free variables zero); throws
/// InconsistentSystem when none exists.
template <ExactField T>
Vector<T> solve(const Matrix<T>& m, const Vector<T>& rhs) {
  if (rhs.size() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  const auto e = bareiss(std::move(aug));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols())
    throw Error(ErrorKind::InconsistentSystem, "right-hand side is not in the column space");
  Vector<T> x(m.cols());
  for (std::size_t r = e.rank(); r-- > 0;) {
    const std::size_t pc = e.pivot_cols[r];
    T acc = e.form(r, m.cols());
    for (std::size_t j = pc + 1; j < m.cols(); ++j) acc -= e.form(r, j) * x[j];
    x[pc] = acc / e.form(r, pc);
  }
  return x;
}

template <ExactField T>
bool in_column_space(const Matrix<T>& m, const Vector<T>& v) {
  try {
    (void)solve(m, v);
    return true;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::InconsistentSystem) throw;
    return false;
  }
}

template <ExactField T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  const auto e = bareiss(std::move(aug));
  if (e.rank() < n || e.pivot_cols[n - 1] != n - 1)
    throw Error(ErrorKind::SingularMatrix, "matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t r = n; r-- > 0;) {
      T acc = e.form(r, n + col);
      for (std::size_t j = r + 1; j < n; ++j) acc -= e.form(r, j) * inv(j, col);
      inv(r, col) = acc / e.form(r, r);
    }
  }
  return inv;
}

template <ExactField T>
T trace(const Matrix<T>& m) {
  T t{};
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

template <ExactField T>
struct CharpolyAdjugate {
  Poly<T> charpoly;       // det(sI - A), monic of degree n
  PolyMatrix<T> adjugate;  // M(s) with (sI - A) M(s) = det(sI - A) I
};

/// Faddeev-LeVerrier: N_0 = I, c_k = -tr(A N_{k-1}) / k, N_k = A N_{k-1} + c_k I.
/// det(sI - A) = sum c_k s^(n-k) and adj(sI - A) = sum N_k s^(n-1-k).
template <ExactField T>
CharpolyAdjugate<T> faddeev_leverrier(const Matrix<T>& a, ExecPolicy policy = default_policy()) {
  if (!a.is_square()) throw Error(ErrorKind::NonSquare, "matrix is " + Matrix<T>::shape_text(a));
  const std::size_t n = a.rows();
  if (n == 0) throw Error(ErrorKind::Empty, "empty matrix");
  if (n > kMaxDimension)
    throw Error(ErrorKind::SizeLimit, "dimension " + std::to_string(n) + " exceeds the limit of " +
                                          std::to_string(kMaxDimension));
  std::vector<T> c(n + 1);
  c[n] = T(1);
  std::vector<Matrix<T>> adj(n);
  Matrix<T> nk = Matrix<T>::identity(n);
  adj[n - 1] = nk;
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<T> an = matmul(a, nk, policy);
    const T ck = -trace(an) / T(static_cast<long>(k));
    c[n - k] = ck;
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) an(i, i) += ck;
    nk = std::move(an);
    adj[n - 1 - k] = nk;
  }
  return {Poly<T>(std::move(c)), PolyMatrix<T>(std::move(adj), n)};
}

}  // namespace matpfd
