#pragma once

// Closed-form matrix exponentials obtained by inverse Laplace transform of
// the resolvent decomposition, their exact derivatives, numeric evaluation,
// and an independent scaling-and-squaring oracle.
//
//   1/(s - lambda)^j                  ->  t^(j-1) e^(lambda t) / (j-1)!
//   ((s + a) P + Q) / ((s + a)^2 + d) ->  e^(-a t) [cos(w t) P + sin(w t) / w Q],  w = sqrt(d)

#include <vector>

#include "matpfd/pfd.hpp"

namespace matpfd {

enum class TermKind { exp, cos, sin };

/// exp: coeff * t^power * e^(lambda t)     (the 1/power! is folded into coeff)
/// cos: coeff * e^(-a t) cos(sqrt(d) t)
/// sin: coeff * e^(-a t) sin(sqrt(d) t) / sqrt(d)
template <ExactField T>
struct ExpTerm {
  TermKind kind = TermKind::exp;
  Matrix<T> coeff;
  T lambda{};
  int power = 0;
  Rational a;
  Rational d;

  bool same_basis(const ExpTerm& o) const {
    if (kind != o.kind) return false;
    if (kind == TermKind::exp) return lambda == o.lambda && power == o.power;
    return a == o.a && d == o.d;
  }
  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Sum of terms with matrix (or column-vector) coefficients. Kept canonical:
/// one term per basis function, zero coefficients dropped, terms sorted.
template <ExactField T>
class ClosedForm {
 public:
  ClosedForm() = default;
  ClosedForm(std::size_t rows, std::size_t cols, std::vector<ExpTerm<T>> terms);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<ExpTerm<T>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Exact value at t = 0.
  Matrix<T> at_zero() const;
  /// Term-wise product rule, recombined onto the same basis.
  ClosedForm derivative() const;
  /// X * (this), X constant.
  ClosedForm left_multiply(const Matrix<T>& x) const;
  /// (this) * X, X constant; used to apply the exponential to y0.
  ClosedForm right_multiply(const Matrix<T>& x) const;
  ClosedForm column(std::size_t j) const;

  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExpTerm<T>> terms_;
};

template <ExactField T>
ClosedForm<T> exp_from_pfd(const ResolventPFD<T>& pfd);
ClosedForm<Rational> exp_from_pfd(const RealResolventPFD& pfd);

template <ExactField T>
ClosedForm<T> exp_derivative(const ClosedForm<T>& cf) {
  return cf.derivative();
}

/// Row-major double matrix used at the numeric boundary.
struct DMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DMatrix() = default;
  DMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  static DMatrix identity(std::size_t n);
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  double max_abs() const;
};

DMatrix operator*(const DMatrix& x, const DMatrix& y);
/// max |x - ref| / max |ref|
double relative_error(const DMatrix& x, const DMatrix& ref);

template <ExactField T>
DMatrix to_dmatrix(const Matrix<T>& m);

/// Evaluates every basis function in double precision; complex-mode terms
/// are summed in complex arithmetic and the real part returned.
template <ExactField T>
DMatrix exp_eval(const ClosedForm<T>& cf, double t);

/// Scaling and squaring with a truncated Taylor series; independent of the
/// decomposition path.
DMatrix numeric_oracle_exp(const Matrix<Rational>& a, double t);

template <ExactField T>
using IVPSolution = ClosedForm<T>;  // n x 1 coefficients

/// Fundamental solutions: column j of e^(tA), multiplied by the constant C_(j+1).
template <ExactField T>
struct GeneralSolution {
  std::vector<ClosedForm<T>> columns;
};

/// y(t) = e^(tA) y0.
template <ExactField T>
IVPSolution<T> solve_ivp(const ClosedForm<T>& exponential, const Vector<T>& y0);

template <ExactField T>
GeneralSolution<T> general_solution(const ClosedForm<T>& exponential);

/// exp_derivative(cf) == A * cf on the shared basis, exactly.
template <ExactField T>
bool derivative_identity_holds(const Matrix<T>& a, const ClosedForm<T>& cf) {
  return cf.derivative() == cf.left_multiply(a);
}

}  // namespace matpfd
