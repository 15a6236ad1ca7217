#include "matpfd/expode.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace matpfd {

namespace {

template <ExactField T>
bool lambda_less(const T& x, const T& y) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x < y;
  } else {
    return lex_less(x, y);
  }
}

template <ExactField T>
bool term_less(const ExpTerm<T>& x, const ExpTerm<T>& y) {
  const bool xq = x.kind != TermKind::exp;
  const bool yq = y.kind != TermKind::exp;
  if (xq != yq) return !xq;
  if (!xq) {
    if (x.lambda != y.lambda) return lambda_less(x.lambda, y.lambda);
    return x.power < y.power;
  }
  if (x.a != y.a) return x.a < y.a;
  if (x.d != y.d) return x.d < y.d;
  return x.kind == TermKind::cos && y.kind == TermKind::sin;
}

template <ExactField T>
ExpTerm<T> with_coeff(const ExpTerm<T>& basis, Matrix<T> coeff) {
  ExpTerm<T> t = basis;
  t.coeff = std::move(coeff);
  return t;
}

}  // namespace

template <ExactField T>
ClosedForm<T>::ClosedForm(std::size_t rows, std::size_t cols, std::vector<ExpTerm<T>> terms)
    : rows_(rows), cols_(cols) {
  for (auto& term : terms) {
    auto hit = std::find_if(terms_.begin(), terms_.end(), [&](const auto& t) { return t.same_basis(term); });
    if (hit != terms_.end())
      hit->coeff += term.coeff;
    else
      terms_.push_back(std::move(term));
  }
  std::erase_if(terms_, [](const auto& t) { return t.coeff.is_zero(); });
  std::sort(terms_.begin(), terms_.end(), term_less<T>);
}

template <ExactField T>
Matrix<T> ClosedForm<T>::at_zero() const {
  Matrix<T> acc(rows_, cols_);
  for (const auto& t : terms_) {
    if ((t.kind == TermKind::exp && t.power == 0) || t.kind == TermKind::cos) acc += t.coeff;
  }
  return acc;
}

template <ExactField T>
ClosedForm<T> ClosedForm<T>::derivative() const {
  std::vector<ExpTerm<T>> out;
  for (const auto& t : terms_) {
    switch (t.kind) {
      case TermKind::exp: {
        out.push_back(with_coeff(t, t.coeff * t.lambda));
        if (t.power > 0) {
          ExpTerm<T> lower = with_coeff(t, t.coeff * T(static_cast<long>(t.power)));
          --lower.power;
          out.push_back(std::move(lower));
        }
        break;
      }
      case TermKind::cos: {
        // (e^(-at) cos wt)' = -a e^(-at) cos wt - d e^(-at) sin(wt)/w
        out.push_back(with_coeff(t, t.coeff * T(-t.a)));
        ExpTerm<T> s = with_coeff(t, t.coeff * T(-t.d));
        s.kind = TermKind::sin;
        out.push_back(std::move(s));
        break;
      }
      case TermKind::sin: {
        // (e^(-at) sin(wt)/w)' = -a e^(-at) sin(wt)/w + e^(-at) cos wt
        out.push_back(with_coeff(t, t.coeff * T(-t.a)));
        ExpTerm<T> c = with_coeff(t, t.coeff);
        c.kind = TermKind::cos;
        out.push_back(std::move(c));
        break;
      }
    }
  }
  return ClosedForm(rows_, cols_, std::move(out));
}

template <ExactField T>
ClosedForm<T> ClosedForm<T>::left_multiply(const Matrix<T>& x) const {
  std::vector<ExpTerm<T>> out;
  for (const auto& t : terms_) out.push_back(with_coeff(t, x * t.coeff));
  return ClosedForm(x.rows(), cols_, std::move(out));
}

template <ExactField T>
ClosedForm<T> ClosedForm<T>::right_multiply(const Matrix<T>& x) const {
  std::vector<ExpTerm<T>> out;
  for (const auto& t : terms_) out.push_back(with_coeff(t, t.coeff * x));
  return ClosedForm(rows_, x.cols(), std::move(out));
}

template <ExactField T>
ClosedForm<T> ClosedForm<T>::column(std::size_t j) const {
  Matrix<T> e(cols_, 1);
  e(j, 0) = T(1);
  return right_multiply(e);
}

template <ExactField T>
ClosedForm<T> exp_from_pfd(const ResolventPFD<T>& pfd) {
  std::vector<ExpTerm<T>> terms;
  for (const auto& b : pfd.blocks) {
    Rational factorial(1);
    for (int j = 1; j <= b.multiplicity(); ++j) {
      if (j > 1) factorial *= Rational(j - 1);
      ExpTerm<T> term;
      term.kind = TermKind::exp;
      term.coeff = b.B(j) * T(factorial.inv());
      term.lambda = b.eigenvalue;
      term.power = j - 1;
      terms.push_back(std::move(term));
    }
  }
  return ClosedForm<T>(pfd.n, pfd.n, std::move(terms));
}

ClosedForm<Rational> exp_from_pfd(const RealResolventPFD& pfd) {
  std::vector<ExpTerm<Rational>> terms = exp_from_pfd(pfd.linear).terms();
  for (const auto& q : pfd.quadratic) {
    ExpTerm<Rational> c;
    c.kind = TermKind::cos;
    c.coeff = q.P;
    c.a = q.factor.a;
    c.d = q.factor.d;
    ExpTerm<Rational> s = c;
    s.kind = TermKind::sin;
    s.coeff = q.Q;
    terms.push_back(std::move(c));
    terms.push_back(std::move(s));
  }
  return ClosedForm<Rational>(pfd.n, pfd.n, std::move(terms));
}

DMatrix DMatrix::identity(std::size_t n) {
  DMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DMatrix::max_abs() const {
  double m = 0.0;
  for (double x : data) m = std::max(m, std::abs(x));
  return m;
}

DMatrix operator*(const DMatrix& x, const DMatrix& y) {
  DMatrix z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const double xik = x(i, k);
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

double relative_error(const DMatrix& x, const DMatrix& ref) {
  double diff = 0.0;
  for (std::size_t k = 0; k < x.data.size(); ++k) diff = std::max(diff, std::abs(x.data[k] - ref.data[k]));
  const double scale = ref.max_abs();
  return scale > 0.0 ? diff / scale : diff;
}

template <ExactField T>
DMatrix to_dmatrix(const Matrix<T>& m) {
  DMatrix d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = to_complex(m(i, j)).real();
  return d;
}

template <ExactField T>
DMatrix exp_eval(const ClosedForm<T>& cf, double t) {
  std::vector<std::complex<double>> acc(cf.rows() * cf.cols());
  for (const auto& term : cf.terms()) {
    std::complex<double> scale;
    switch (term.kind) {
      case TermKind::exp:
        scale = std::pow(t, term.power) * std::exp(to_complex(term.lambda) * t);
        break;
      case TermKind::cos:
        scale = std::exp(-term.a.to_double() * t) * std::cos(std::sqrt(term.d.to_double()) * t);
        break;
      case TermKind::sin: {
        const double w = std::sqrt(term.d.to_double());
        scale = std::exp(-term.a.to_double() * t) * std::sin(w * t) / w;
        break;
      }
    }
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += scale * to_complex(term.coeff.data()[k]);
  }
  DMatrix out(cf.rows(), cf.cols());
  for (std::size_t k = 0; k < acc.size(); ++k) out.data[k] = acc[k].real();
  return out;
}

DMatrix numeric_oracle_exp(const Matrix<Rational>& a, double t) {
  const std::size_t n = a.rows();
  DMatrix x = to_dmatrix(a);
  for (double& v : x.data) v *= t;
  double norm = 0.0;  // infinity norm
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(x(i, j));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (double& v : x.data) v *= scale;

  DMatrix sum = DMatrix::identity(n);
  DMatrix term = DMatrix::identity(n);
  for (int k = 1; k < 64; ++k) {
    term = term * x;
    for (double& v : term.data) v /= k;
    for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += term.data[i];
    if (term.max_abs() <= 1e-16 * sum.max_abs()) break;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

template <ExactField T>
IVPSolution<T> solve_ivp(const ClosedForm<T>& exponential, const Vector<T>& y0) {
  if (y0.size() != exponential.cols())
    throw Error(ErrorKind::DimensionMismatch, "initial vector has length " + std::to_string(y0.size()) +
                                                  ", expected " + std::to_string(exponential.cols()));
  return exponential.right_multiply(Matrix<T>::column(y0));
}

template <ExactField T>
GeneralSolution<T> general_solution(const ClosedForm<T>& exponential) {
  GeneralSolution<T> out;
  for (std::size_t j = 0; j < exponential.cols(); ++j) out.columns.push_back(exponential.column(j));
  return out;
}

#define MATPFD_INSTANTIATE(T)                                                       \
  template class ClosedForm<T>;                                                     \
  template ClosedForm<T> exp_from_pfd(const ResolventPFD<T>&);                      \
  template DMatrix to_dmatrix(const Matrix<T>&);                                    \
  template DMatrix exp_eval(const ClosedForm<T>&, double);                          \
  template IVPSolution<T> solve_ivp(const ClosedForm<T>&, const Vector<T>&);        \
  template GeneralSolution<T> general_solution(const ClosedForm<T>&);

MATPFD_INSTANTIATE(Rational)
MATPFD_INSTANTIATE(Gaussian)

#undef MATPFD_INSTANTIATE

}  // namespace matpfd
