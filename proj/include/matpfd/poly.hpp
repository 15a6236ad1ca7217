#pragma once

// Dense univariate polynomials over an exact field, coefficients in
// ascending degree. The zero polynomial has no coefficients.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "matpfd/error.hpp"
#include "matpfd/scalars.hpp"

namespace matpfd {

template <ExactField T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const T& value) { return Poly(std::vector<T>{value}); }
  /// s - root
  static Poly linear(const T& root) { return Poly(std::vector<T>{-root, T(1)}); }
  static Poly monomial(std::size_t degree, const T& coeff = T(1)) {
    std::vector<T> c(degree + 1);
    c[degree] = coeff;
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  /// Coefficient of s^k, zero beyond the degree.
  T operator[](std::size_t k) const { return k < c_.size() ? c_[k] : T(); }
  const T& lead() const { return c_.back(); }

  template <class U>
  U eval(const U& x) const {
    U acc{};
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + U(c_[k]);
    return acc;
  }

  Poly derivative() const {
    std::vector<T> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
    return Poly(std::move(d));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }
  Poly& operator*=(const T& k) {
    for (auto& x : c_) x *= k;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& k) { return a *= k; }
  friend Poly operator*(const T& k, Poly a) { return a *= k; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) = default;

  Poly pow(unsigned e) const {
    Poly r = constant(T(1));
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  template <ExactField U>
  Poly<U> cast() const {
    std::vector<U> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(U(x));
    return Poly<U>(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero_scalar(c_.back())) c_.pop_back();
  }
  static bool is_zero_scalar(const T& x) { return matpfd::is_zero(x); }

  std::vector<T> c_;
};

/// (quotient, remainder) with deg(remainder) < deg(divisor).
template <ExactField T>
std::pair<Poly<T>, Poly<T>> divrem(const Poly<T>& num, const Poly<T>& den) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZeroPoly, "polynomial division by zero");
  std::vector<T> rem = num.coeffs();
  const int dd = den.degree();
  if (num.degree() < dd) return {Poly<T>(), num};
  std::vector<T> quo(static_cast<std::size_t>(num.degree() - dd + 1));
  const T lead_inv = T(1) / den.lead();
  for (int k = num.degree(); k >= dd; --k) {
    const T q = rem[static_cast<std::size_t>(k)] * lead_inv;
    quo[static_cast<std::size_t>(k - dd)] = q;
    if (is_zero(q)) continue;
    for (int j = 0; j <= dd; ++j)
      rem[static_cast<std::size_t>(k - dd + j)] -= q * den.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

/// q(s) = p(s + c).
template <ExactField T>
Poly<T> taylor_shift(const Poly<T>& p, const T& c) {
  std::vector<T> a = p.coeffs();
  const std::size_t n = a.size();
  // Repeated synthetic division by (s - c); O(n^2) exact operations.
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k-- > i;) a[k] += c * a[k + 1];
  return Poly<T>(std::move(a));
}

/// Power series num/den truncated to `order` terms; requires den(0) != 0.
template <ExactField T>
Poly<T> series_div(const Poly<T>& num, const Poly<T>& den, std::size_t order) {
  if (den.is_zero() || is_zero(den[0]))
    throw Error(ErrorKind::SingularSeriesDivision, "series denominator vanishes at 0");
  const T inv0 = T(1) / den[0];
  std::vector<T> q(order);
  for (std::size_t k = 0; k < order; ++k) {
    T acc = num[k];
    const std::size_t top = std::min<std::size_t>(k, static_cast<std::size_t>(den.degree()));
    for (std::size_t j = 1; j <= top; ++j) acc -= den[j] * q[k - j];
    q[k] = acc * inv0;
  }
  return Poly<T>(std::move(q));
}

/// Remainder of p modulo m.
template <ExactField T>
Poly<T> mod(const Poly<T>& p, const Poly<T>& m) {
  return divrem(p, m).second;
}

/// Inverse of a modulo m; throws SingularMatrix when gcd(a, m) != 1.
template <ExactField T>
Poly<T> inverse_mod(const Poly<T>& a, const Poly<T>& m) {
  Poly<T> r0 = m, r1 = mod(a, m);
  Poly<T> t0, t1 = Poly<T>::constant(T(1));
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    Poly<T> t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.degree() != 0) throw Error(ErrorKind::SingularMatrix, "polynomials are not coprime");
  return mod(t0 * (T(1) / r0[0]), m);
}

/// Human-readable rendering in the variable `var`, e.g. "s^3 - 6s^2 + 12s - 8".
template <ExactField T>
std::string to_string(const Poly<T>& p, const std::string& var = "s") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const T& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (is_zero(c)) continue;
    std::string text = to_string(c);
    bool negative = false;
    if constexpr (std::is_same_v<T, Rational>) {
      negative = c.sign() < 0;
      if (negative) text = (-c).str();
    } else {
      if (c.is_real()) {
        negative = c.re().sign() < 0;
        if (negative) text = (-c).str();
      } else {
        text = "(" + text + ")";
      }
    }
    if (!out.empty())
      out += negative ? " - " : " + ";
    else if (negative)
      out += "-";
    const bool unit = text == "1";
    if (k == 0) {
      out += text;
      continue;
    }
    if (!unit) out += text.find('/') != std::string::npos && text.front() != '(' ? "(" + text + ")" : text;
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace matpfd
