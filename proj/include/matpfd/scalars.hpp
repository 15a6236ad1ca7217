#pragma once

// Exact scalar domains: arbitrary-precision integers and rationals (GMP),
// Gaussian rationals Q(i), and the quadratic extension Q(sqrt(d)).

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <concepts>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace matpfd {

using Integer = mpz_class;

class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num);                        // NOLINT(google-explicit-constructor)
  /// Reduces to lowest terms with a positive denominator; throws ZeroDenominator.
  Rational(const Integer& num, const Integer& den);

  static Rational from_mpq(const mpq_class& q);
  /// Accepts `-12`, `3/4`, `+5`, `-6/4`; throws ParseError / ZeroDenominator.
  static Rational parse(std::string_view text);

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  const mpq_class& mpq() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  std::string str() const;

  Rational operator-() const { return from_mpq(-q_); }
  Rational inv() const;
  Rational abs() const { return from_mpq(::abs(q_)); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

/// The exact square root of x when x is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& x);

Rational pow(const Rational& base, unsigned exponent);

/// a + b i with rational parts.
class Gaussian {
 public:
  Gaussian() = default;
  template <std::integral I>
  Gaussian(I value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  /// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` with rational a, b.
  static Gaussian parse(std::string_view text);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  Gaussian conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Gaussian inv() const;
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string str() const;

  Gaussian operator-() const { return {-re_, -im_}; }
  Gaussian& operator+=(const Gaussian& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Gaussian& operator-=(const Gaussian& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o) { return *this *= o.inv(); }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) = default;

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const Gaussian& x);

/// Lexicographic (re, im) order used for deterministic eigenvalue ordering.
inline bool lex_less(const Gaussian& a, const Gaussian& b) {
  if (a.re() != b.re()) return a.re() < b.re();
  return a.im() < b.im();
}

/// a + b sqrt(d), d a positive rational that is not a rational square.
/// Operands must share d (ExtensionMismatch otherwise).
class SqrtExt {
 public:
  SqrtExt(Rational a, Rational b, Rational d);

  static SqrtExt parse(std::string_view text);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& d() const { return d_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  SqrtExt conj() const { return {a_, -b_, d_, Unchecked{}}; }
  /// a^2 - b^2 d
  Rational norm() const { return a_ * a_ - b_ * b_ * d_; }
  SqrtExt inv() const;
  double to_double() const;
  std::string str() const;

  SqrtExt operator-() const { return {-a_, -b_, d_, Unchecked{}}; }
  SqrtExt& operator+=(const SqrtExt& o);
  SqrtExt& operator-=(const SqrtExt& o);
  SqrtExt& operator*=(const SqrtExt& o);
  SqrtExt& operator/=(const SqrtExt& o) { return *this *= o.inv(); }
  SqrtExt& operator*=(const Rational& k) { a_ *= k; b_ *= k; return *this; }

  friend SqrtExt operator+(SqrtExt x, const SqrtExt& y) { return x += y; }
  friend SqrtExt operator-(SqrtExt x, const SqrtExt& y) { return x -= y; }
  friend SqrtExt operator*(SqrtExt x, const SqrtExt& y) { return x *= y; }
  friend SqrtExt operator/(SqrtExt x, const SqrtExt& y) { return x /= y; }
  friend SqrtExt operator*(SqrtExt x, const Rational& k) { return x *= k; }
  friend bool operator==(const SqrtExt& x, const SqrtExt& y) = default;

 private:
  struct Unchecked {};
  SqrtExt(Rational a, Rational b, Rational d, Unchecked)
      : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}
  void require_same(const SqrtExt& o) const;

  Rational a_;
  Rational b_;
  Rational d_;
};

std::ostream& operator<<(std::ostream& os, const SqrtExt& x);

// Uniform helpers used by the templated linear algebra.
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Gaussian& x) { return x.is_zero(); }
inline std::complex<double> to_complex(const Rational& x) { return {x.to_double(), 0.0}; }
inline std::complex<double> to_complex(const Gaussian& x) { return x.to_complex(); }
inline std::string to_string(const Rational& x) { return x.str(); }
inline std::string to_string(const Gaussian& x) { return x.str(); }

template <class T>
concept ExactField = std::same_as<T, Rational> || std::same_as<T, Gaussian>;

}  // namespace matpfd
