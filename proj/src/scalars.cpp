#include "matpfd/scalars.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "matpfd/error.hpp"

namespace matpfd {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad_token(std::string_view text, std::string_view what) {
  throw Error(ErrorKind::ParseError, std::string(what) + " '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(const Integer& num) : q_(num) {}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::ZeroDenominator, "denominator is zero");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_mpq(const mpq_class& q) {
  Rational r;
  r.q_ = q;
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) bad_token(text, "not a rational");
  Integer num(std::string(num_text), 10);
  const Integer den(std::string(den_text), 10);
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const { return q_.get_str(10); }

Rational Rational::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return from_mpq(1 / q_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero rational");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x.sign() < 0) return std::nullopt;
  const Integer n = x.num();
  const Integer d = x.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  return Rational(Integer(sqrt(n)), Integer(sqrt(d)));
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational r(1);
  for (unsigned k = 0; k < exponent; ++k) r *= base;
  return r;
}

// ---------------------------------------------------------------------------

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Gaussian Gaussian::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero gaussian rational");
  const Rational n = norm();
  return {re_ / n, -im_ / n};
}

std::string Gaussian::str() const {
  if (im_.is_zero()) return re_.str();
  std::string imag;
  if (im_ == Rational(1))
    imag = "i";
  else if (im_ == Rational(-1))
    imag = "-i";
  else
    imag = im_.str() + "i";
  if (re_.is_zero()) return imag;
  return re_.str() + (im_.sign() > 0 ? "+" : "") + imag;
}

Gaussian Gaussian::parse(std::string_view text) {
  if (text.empty()) bad_token(text, "empty gaussian rational");
  if (text.back() != 'i') return Gaussian(Rational::parse(text));
  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  const std::string_view re_text = split == std::string_view::npos ? "" : body.substr(0, split);
  std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);
  Rational im;
  if (im_text.empty() || im_text == "+")
    im = Rational(1);
  else if (im_text == "-")
    im = Rational(-1);
  else
    im = Rational::parse(im_text);
  const Rational re = re_text.empty() ? Rational() : Rational::parse(re_text);
  return {re, im};
}

std::ostream& operator<<(std::ostream& os, const Gaussian& x) { return os << x.str(); }

// ---------------------------------------------------------------------------

SqrtExt::SqrtExt(Rational a, Rational b, Rational d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (d_.sign() <= 0 || exact_sqrt(d_))
    throw Error(ErrorKind::ExtensionMismatch,
                "radicand " + d_.str() + " must be positive and not a rational square");
}

void SqrtExt::require_same(const SqrtExt& o) const {
  if (d_ != o.d_)
    throw Error(ErrorKind::ExtensionMismatch,
                "sqrt(" + d_.str() + ") vs sqrt(" + o.d_.str() + ")");
}

SqrtExt& SqrtExt::operator+=(const SqrtExt& o) {
  require_same(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

SqrtExt& SqrtExt::operator-=(const SqrtExt& o) {
  require_same(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

SqrtExt& SqrtExt::operator*=(const SqrtExt& o) {
  require_same(o);
  Rational a = a_ * o.a_ + b_ * o.b_ * d_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

SqrtExt SqrtExt::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero surd");
  // norm is nonzero because d is not a rational square
  const Rational n = norm();
  return {a_ / n, -b_ / n, d_, Unchecked{}};
}

double SqrtExt::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(d_.to_double());
}

std::string SqrtExt::str() const {
  const std::string root = "sqrt(" + d_.str() + ")";
  std::string surd;
  if (b_ == Rational(1))
    surd = root;
  else if (b_ == Rational(-1))
    surd = "-" + root;
  else
    surd = b_.str() + "*" + root;
  if (a_.is_zero()) return surd;
  if (b_.sign() < 0) return a_.str() + " - " + surd.substr(1);
  return a_.str() + " + " + surd;
}

SqrtExt SqrtExt::parse(std::string_view text) {
  // a, a + b*sqrt(d), a - b*sqrt(d), b*sqrt(d), sqrt(d), -sqrt(d)
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  const auto root = s.find("sqrt(");
  if (root == std::string::npos) bad_token(text, "surd without sqrt(d)");
  if (s.back() != ')') bad_token(text, "malformed surd");
  const Rational d = Rational::parse(std::string_view(s).substr(root + 5, s.size() - root - 6));
  std::string head = s.substr(0, root);
  if (!head.empty() && head.back() == '*') head.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = head.size(); k-- > 1;) {
    if (head[k] == '+' || head[k] == '-') {
      split = k;
      break;
    }
  }
  const std::string a_text = split == std::string::npos ? "" : head.substr(0, split);
  const std::string b_text = split == std::string::npos ? head : head.substr(split);
  Rational b;
  if (b_text.empty() || b_text == "+")
    b = Rational(1);
  else if (b_text == "-")
    b = Rational(-1);
  else
    b = Rational::parse(b_text);
  const Rational a = a_text.empty() ? Rational() : Rational::parse(a_text);
  return {a, b, d};
}

std::ostream& operator<<(std::ostream& os, const SqrtExt& x) { return os << x.str(); }

}  // namespace matpfd
