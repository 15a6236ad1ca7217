#include "matpfd/factor.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace matpfd {

namespace {

/// Positive divisors of |n| (n != 0). Trial division; a leftover cofactor
/// above the search bound is treated as prime.
std::vector<Integer> divisors(const Integer& n) {
  Integer m = abs(n);
  std::vector<std::pair<Integer, int>> primes;
  const Integer bound = 2000000;
  for (Integer p = 2; p * p <= m && p <= bound; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) primes.emplace_back(p, e);
    if (m > 1 && mpz_probab_prime_p(m.get_mpz_t(), 25) != 0) break;
  }
  if (m > 1) primes.emplace_back(m, 1);
  std::vector<Integer> out{1};
  for (const auto& [p, e] : primes) {
    const std::size_t count = out.size();
    Integer power = 1;
    for (int k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t j = 0; j < count; ++j) out.push_back(out[j] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <ExactField T>
Poly<T> make_monic(const Poly<T>& p) {
  return p * (T(1) / p.lead());
}

/// Number of times (s - root) divides p; p is replaced by the cofactor.
template <ExactField T>
int deflate(Poly<T>& p, const T& root) {
  int count = 0;
  while (p.degree() >= 1) {
    auto [q, r] = divrem(p, Poly<T>::linear(root));
    if (!r.is_zero()) break;
    p = std::move(q);
    ++count;
  }
  return count;
}

[[noreturn]] void irrational(const Poly<Rational>& residual, const std::string& why) {
  throw Error(ErrorKind::IrrationalSpectrum,
              "residual factor " + to_string(residual) + " " + why);
}

void add_linear(std::vector<LinearFactor>& out, const Gaussian& root, int mult) {
  for (auto& f : out) {
    if (f.root == root) {
      f.multiplicity += mult;
      return;
    }
  }
  out.push_back({root, mult});
}

void add_quadratic(FactoredCharPoly& out, const QuadraticFactor& q) {
  if (std::find(out.quadratic.begin(), out.quadratic.end(), q) != out.quadratic.end())
    throw Error(ErrorKind::RepeatedQuadraticFactor,
                "irreducible factor " + to_string(q.poly()) + " divides the residual more than once");
  out.quadratic.push_back(q);
}

/// Monic quadratic s^2 + p s + c without rational roots.
void place_quadratic(FactoredCharPoly& out, const Poly<Rational>& quad) {
  const Rational a = quad[1] / Rational(2);
  const Rational d = quad[0] - a * a;
  if (d.sign() <= 0) irrational(quad, "has irrational real roots");
  if (out.mode == Mode::real) {
    add_quadratic(out, {a, d});
    return;
  }
  const auto w = exact_sqrt(d);
  if (!w) irrational(quad, "has roots " + (-a).str() + " +- i sqrt(" + d.str() + ") outside Q(i)");
  add_linear(out.linear, Gaussian(-a, *w), 1);
  add_linear(out.linear, Gaussian(-a, -*w), 1);
}

}  // namespace

int FactoredCharPoly::degree() const {
  int deg = 0;
  for (const auto& f : linear) deg += f.multiplicity;
  return deg + 2 * static_cast<int>(quadratic.size());
}

bool FactoredCharPoly::all_roots_real() const {
  return quadratic.empty() &&
         std::all_of(linear.begin(), linear.end(), [](const auto& f) { return f.root.is_real(); });
}

Poly<Gaussian> FactoredCharPoly::expand() const {
  auto acc = Poly<Gaussian>::constant(Gaussian(1));
  for (const auto& f : linear)
    acc = acc * Poly<Gaussian>::linear(f.root).pow(static_cast<unsigned>(f.multiplicity));
  for (const auto& q : quadratic) acc = acc * q.poly().cast<Gaussian>();
  return acc;
}

std::vector<std::pair<Rational, int>> rational_roots(const Poly<Rational>& p,
                                                     Poly<Rational>* residual) {
  std::vector<std::pair<Rational, int>> roots;
  if (p.degree() < 1) {
    if (residual) *residual = p.is_zero() ? p : make_monic(p);
    return roots;
  }
  Poly<Rational> work = make_monic(p);
  if (const int zeros = deflate(work, Rational(0)); zeros > 0) roots.emplace_back(Rational(0), zeros);

  if (work.degree() >= 1) {
    // Content-cleared integer polynomial with the same roots.
    Integer lcm = 1;
    for (const auto& c : work.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    std::vector<Integer> ints;
    for (const auto& c : work.coeffs()) ints.push_back(c.num() * (lcm / c.den()));
    const auto lead_divs = divisors(ints.back());
    const auto const_divs = divisors(ints.front());

    std::set<Rational> candidates;
    for (const auto& num : const_divs)
      for (const auto& den : lead_divs) {
        candidates.insert(Rational(num, den));
        candidates.insert(Rational(-num, den));
      }
    for (const auto& c : candidates) {
      if (work.degree() < 1) break;
      if (!work.eval(c).is_zero()) continue;
      roots.emplace_back(c, deflate(work, c));
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  if (residual) *residual = work;
  return roots;
}

std::optional<std::pair<Poly<Rational>, Poly<Rational>>> split_quartic(const Poly<Rational>& p) {
  if (p.degree() != 4) return std::nullopt;
  const Poly<Rational> monic = make_monic(p);
  const Rational shift = monic[3] / Rational(4);
  // x^4 + P x^2 + Q x + R with s = x - shift.
  const Poly<Rational> dep = taylor_shift(monic, -shift);
  const Rational& P = dep[2];
  const Rational& Q = dep[1];
  const Rational& R = dep[0];

  std::vector<std::pair<Poly<Rational>, Poly<Rational>>> options;
  if (Q.is_zero()) {
    // alpha = 0: beta + gamma = P, beta * gamma = R.
    if (const auto root = exact_sqrt(P * P - Rational(4) * R)) {
      const Rational beta = (P - *root) / Rational(2);
      const Rational gamma = (P + *root) / Rational(2);
      options.emplace_back(Poly<Rational>{beta, 0, 1}, Poly<Rational>{gamma, 0, 1});
    }
  }
  const Poly<Rational> resolvent{-(Q * Q), P * P - Rational(4) * R, Rational(2) * P, Rational(1)};
  for (const auto& [z, mult] : rational_roots(resolvent)) {
    if (z.sign() <= 0) continue;
    const auto alpha = exact_sqrt(z);
    if (!alpha) continue;
    const Rational beta = (z + P - Q / *alpha) / Rational(2);
    const Rational gamma = (z + P + Q / *alpha) / Rational(2);
    options.emplace_back(Poly<Rational>{beta, *alpha, 1}, Poly<Rational>{gamma, -*alpha, 1});
  }
  for (auto& [f, g] : options) {
    Poly<Rational> fs = taylor_shift(f, shift);
    Poly<Rational> gs = taylor_shift(g, shift);
    if (fs * gs == monic) return std::make_pair(std::move(fs), std::move(gs));
  }
  return std::nullopt;
}

FactoredCharPoly factor_charpoly(const Poly<Rational>& p, Mode mode,
                                 std::span<const RootHint> hints) {
  if (p.degree() < 1) throw Error(ErrorKind::Empty, "characteristic polynomial has degree < 1");
  const Poly<Rational> monic = make_monic(p);
  FactoredCharPoly out;
  out.mode = mode;

  Poly<Gaussian> work = monic.cast<Gaussian>();
  std::vector<Gaussian> used;
  for (const auto& hint : hints) {
    if (hint.multiplicity < 1)
      throw Error(ErrorKind::HintMismatch, "hint " + hint.root.str() + " has multiplicity < 1");
    if (std::find(used.begin(), used.end(), hint.root) != used.end())
      throw Error(ErrorKind::HintMismatch, "hint " + hint.root.str() + " given twice (or with its conjugate)");
    const int found = deflate(work, hint.root);
    if (found != hint.multiplicity)
      throw Error(ErrorKind::HintMismatch,
                  "hint " + hint.root.str() + " claims multiplicity " + std::to_string(hint.multiplicity) +
                      ", exact deflation finds " + std::to_string(found));
    used.push_back(hint.root);
    if (hint.root.is_real()) {
      add_linear(out.linear, hint.root, found);
      continue;
    }
    const Gaussian conj = hint.root.conj();
    const int conj_found = deflate(work, conj);
    if (conj_found != found)
      throw Error(ErrorKind::HintMismatch, "conjugate of hint " + hint.root.str() + " has multiplicity " +
                                               std::to_string(conj_found));
    used.push_back(conj);
    if (mode == Mode::complex) {
      add_linear(out.linear, hint.root, found);
      add_linear(out.linear, conj, found);
    } else {
      const QuadraticFactor q{-hint.root.re(), hint.root.im() * hint.root.im()};
      if (found > 1)
        throw Error(ErrorKind::RepeatedQuadraticFactor,
                    "irreducible factor " + to_string(q.poly()) + " has multiplicity " + std::to_string(found));
      add_quadratic(out, q);
    }
  }

  std::vector<Rational> real_coeffs;
  for (const auto& c : work.coeffs()) {
    if (!c.is_real()) throw std::logic_error("conjugate-closed deflation left a non-real coefficient");
    real_coeffs.push_back(c.re());
  }
  Poly<Rational> residual;
  for (const auto& [root, mult] : rational_roots(Poly<Rational>(real_coeffs), &residual))
    add_linear(out.linear, Gaussian(root), mult);

  switch (residual.degree()) {
    case 0:
      break;
    case 2:
      place_quadratic(out, residual);
      break;
    case 4: {
      const auto split = split_quartic(residual);
      if (!split) irrational(residual, "does not split into quadratics over Q");
      // Reject any irrational-real quadratic before recording the other one.
      for (const auto* q : {&split->first, &split->second})
        if ((*q)[0] - (*q)[1] * (*q)[1] / Rational(4) <= Rational(0))
          irrational(*q, "has irrational real roots");
      place_quadratic(out, split->first);
      place_quadratic(out, split->second);
      break;
    }
    default:
      irrational(residual, "has no rational roots and is not a product of quadratics handled here");
  }

  std::sort(out.linear.begin(), out.linear.end(),
            [](const auto& x, const auto& y) { return lex_less(x.root, y.root); });
  std::sort(out.quadratic.begin(), out.quadratic.end(), [](const auto& x, const auto& y) {
    return x.a != y.a ? x.a < y.a : x.d < y.d;
  });
  if (out.expand() != monic.cast<Gaussian>())
    throw std::logic_error("factorization does not reproduce the characteristic polynomial");
  return out;
}

}  // namespace matpfd
