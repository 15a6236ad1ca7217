#pragma once

#include <span>
#include <vector>

#include "matpfd/poly.hpp"

namespace matpfd {

enum class Mode { complex, real };

struct LinearFactor {
  Gaussian root;
  int multiplicity = 1;
  friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

/// (s + a)^2 + d with d > 0; roots -a +- i sqrt(d).
struct QuadraticFactor {
  Rational a;
  Rational d;
  Poly<Rational> poly() const { return Poly<Rational>{a * a + d, a + a, Rational(1)}; }
  friend bool operator==(const QuadraticFactor&, const QuadraticFactor&) = default;
};

/// A user-supplied eigenvalue, verified exactly before use.
struct RootHint {
  Gaussian root;
  int multiplicity = 1;
};

struct FactoredCharPoly {
  Mode mode = Mode::complex;
  std::vector<LinearFactor> linear;        // sorted by (re, im)
  std::vector<QuadraticFactor> quadratic;  // real mode only, sorted by (a, d)

  int degree() const;
  bool all_roots_real() const;
  /// Product of every factor; equals the characteristic polynomial.
  Poly<Gaussian> expand() const;
};

/// Factors a monic rational polynomial into linear factors over Q(i)
/// (complex mode) or linear factors over Q plus simple irreducible quadratics
/// (real mode). Throws IrrationalSpectrum naming the residual it could not
/// split, RepeatedQuadraticFactor, or HintMismatch.
FactoredCharPoly factor_charpoly(const Poly<Rational>& p, Mode mode,
                                 std::span<const RootHint> hints = {});

/// All rational roots with multiplicities, found by the rational-root theorem
/// on the content-cleared integer polynomial. `residual` receives the monic
/// cofactor without rational roots.
std::vector<std::pair<Rational, int>> rational_roots(const Poly<Rational>& p,
                                                     Poly<Rational>* residual = nullptr);

/// Splits a monic quartic over Q into two monic quadratics, if possible.
std::optional<std::pair<Poly<Rational>, Poly<Rational>>> split_quartic(const Poly<Rational>& p);

}  // namespace matpfd
