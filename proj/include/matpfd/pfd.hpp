#pragma once

// Partial fraction decomposition of the resolvent (sI - A)^{-1} with matrix
// coefficients:
//
//   (sI - A)^{-1} = sum_i sum_{j=1..r_i} B_ij / (s - lambda_i)^j
//
// plus, in real mode, terms ((s + a) P + Q) / ((s + a)^2 + d) for every
// simple irreducible quadratic factor. Two independent algorithms are
// provided: Taylor expansion of the adjugate at each eigenvalue (residue) and
// undetermined coefficients solved at rational sample points.

#include <vector>

#include "matpfd/factor.hpp"
#include "matpfd/linalg.hpp"
#include "matpfd/report.hpp"

namespace matpfd {

template <ExactField T>
struct EigenBlock {
  T eigenvalue;
  std::vector<Matrix<T>> coeffs;  // coeffs[j - 1] = B_ij; zero matrices are kept
  int multiplicity() const { return static_cast<int>(coeffs.size()); }
  const Matrix<T>& B(int j) const { return coeffs.at(static_cast<std::size_t>(j - 1)); }
  friend bool operator==(const EigenBlock&, const EigenBlock&) = default;
};

template <ExactField T>
struct ResolventPFD {
  std::size_t n = 0;
  std::vector<EigenBlock<T>> blocks;  // ordered like the factorization: (re, im) ascending
  friend bool operator==(const ResolventPFD&, const ResolventPFD&) = default;
};

/// ((s + a) P + Q) / ((s + a)^2 + d). Q stays rational; the sine coefficient
/// of the textbook form is Q / sqrt(d).
struct QuadraticBlock {
  QuadraticFactor factor;
  Matrix<Rational> P;
  Matrix<Rational> Q;
  friend bool operator==(const QuadraticBlock&, const QuadraticBlock&) = default;
};

struct RealResolventPFD {
  std::size_t n = 0;
  ResolventPFD<Rational> linear;
  std::vector<QuadraticBlock> quadratic;
  friend bool operator==(const RealResolventPFD&, const RealResolventPFD&) = default;
};

/// Complex mode, residue route: B_{i, r_i - m} is the m-th Taylor coefficient
/// of M(s) / prod_{l != i} (s - lambda_l)^{r_l} at lambda_i.
ResolventPFD<Gaussian> pfd_residue(const FactoredCharPoly& factors, const PolyMatrix<Gaussian>& adjugate,
                                   ExecPolicy policy = default_policy());

/// Complex mode, undetermined coefficients: M(s) = sum B_ij det(sI - A) / (s - lambda_i)^j
/// matched at the sample points n+1, n+2, ... (eigenvalues skipped).
ResolventPFD<Gaussian> pfd_undetermined(const FactoredCharPoly& factors,
                                        const PolyMatrix<Gaussian>& adjugate,
                                        ExecPolicy policy = default_policy());

/// Real mode, residue route for linear factors and inversion modulo each
/// quadratic factor.
RealResolventPFD pfd_real(const FactoredCharPoly& factors, const PolyMatrix<Rational>& adjugate,
                          ExecPolicy policy = default_policy());

/// Real mode, undetermined coefficients with basis (s + a) R(s), R(s) for
/// every quadratic factor.
RealResolventPFD pfd_real_undetermined(const FactoredCharPoly& factors,
                                       const PolyMatrix<Rational>& adjugate,
                                       ExecPolicy policy = default_policy());

/// Sum of the partial fractions at s0; throws EvalAtPole at an eigenvalue.
Matrix<Gaussian> reconstruct_resolvent(const ResolventPFD<Gaussian>& pfd, const Gaussian& s0);
Matrix<Rational> reconstruct_resolvent(const ResolventPFD<Rational>& pfd, const Rational& s0);
Matrix<Rational> reconstruct_resolvent(const RealResolventPFD& pfd, const Rational& s0);

/// Annihilation, chain recurrence, projector and commutation identities.
Report verify_pfd(const Matrix<Gaussian>& a, const ResolventPFD<Gaussian>& pfd);
Report verify_pfd(const Matrix<Rational>& a, const ResolventPFD<Rational>& pfd);
/// Linear-part identities plus P^2 = P, Q = (A + aI) P, (A + aI) Q = -d P.
Report verify_pfd(const Matrix<Rational>& a, const RealResolventPFD& pfd);

/// Number of coefficient matrices: sum r_i, plus P and Q per quadratic.
std::size_t coefficient_count(const RealResolventPFD& pfd);

}  // namespace matpfd
