#pragma once

// End-to-end analysis of a rational matrix: characteristic polynomial and
// adjugate, factorization, resolvent decomposition, exponential, and the
// full verification report.

#include <optional>
#include <span>
#include <variant>

#include "matpfd/chains.hpp"
#include "matpfd/expode.hpp"

namespace matpfd {

enum class ModeRequest { automatic, complex, real };

struct Decomposition {
  Matrix<Rational> matrix;
  CharpolyAdjugate<Rational> charpoly_adjugate;
  FactoredCharPoly factors;
  std::optional<ResolventPFD<Gaussian>> complex_pfd;  // set in complex mode
  std::optional<RealResolventPFD> real_pfd;           // set in real mode

  Mode mode() const { return factors.mode; }
};

/// `automatic` tries complex mode and falls back to real mode on
/// IrrationalSpectrum.
Decomposition decompose(const Matrix<Rational>& a, ModeRequest mode, std::span<const RootHint> hints = {},
                        ExecPolicy policy = default_policy());

using AnyClosedForm = std::variant<ClosedForm<Gaussian>, ClosedForm<Rational>>;
using AnyGeneralSolution = std::variant<GeneralSolution<Gaussian>, GeneralSolution<Rational>>;

AnyClosedForm matrix_exponential(const Decomposition& dec);
AnyClosedForm solve_ivp(const Decomposition& dec, const Vector<Rational>& y0);
AnyGeneralSolution general_solution(const Decomposition& dec);

/// Chain bases for every eigenvalue; complex mode only.
std::vector<ChainBasis<Gaussian>> chain_bases(const Decomposition& dec);

/// Every exact identity plus the numeric oracle comparison at `times`.
Report verify_all(const Decomposition& dec, std::span<const double> times);

/// Tolerances for the numeric comparisons.
inline constexpr double kOracleTolerance = 1e-9;
inline constexpr double kSemigroupTolerance = 1e-8;
inline constexpr double kModeAgreementTolerance = 1e-12;

}  // namespace matpfd
