#pragma once

// Input parsing and the three output formats (plain text, LaTeX, JSON).
// JSON scalars are strings so that exact values survive a round trip.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "matpfd/pipeline.hpp"

namespace matpfd {

enum class Format { text, latex, json };

Format parse_format(std::string_view name);

/// n lines of n rational tokens; `#` lines and blank lines are skipped.
/// Errors carry "line L, column C" and the offending token.
Matrix<Rational> parse_matrix(std::string_view input);

/// Inverse of parse_matrix.
std::string render_matrix_file(const Matrix<Rational>& m);

/// One hint per line: "root [multiplicity]", root as accepted by Gaussian::parse.
std::vector<RootHint> parse_roots(std::string_view input);

/// Comma separated rationals, e.g. "1,-1,2".
Vector<Rational> parse_vector(std::string_view csv);

/// Comma separated decimals, e.g. "0.1,0.5,1.0".
std::vector<double> parse_times(std::string_view csv);

// Scalar and matrix pieces, exposed for tests.
std::string latex_scalar(const Rational& x);
std::string latex_scalar(const Gaussian& x);
template <ExactField T>
std::string text_matrix(const Matrix<T>& m);
template <ExactField T>
std::string latex_matrix(const Matrix<T>& m);
nlohmann::ordered_json json_scalar(const Rational& x);
/// Rational string when real, otherwise {"re": ..., "im": ...}.
nlohmann::ordered_json json_scalar(const Gaussian& x);
template <ExactField T>
nlohmann::ordered_json json_matrix(const Matrix<T>& m);

/// Basis-function label of one term, e.g. "t e^(2t)", "e^(-2t) cos(3t)",
/// "sin(sqrt(2) t) / sqrt(2)". Empty for the constant function 1.
template <ExactField T>
std::string text_basis(const ExpTerm<T>& term);

std::string render_factors(const FactoredCharPoly& f);

std::string render_charpoly(const Decomposition& dec, Format fmt);
std::string render_pfd(const Decomposition& dec, Format fmt);
std::string render_chains(const Decomposition& dec, const std::vector<ChainBasis<Gaussian>>& bases, Format fmt);
/// `vector_valued` selects the IVP layout (n x 1 coefficients printed as vectors).
std::string render_closed_form(const AnyClosedForm& cf, Format fmt, bool vector_valued);
std::string render_general(const AnyGeneralSolution& gs, Format fmt);
/// The latex format falls back to the plain table.
std::string render_report(const Report& rep, Format fmt);

}  // namespace matpfd
