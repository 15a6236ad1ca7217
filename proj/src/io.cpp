#include "matpfd/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace matpfd {

using json = nlohmann::ordered_json;

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

/// Non-blank, non-comment lines with their 1-based numbers.
std::vector<Line> content_lines(std::string_view input) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!input.empty()) {
    ++number;
    const std::size_t nl = input.find('\n');
    std::string_view line = input.substr(0, nl);
    input = nl == std::string_view::npos ? std::string_view{} : input.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    out.push_back({number, line});
  }
  return out;
}

struct Token {
  std::size_t column;
  std::string_view text;
};

std::vector<Token> split_ws(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({start + 1, line.substr(start, i - start)});
  }
  return out;
}

std::string where(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view csv) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = csv.find(',');
    out.push_back(trim(csv.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    csv = csv.substr(comma + 1);
  }
  return out;
}

// ---- scalar helpers ----

std::string text_entry(const Rational& x) { return x.str(); }
std::string text_entry(const Gaussian& x) { return x.str(); }
std::string text_entry(const SqrtExt& x) { return x.str(); }

std::string latex_entry(const Rational& x) { return latex_scalar(x); }
std::string latex_entry(const Gaussian& x) { return latex_scalar(x); }
template <class T>
std::string text_grid(std::size_t rows, std::size_t cols, const std::vector<T>& data) {
  std::string out = "[";
  for (std::size_t i = 0; i < rows; ++i) {
    if (i) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) out += ", ";
      out += text_entry(data[i * cols + j]);
    }
    out += "]";
  }
  return out + "]";
}

template <class T>
std::string latex_grid(std::size_t rows, std::size_t cols, const std::vector<T>& data) {
  std::string out = "\\begin{bmatrix}";
  for (std::size_t i = 0; i < rows; ++i) {
    if (i) out += "\\\\";
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) out += "&";
      out += latex_entry(data[i * cols + j]);
    }
  }
  return out + "\\end{bmatrix}";
}

template <ExactField T>
std::string text_vector(const Matrix<T>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) out += (i ? ", " : "") + text_entry(m(i, 0));
  return out + "]";
}

template <ExactField T>
std::string text_value(const Matrix<T>& m, bool vector_valued) {
  return vector_valued ? text_vector(m) : text_matrix(m);
}

std::string text_vec(const Vector<Gaussian>& v) { return text_vector(Matrix<Gaussian>::column(v)); }

/// true when x prints without an internal sign, so "e^(xt)" is unambiguous.
bool is_atomic(const std::string& s) {
  return s.find('/') == std::string::npos && s.find_first_of("+-", 1) == std::string::npos;
}

template <ExactField T>
std::string text_exp(const T& lambda) {
  if (is_zero(lambda)) return "";
  const std::string s = to_string(lambda);
  if (s == "1") return "e^t";
  if (s == "-1") return "e^(-t)";
  return is_atomic(s) ? "e^(" + s + "t)" : "e^((" + s + ")t)";
}

std::string text_power(int k) {
  if (k == 0) return "";
  return k == 1 ? "t" : "t^" + std::to_string(k);
}

/// w t with w = sqrt(d).
std::string text_frequency(const Rational& d) {
  if (const auto w = exact_sqrt(d)) {
    if (*w == Rational(1)) return "t";
    return is_atomic(w->str()) ? w->str() + "t" : "(" + w->str() + ")t";
  }
  return "sqrt(" + d.str() + ") t";
}

std::string latex_frequency(const Rational& d) {
  if (const auto w = exact_sqrt(d)) return *w == Rational(1) ? "t" : latex_scalar(*w) + "t";
  return "\\sqrt{" + latex_scalar(d) + "}\\,t";
}

std::string join_nonempty(std::initializer_list<std::string> parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

/// Coefficient as displayed next to the basis label: sin terms with a
/// rational frequency w show Q / w next to sin(wt).
template <ExactField T>
Matrix<T> display_coeff(const ExpTerm<T>& term) {
  if (term.kind == TermKind::sin)
    if (const auto w = exact_sqrt(term.d)) return term.coeff * T(w->inv());
  return term.coeff;
}

template <ExactField T>
std::string latex_exp(const T& lambda) {
  if (is_zero(lambda)) return "";
  const std::string s = to_string(lambda);
  if (s == "1") return "e^{t}";
  if (s == "-1") return "e^{-t}";
  const std::string l = latex_scalar(lambda);
  return is_atomic(s) ? "e^{" + l + "t}" : "e^{(" + l + ")t}";
}

template <ExactField T>
std::string latex_basis(const ExpTerm<T>& term) {
  switch (term.kind) {
    case TermKind::exp:
      return join_nonempty({term.power == 0 ? "" : (term.power == 1 ? "t" : "t^{" + std::to_string(term.power) + "}"),
                            latex_exp(term.lambda)},
                           "\\,");
    case TermKind::cos:
      return join_nonempty({latex_exp(-term.a), "\\cos(" + latex_frequency(term.d) + ")"}, "\\,");
    case TermKind::sin: {
      std::string s = "\\sin(" + latex_frequency(term.d) + ")";
      if (!exact_sqrt(term.d)) s = "\\frac{" + s + "}{\\sqrt{" + latex_scalar(term.d) + "}}";
      return join_nonempty({latex_exp(-term.a), s}, "\\,");
    }
  }
  return "";
}

template <ExactField T>
json json_terms(const ClosedForm<T>& cf) {
  json terms = json::array();
  for (const auto& t : cf.terms()) {
    json j;
    switch (t.kind) {
      case TermKind::exp:
        j["kind"] = "exp";
        j["lambda"] = json_scalar(t.lambda);
        j["power"] = t.power;
        break;
      case TermKind::cos:
      case TermKind::sin:
        j["kind"] = t.kind == TermKind::cos ? "cos" : "sin_over_beta";
        j["a"] = json_scalar(t.a);
        j["d"] = json_scalar(t.d);
        break;
    }
    j["coefficient"] = json_matrix(t.coeff);
    terms.push_back(std::move(j));
  }
  return terms;
}

template <ExactField T>
std::string text_sum(const ClosedForm<T>& cf, bool vector_valued) {
  if (cf.is_zero()) return "0";
  std::string out;
  for (const auto& t : cf.terms()) {
    if (!out.empty()) out += " + ";
    const std::string label = text_basis(t);
    const std::string value = text_value(display_coeff(t), vector_valued);
    out += label.empty() ? value : label + " * " + value;
  }
  return out;
}

template <ExactField T>
std::string latex_sum(const ClosedForm<T>& cf) {
  if (cf.is_zero()) return "0";
  std::string out;
  for (const auto& t : cf.terms()) {
    if (!out.empty()) out += " + ";
    const std::string label = latex_basis(t);
    out += label.empty() ? latex_matrix(display_coeff(t)) : label + latex_matrix(display_coeff(t));
  }
  return out;
}

std::string latex_block(const std::string& body) { return "\\[\n" + body + "\n\\]\n"; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string mode_name(Mode m) { return m == Mode::complex ? "complex" : "real"; }

// ---- factor labels ----

std::string text_linear(const Gaussian& root) {
  if (root.is_zero()) return "s";
  if (root.is_real()) {
    const Rational& r = root.re();
    return r.sign() > 0 ? "s - " + r.str() : "s + " + (-r).str();
  }
  return "s - (" + root.str() + ")";
}

std::string text_quadratic(const QuadraticFactor& q) {
  const std::string base = q.a.is_zero() ? "s^2"
                           : q.a.sign() > 0 ? "(s + " + q.a.str() + ")^2"
                                            : "(s - " + (-q.a).str() + ")^2";
  return base + " + " + q.d.str();
}

std::string latex_linear(const Gaussian& root) {
  if (root.is_zero()) return "s";
  if (root.is_real()) {
    const Rational& r = root.re();
    return r.sign() > 0 ? "s-" + latex_scalar(r) : "s+" + latex_scalar(-r);
  }
  return "s-(" + latex_scalar(root) + ")";
}

std::string latex_quadratic(const QuadraticFactor& q) {
  const std::string base = q.a.is_zero() ? "s^{2}"
                           : q.a.sign() > 0 ? "(s+" + latex_scalar(q.a) + ")^{2}"
                                            : "(s-" + latex_scalar(-q.a) + ")^{2}";
  return base + "+" + latex_scalar(q.d);
}

std::string latex_poly(const Poly<Rational>& p) {
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    const bool neg = c.sign() < 0;
    const Rational mag = c.abs();
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    const std::string power = k == 0 ? "" : (k == 1 ? "s" : "s^{" + std::to_string(k) + "}");
    if (mag != Rational(1) || k == 0) out += latex_scalar(mag);
    out += power;
  }
  return out.empty() ? "0" : out;
}

json json_factors(const FactoredCharPoly& f) {
  json lin = json::array();
  for (const auto& l : f.linear) lin.push_back({{"root", json_scalar(l.root)}, {"multiplicity", l.multiplicity}});
  json quad = json::array();
  for (const auto& q : f.quadratic) quad.push_back({{"a", json_scalar(q.a)}, {"d", json_scalar(q.d)}});
  return {{"linear", lin}, {"quadratic", quad}};
}

std::string beta_string(const Rational& d) {
  if (const auto w = exact_sqrt(d)) return w->str();
  return "sqrt(" + d.str() + ")";
}

/// Q / sqrt(d) with entries in Q(sqrt d) when d is not a square.
std::vector<SqrtExt> sine_coefficient(const QuadraticBlock& q) {
  std::vector<SqrtExt> out;
  for (const auto& x : q.Q.data()) out.emplace_back(Rational(0), x / q.factor.d, q.factor.d);
  return out;
}

// ---- per-format pfd rendering ----

template <ExactField T>
void text_blocks(std::ostringstream& os, const ResolventPFD<T>& pfd) {
  for (const auto& b : pfd.blocks) {
    os << "lambda = " << to_string(b.eigenvalue) << ", multiplicity " << b.multiplicity() << "\n";
    for (int j = 1; j <= b.multiplicity(); ++j) os << "  B[" << j << "] = " << text_matrix(b.B(j)) << "\n";
  }
}

template <ExactField T>
void latex_blocks(std::vector<std::string>& parts, const ResolventPFD<T>& pfd) {
  for (const auto& b : pfd.blocks) {
    const std::string base = latex_linear(Gaussian(b.eigenvalue));
    for (int j = 1; j <= b.multiplicity(); ++j) {
      const std::string den = j == 1 ? base : "(" + base + ")^{" + std::to_string(j) + "}";
      parts.push_back("\\frac{1}{" + den + "}" + latex_matrix(b.B(j)));
    }
  }
}

template <ExactField T>
void json_blocks(json& terms, const ResolventPFD<T>& pfd) {
  for (const auto& b : pfd.blocks)
    for (int j = 1; j <= b.multiplicity(); ++j)
      terms.push_back({{"lambda", json_scalar(b.eigenvalue)}, {"j", j}, {"B", json_matrix(b.B(j))}});
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "text") return Format::text;
  if (name == "latex") return Format::latex;
  if (name == "json") return Format::json;
  throw Error(ErrorKind::ParseError, "unknown format '" + std::string(name) + "'");
}

Matrix<Rational> parse_matrix(std::string_view input) {
  std::vector<std::vector<Rational>> rows;
  std::size_t width = 0;
  std::size_t first_line = 0;
  for (const auto& line : content_lines(input)) {
    std::vector<Rational> row;
    for (const auto& tok : split_ws(line.text)) {
      try {
        row.push_back(Rational::parse(tok.text));
      } catch (const Error&) {
        throw Error(ErrorKind::ParseError,
                    where(line.number, tok.column) + ": not a rational number '" + std::string(tok.text) + "'");
      }
    }
    if (rows.empty()) {
      width = row.size();
      first_line = line.number;
    } else if (row.size() != width) {
      throw Error(ErrorKind::NonSquare, "line " + std::to_string(line.number) + " has " + std::to_string(row.size()) +
                                            " entries, line " + std::to_string(first_line) + " has " +
                                            std::to_string(width));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::Empty, "no matrix rows in input");
  if (rows.size() != width)
    throw Error(ErrorKind::NonSquare,
                std::to_string(rows.size()) + " rows of " + std::to_string(width) + " entries");
  Matrix<Rational> m(width, width);
  for (std::size_t i = 0; i < width; ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = std::move(rows[i][j]);
  return m;
}

std::string render_matrix_file(const Matrix<Rational>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? " " : "") + m(i, j).str();
    out += "\n";
  }
  return out;
}

std::vector<RootHint> parse_roots(std::string_view input) {
  std::vector<RootHint> out;
  for (const auto& line : content_lines(input)) {
    const auto toks = split_ws(line.text);
    if (toks.size() > 2)
      throw Error(ErrorKind::ParseError,
                  where(line.number, toks[2].column) + ": unexpected token '" + std::string(toks[2].text) + "'");
    RootHint hint;
    try {
      hint.root = Gaussian::parse(toks[0].text);
    } catch (const Error&) {
      throw Error(ErrorKind::ParseError,
                  where(line.number, toks[0].column) + ": not a Gaussian rational '" + std::string(toks[0].text) + "'");
    }
    if (toks.size() == 2) {
      const std::string m(toks[1].text);
      char* end = nullptr;
      const long value = std::strtol(m.c_str(), &end, 10);
      if (*end != '\0' || value < 1 || value > static_cast<long>(kMaxDimension))
        throw Error(ErrorKind::ParseError, where(line.number, toks[1].column) + ": bad multiplicity '" + m + "'");
      hint.multiplicity = static_cast<int>(value);
    }
    out.push_back(hint);
  }
  return out;
}

Vector<Rational> parse_vector(std::string_view csv) {
  Vector<Rational> out;
  for (const auto& tok : split_commas(csv)) {
    try {
      out.push_back(Rational::parse(tok));
    } catch (const Error&) {
      throw Error(ErrorKind::ParseError, "vector entry " + std::to_string(out.size() + 1) +
                                             ": not a rational number '" + std::string(tok) + "'");
    }
  }
  return out;
}

std::vector<double> parse_times(std::string_view csv) {
  std::vector<double> out;
  for (const auto& tok : split_commas(csv)) {
    const std::string s(tok);
    char* end = nullptr;
    const double t = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(t))
      throw Error(ErrorKind::ParseError, "time " + std::to_string(out.size() + 1) + ": not a number '" + s + "'");
    out.push_back(t);
  }
  return out;
}

std::string latex_scalar(const Rational& x) {
  if (x.is_integer()) return x.str();
  const std::string body = "\\frac{" + Rational(x.num()).abs().str() + "}{" + Rational(x.den()).str() + "}";
  return x.sign() < 0 ? "-" + body : body;
}

std::string latex_scalar(const Gaussian& x) {
  if (x.is_real()) return latex_scalar(x.re());
  std::string im;
  if (x.im() == Rational(1))
    im = "i";
  else if (x.im() == Rational(-1))
    im = "-i";
  else
    im = latex_scalar(x.im()) + "i";
  if (x.re().is_zero()) return im;
  return latex_scalar(x.re()) + (x.im().sign() > 0 ? "+" : "") + im;
}

template <ExactField T>
std::string text_matrix(const Matrix<T>& m) {
  return text_grid(m.rows(), m.cols(), m.data());
}

template <ExactField T>
std::string latex_matrix(const Matrix<T>& m) {
  return latex_grid(m.rows(), m.cols(), m.data());
}

json json_scalar(const Rational& x) { return x.str(); }
json json_scalar(const Gaussian& x) {
  if (x.is_real()) return x.re().str();
  return {{"re", x.re().str()}, {"im", x.im().str()}};
}

template <ExactField T>
json json_matrix(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_scalar(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <ExactField T>
std::string text_basis(const ExpTerm<T>& term) {
  switch (term.kind) {
    case TermKind::exp:
      return join_nonempty({text_power(term.power), text_exp(term.lambda)}, " ");
    case TermKind::cos:
      return join_nonempty({text_exp(-term.a), "cos(" + text_frequency(term.d) + ")"}, " ");
    case TermKind::sin: {
      std::string s = "sin(" + text_frequency(term.d) + ")";
      if (!exact_sqrt(term.d)) s += " / sqrt(" + term.d.str() + ")";
      return join_nonempty({text_exp(-term.a), s}, " ");
    }
  }
  return "";
}

std::string render_factors(const FactoredCharPoly& f) {
  std::string out;
  for (const auto& l : f.linear) {
    if (!out.empty()) out += " ";
    out += "(" + text_linear(l.root) + ")";
    if (l.multiplicity > 1) out += "^" + std::to_string(l.multiplicity);
  }
  for (const auto& q : f.quadratic) {
    if (!out.empty()) out += " ";
    out += "(" + text_quadratic(q) + ")";
  }
  return out;
}

std::string render_charpoly(const Decomposition& dec, Format fmt) {
  const auto& ca = dec.charpoly_adjugate;
  const auto& m = ca.adjugate.coeffs();
  switch (fmt) {
    case Format::text: {
      std::ostringstream os;
      os << "det(sI - A) = " << to_string(ca.charpoly, "s") << "\n";
      os << "factored: " << render_factors(dec.factors) << "\n";
      os << "mode: " << mode_name(dec.mode()) << "\n";
      for (std::size_t k = m.size(); k-- > 0;) os << "M[" << k << "] = " << text_matrix(m[k]) << "\n";
      return os.str();
    }
    case Format::latex: {
      std::string factored;
      for (const auto& l : dec.factors.linear) {
        factored += "(" + latex_linear(l.root) + ")";
        if (l.multiplicity > 1) factored += "^{" + std::to_string(l.multiplicity) + "}";
      }
      for (const auto& q : dec.factors.quadratic) factored += "(" + latex_quadratic(q) + ")";
      std::string adj;
      for (std::size_t k = m.size(); k-- > 0;) {
        if (!adj.empty()) adj += " + ";
        adj += (k == 0 ? "" : (k == 1 ? "s" : "s^{" + std::to_string(k) + "}")) + latex_matrix(m[k]);
      }
      return latex_block("\\det(sI-A) = " + latex_poly(ca.charpoly) + " = " + factored) +
             latex_block("M(s) = " + adj);
    }
    case Format::json: {
      json coeffs = json::array();
      for (std::size_t k = 0; k < ca.charpoly.coeffs().size(); ++k) coeffs.push_back(json_scalar(ca.charpoly[k]));
      json adj = json::array();
      for (const auto& mk : m) adj.push_back(json_matrix(mk));
      return dump({{"mode", mode_name(dec.mode())},
                   {"charpoly", coeffs},
                   {"charpoly_text", to_string(ca.charpoly, "s")},
                   {"factors", json_factors(dec.factors)},
                   {"adjugate", adj}});
    }
  }
  return {};
}

std::string render_pfd(const Decomposition& dec, Format fmt) {
  switch (fmt) {
    case Format::text: {
      std::ostringstream os;
      os << "mode: " << mode_name(dec.mode()) << "\n";
      if (dec.complex_pfd) {
        text_blocks(os, *dec.complex_pfd);
      } else {
        text_blocks(os, dec.real_pfd->linear);
        for (const auto& q : dec.real_pfd->quadratic) {
          const std::string beta = beta_string(q.factor.d);
          os << "factor " << text_quadratic(q.factor) << ", beta = " << beta << "\n";
          os << "  P = " << text_matrix(q.P) << "\n";
          os << "  Q = " << text_matrix(q.Q) << "\n";
          if (const auto w = exact_sqrt(q.factor.d))
            os << "  Q / " << beta << " = " << text_matrix(q.Q * w->inv()) << "\n";
          else
            os << "  Q / " << beta << " = " << text_grid(q.Q.rows(), q.Q.cols(), sine_coefficient(q)) << "\n";
        }
      }
      return os.str();
    }
    case Format::latex: {
      std::vector<std::string> parts;
      if (dec.complex_pfd) {
        latex_blocks(parts, *dec.complex_pfd);
      } else {
        latex_blocks(parts, dec.real_pfd->linear);
        for (const auto& q : dec.real_pfd->quadratic) {
          const std::string den = latex_quadratic(q.factor);
          const std::string lin = q.factor.a.is_zero() ? "s"
                                  : q.factor.a.sign() > 0 ? "s+" + latex_scalar(q.factor.a)
                                                          : "s-" + latex_scalar(-q.factor.a);
          parts.push_back("\\frac{" + lin + "}{" + den + "}" + latex_matrix(q.P));
          parts.push_back("\\frac{1}{" + den + "}" + latex_matrix(q.Q));
        }
      }
      std::string body = "(sI-A)^{-1} = ";
      for (std::size_t k = 0; k < parts.size(); ++k) body += (k ? " + " : "") + parts[k];
      return latex_block(body);
    }
    case Format::json: {
      json terms = json::array();
      json quad = json::array();
      if (dec.complex_pfd) {
        json_blocks(terms, *dec.complex_pfd);
      } else {
        json_blocks(terms, dec.real_pfd->linear);
        for (const auto& q : dec.real_pfd->quadratic)
          quad.push_back({{"a", json_scalar(q.factor.a)},
                          {"d", json_scalar(q.factor.d)},
                          {"beta", beta_string(q.factor.d)},
                          {"P", json_matrix(q.P)},
                          {"Q", json_matrix(q.Q)}});
      }
      return dump({{"mode", mode_name(dec.mode())},
                   {"n", dec.matrix.rows()},
                   {"terms", terms},
                   {"quadratic", quad}});
    }
  }
  return {};
}

std::string render_chains(const Decomposition& dec, const std::vector<ChainBasis<Gaussian>>& bases, Format fmt) {
  const auto& pfd = *dec.complex_pfd;
  const Matrix<Gaussian> a = dec.matrix.cast<Gaussian>();
  switch (fmt) {
    case Format::text: {
      std::ostringstream os;
      for (std::size_t i = 0; i < bases.size(); ++i) {
        const auto& basis = bases[i];
        const std::size_t nullity = nullspace(a.shifted(basis.eigenvalue)).size();
        os << "lambda = " << basis.eigenvalue.str() << ", algebraic multiplicity " << basis.multiplicity
           << ", geometric multiplicity " << nullity << "\n";
        os << "  column chains:\n";
        for (const auto& c : extract_column_chains(pfd, i)) {
          os << "    column " << c.source_column + 1 << ":";
          for (std::size_t j = 0; j < c.length(); ++j)
            os << (j ? ", " : " ") << "v" << j + 1 << " = " << text_vec(c.vectors[j]);
          os << "\n";
        }
        os << "  basis" << (basis.greedy_sufficient ? "" : " (completed beyond column chains)") << ":\n";
        for (const auto& c : basis.chains) {
          os << "    ";
          if (c.from_columns)
            os << "column " << c.source_column + 1 << " from B[" << c.start_index << "]";
          else
            os << "kernel vector";
          os << ", length " << c.length() << ":";
          for (std::size_t j = 0; j < c.length(); ++j) os << (j ? ", " : " ") << text_vec(c.vectors[j]);
          os << "\n";
        }
      }
      return os.str();
    }
    case Format::latex: {
      std::string out;
      for (std::size_t i = 0; i < bases.size(); ++i) {
        for (const auto& c : extract_column_chains(pfd, i)) {
          std::string body = "\\lambda = " + latex_scalar(bases[i].eigenvalue) + ":\\quad ";
          for (std::size_t j = 0; j < c.length(); ++j)
            body += (j ? ",\\quad " : "") + std::string("v_{") + std::to_string(j + 1) +
                    "}=" + latex_matrix(Matrix<Gaussian>::column(c.vectors[j]));
          out += latex_block(body);
        }
      }
      return out;
    }
    case Format::json: {
      auto vecs = [](const Chain<Gaussian>& c) {
        json v = json::array();
        for (const auto& x : c.vectors) {
          json col = json::array();
          for (const auto& e : x) col.push_back(json_scalar(e));
          v.push_back(std::move(col));
        }
        return v;
      };
      json out = json::array();
      for (std::size_t i = 0; i < bases.size(); ++i) {
        const auto& basis = bases[i];
        json cols = json::array();
        for (const auto& c : extract_column_chains(pfd, i))
          cols.push_back({{"column", c.source_column + 1}, {"vectors", vecs(c)}});
        json chosen = json::array();
        for (const auto& c : basis.chains) {
          json entry = {{"from_columns", c.from_columns}, {"vectors", vecs(c)}};
          if (c.from_columns) {
            entry["column"] = c.source_column + 1;
            entry["start"] = c.start_index;
          }
          chosen.push_back(std::move(entry));
        }
        out.push_back({{"lambda", json_scalar(basis.eigenvalue)},
                       {"multiplicity", basis.multiplicity},
                       {"geometric_multiplicity", nullspace(a.shifted(basis.eigenvalue)).size()},
                       {"column_chains", cols},
                       {"basis", chosen},
                       {"greedy_sufficient", basis.greedy_sufficient}});
      }
      return dump({{"eigenvalues", out}});
    }
  }
  return {};
}

std::string render_closed_form(const AnyClosedForm& any, Format fmt, bool vector_valued) {
  return std::visit(
      [&](const auto& cf) -> std::string {
        switch (fmt) {
          case Format::text:
            return text_sum(cf, vector_valued) + "\n";
          case Format::latex:
            return latex_block((vector_valued ? "y(t) = " : "e^{tA} = ") + latex_sum(cf));
          case Format::json:
            return dump({{"kind", vector_valued ? "ivp" : "exponential"},
                         {"rows", cf.rows()},
                         {"cols", cf.cols()},
                         {"terms", json_terms(cf)}});
        }
        return {};
      },
      any);
}

std::string render_general(const AnyGeneralSolution& any, Format fmt) {
  return std::visit(
      [&](const auto& gs) -> std::string {
        switch (fmt) {
          case Format::text: {
            std::string out;
            for (std::size_t j = 0; j < gs.columns.size(); ++j)
              out += (j ? "+ C" : "y(t) = C") + std::to_string(j + 1) + " * (" + text_sum(gs.columns[j], true) +
                     ")\n";
            return out;
          }
          case Format::latex: {
            std::string body = "y(t) = ";
            for (std::size_t j = 0; j < gs.columns.size(); ++j)
              body += (j ? " + C_{" : "C_{") + std::to_string(j + 1) + "}\\left(" + latex_sum(gs.columns[j]) +
                      "\\right)";
            return latex_block(body);
          }
          case Format::json: {
            json cols = json::array();
            for (std::size_t j = 0; j < gs.columns.size(); ++j)
              cols.push_back({{"constant", "C" + std::to_string(j + 1)}, {"terms", json_terms(gs.columns[j])}});
            return dump({{"kind", "general"}, {"columns", cols}});
          }
        }
        return {};
      },
      any);
}

std::string render_report(const Report& rep, Format fmt) {
  switch (fmt) {
    case Format::text:
    case Format::latex: {
      std::ostringstream os;
      for (const auto& c : rep.checks) {
        os << (c.passed ? "PASS  " : "FAIL  ") << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
      }
      os << rep.checks.size() << " checks, " << rep.failures() << " failures\n";
      return os.str();
    }
    case Format::json: {
      json checks = json::array();
      for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      return dump({{"checks", checks}, {"failures", rep.failures()}, {"ok", rep.ok()}});
    }
  }
  return {};
}

#define MATPFD_INSTANTIATE(T)                                  \
  template std::string text_matrix(const Matrix<T>&);          \
  template std::string latex_matrix(const Matrix<T>&);         \
  template json json_matrix(const Matrix<T>&);                 \
  template std::string text_basis(const ExpTerm<T>&);

MATPFD_INSTANTIATE(Rational)
MATPFD_INSTANTIATE(Gaussian)

#undef MATPFD_INSTANTIATE

}  // namespace matpfd
