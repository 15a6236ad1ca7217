#include <random>

#include "doctest.h"
#include "matpfd/io.hpp"
#include "support/golden.hpp"
#include "support/planted.hpp"

using namespace matpfd;
using namespace matpfd::testing;

namespace {

ErrorKind parse_error(std::string_view text, std::string* message = nullptr) {
  try {
    parse_matrix(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  return ErrorKind::DivisionByZero;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("matrix files") {
    CHECK(parse_matrix("0 1 2\n-2 4 0\n-1 1 2\n") == jordan3());
    CHECK(parse_matrix("1/2\n") == RM{{Rational(1, 2)}});
    CHECK(parse_matrix("# comment\n\n  1 2\n\t3 4  \r\n# end\n") == RM{{1, 2}, {3, 4}});

    std::string msg;
    CHECK(parse_error("1 2\n3\n", &msg) == ErrorKind::NonSquare);
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(parse_error("1 2\n3 4\n5 6\n") == ErrorKind::NonSquare);
    CHECK(parse_error("") == ErrorKind::Empty);
    CHECK(parse_error("# nothing\n\n") == ErrorKind::Empty);
    CHECK(parse_error("1 2\n3 x4\n", &msg) == ErrorKind::ParseError);
    CHECK(msg.find("line 2, column 3") != std::string::npos);
    CHECK(msg.find("'x4'") != std::string::npos);
    CHECK(parse_error("1 0.5\n1 1\n") == ErrorKind::ParseError);
  }

  TEST_CASE("matrix file round trip") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 50; ++k) {
      auto p = random_planted(rng);
      RM m = p.a * Rational(static_cast<long>(rng() % 5) + 1, static_cast<long>(rng() % 7) + 1);
      CHECK(parse_matrix(render_matrix_file(m)) == m);
    }
  }

  TEST_CASE("roots, vectors and times") {
    const auto hints = parse_roots("# hints\n2 3\n-1+2i\n");
    REQUIRE(hints.size() == 2);
    CHECK(hints[0].root == Gaussian(2));
    CHECK(hints[0].multiplicity == 3);
    CHECK(hints[1].root == Gaussian(-1, 2));
    CHECK(hints[1].multiplicity == 1);
    CHECK_THROWS_AS(parse_roots("2 0\n"), Error);
    CHECK_THROWS_AS(parse_roots("2 1 1\n"), Error);
    CHECK(parse_vector("1,-1, 2/3") == Vector<Rational>{1, -1, Rational(2, 3)});
    CHECK_THROWS_AS(parse_vector("1,,2"), Error);
    CHECK(parse_times("0.1,0.5,1.0") == std::vector<double>{0.1, 0.5, 1.0});
    CHECK_THROWS_AS(parse_times("0.1,abc"), Error);
  }

  TEST_CASE("scalars") {
    CHECK(json_scalar(Rational(-3, 4)).dump() == "\"-3/4\"");
    CHECK(json_scalar(Gaussian(2)).dump() == "\"2\"");
    CHECK(json_scalar(Gaussian(Rational(1, 2), -3)).dump() == R"({"re":"1/2","im":"-3"})");
    CHECK(latex_scalar(Rational(-3, 4)) == "-\\frac{3}{4}");
    CHECK(latex_scalar(Gaussian(2, -1)) == "2-i");
    CHECK(latex_matrix(RM{{-2, 1, 2}, {-2, 2, 0}, {-1, 1, 0}}) ==
          "\\begin{bmatrix}-2&1&2\\\\-2&2&0\\\\-1&1&0\\end{bmatrix}");
    CHECK(text_matrix(RM{{1, Rational(-1, 2)}, {0, 3}}) == "[[1, -1/2], [0, 3]]");
  }

  TEST_CASE("basis labels") {
    ExpTerm<Rational> s;
    s.kind = TermKind::sin;
    s.d = Rational(2);
    CHECK(text_basis(s) == "sin(sqrt(2) t) / sqrt(2)");
    s.a = Rational(1);
    CHECK(text_basis(s) == "e^(-t) sin(sqrt(2) t) / sqrt(2)");
    s.d = Rational(9);
    s.a = Rational(2);
    CHECK(text_basis(s) == "e^(-2t) sin(3t)");
    s.kind = TermKind::cos;
    s.d = Rational(1, 4);
    s.a = Rational(0);
    CHECK(text_basis(s) == "cos((1/2)t)");
    ExpTerm<Gaussian> e;
    e.lambda = Gaussian(2);
    e.power = 2;
    CHECK(text_basis(e) == "t^2 e^(2t)");
    e.lambda = Gaussian(-2, 3);
    e.power = 0;
    CHECK(text_basis(e) == "e^((-2+3i)t)");
    e.lambda = Gaussian(0, 3);
    CHECK(text_basis(e) == "e^(3it)");
    e.lambda = Gaussian(0);
    CHECK(text_basis(e).empty());
  }

  TEST_CASE("rendered decompositions") {
    const auto dec = decompose(jordan3(), ModeRequest::automatic);
    const auto j = nlohmann::json::parse(render_pfd(dec, Format::json));
    REQUIRE(j["terms"].size() == 3);
    for (int k = 0; k < 3; ++k) {
      CHECK(j["terms"][k]["lambda"] == "2");
      CHECK(j["terms"][k]["j"] == k + 1);
    }
    CHECK(j["terms"][1]["B"][0] == nlohmann::json::array({"-2", "1", "2"}));

    const auto latex = render_pfd(dec, Format::latex);
    CHECK(latex.find("\\frac{1}{(s-2)^{2}}\\begin{bmatrix}-2&1&2\\\\-2&2&0\\\\-1&1&0\\end{bmatrix}") !=
          std::string::npos);
    CHECK(render_charpoly(dec, Format::text).find("det(sI - A) = s^3 - 6s^2 + 12s - 8") != std::string::npos);
    CHECK(render_factors(dec.factors) == "(s - 2)^3");
  }

  TEST_CASE("pfd json coefficient count") {
    std::mt19937_64 rng(67);
    for (int k = 0; k < 10; ++k) {
      const auto p = k % 2 ? random_planted(rng)
                           : plant(rng, {{Rational(1), 1}}, {{Rational(1), Rational(2)}, {Rational(0), Rational(1)}});
      for (ModeRequest mode : {ModeRequest::complex, ModeRequest::real}) {
        Decomposition dec;
        try {
          dec = decompose(p.a, mode);
        } catch (const Error&) {
          continue;  // s^2 + 2 has no complex-mode factorization
        }
        const auto j = nlohmann::json::parse(render_pfd(dec, Format::json));
        std::size_t expected = 0;
        for (const auto& l : dec.factors.linear) expected += static_cast<std::size_t>(l.multiplicity);
        expected += 2 * dec.factors.quadratic.size();
        std::size_t matrices = j["terms"].size();
        for (const auto& q : j["quadratic"]) matrices += q.contains("P") + q.contains("Q");
        CHECK(matrices == expected);
      }
    }
  }

  TEST_CASE("closed forms") {
    const auto dec = decompose(ivp3(), ModeRequest::automatic);
    CHECK(render_closed_form(solve_ivp(dec, {1, -1, 2}), Format::text, true) ==
          "e^(-t) * [4, 4, -4] + e^t * [-3, -5, 6]\n");
    const auto rot = decompose(rotation2(), ModeRequest::real);
    CHECK(render_closed_form(matrix_exponential(rot), Format::text, false) ==
          "cos(3t) * [[1, 0], [0, 1]] + sin(3t) * [[5/3, 17/3], [-2/3, -5/3]]\n");
    CHECK(render_closed_form(matrix_exponential(rot), Format::latex, false) ==
          "\\[\ne^{tA} = \\cos(3t)\\begin{bmatrix}1&0\\\\0&1\\end{bmatrix} + "
          "\\sin(3t)\\begin{bmatrix}\\frac{5}{3}&\\frac{17}{3}\\\\-\\frac{2}{3}&-\\frac{5}{3}\\end{bmatrix}\n\\]\n");
    const auto j = nlohmann::json::parse(render_closed_form(matrix_exponential(rot), Format::json, false));
    CHECK(j["terms"].size() == 2);
    CHECK(j["terms"][1]["coefficient"][0][1] == "17");

    const auto zero = render_closed_form(solve_ivp(dec, {0, 0, 0}), Format::text, true);
    CHECK(zero == "0\n");
  }

  TEST_CASE("general solution text") {
    const auto out = render_general(general_solution(decompose(damped3(), ModeRequest::real)), Format::text);
    CHECK(out.find("y(t) = C1 * (e^(-2t) * [2, -2, 2] + e^(-2t) cos(3t) * [-1, 2, -2] + e^(-2t) sin(3t) * [1, -2, 3])") !=
          std::string::npos);
    CHECK(out.find("+ C3 * (e^(-2t) cos(3t) * [0, 0, 1] + e^(-2t) sin(3t) * [2, -4, 5])") != std::string::npos);
  }

  TEST_CASE("report") {
    Report rep;
    rep.add("first", true);
    rep.add("second", false, "why");
    const auto text = render_report(rep, Format::text);
    CHECK(text.find("FAIL  second  (why)") != std::string::npos);
    CHECK(text.find("2 checks, 1 failures") != std::string::npos);
    const auto j = nlohmann::json::parse(render_report(rep, Format::json));
    CHECK(j["failures"] == 1);
    CHECK(j["ok"] == false);
  }
}
