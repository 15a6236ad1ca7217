#include <cmath>
#include <random>

#include "doctest.h"
#include "matpfd/pipeline.hpp"
#include "support/golden.hpp"
#include "support/planted.hpp"

using namespace matpfd;
using namespace matpfd::testing;

namespace {

template <ExactField T>
ExpTerm<T> exp_term(T lambda, int power, Matrix<T> coeff) {
  ExpTerm<T> t;
  t.kind = TermKind::exp;
  t.lambda = std::move(lambda);
  t.power = power;
  t.coeff = std::move(coeff);
  return t;
}

ExpTerm<Rational> trig_term(TermKind kind, Rational a, Rational d, RM coeff) {
  ExpTerm<Rational> t;
  t.kind = kind;
  t.a = std::move(a);
  t.d = std::move(d);
  t.coeff = std::move(coeff);
  return t;
}

ClosedForm<Rational> real_exp(const RM& a) {
  return std::get<ClosedForm<Rational>>(matrix_exponential(decompose(a, ModeRequest::real)));
}

/// e^(tJ) blockwise from the planted structure, evaluated in doubles.
DMatrix planted_exp(const Planted& p, double t) {
  const std::size_t n = p.a.rows();
  DMatrix ej(n, n);
  std::size_t at = 0;
  for (const auto& b : p.blocks) {
    const double e = std::exp(b.eigenvalue.to_double() * t);
    for (int i = 0; i < b.size; ++i) {
      double coef = 1.0;
      for (int k = 0; i + k < b.size; ++k) {
        ej(at + i, at + i + k) = e * coef;
        coef *= t / (k + 1);
      }
    }
    at += static_cast<std::size_t>(b.size);
  }
  return to_dmatrix(p.s) * ej * to_dmatrix(p.s_inv);
}

}  // namespace

TEST_SUITE("exponential") {
  TEST_CASE("distinct eigenvalues") {
    const auto cf = real_exp(distinct2());
    const ClosedForm<Rational> expected(2, 2, {exp_term(Rational(2), 0, RM{{-3, -4}, {3, 4}}),
                                               exp_term(Rational(3), 0, RM{{4, 4}, {-3, -3}})});
    CHECK(cf == expected);
  }

  TEST_CASE("rotation") {
    const auto cf = real_exp(rotation2());
    const ClosedForm<Rational> expected(2, 2, {trig_term(TermKind::cos, 0, 9, RM::identity(2)),
                                               trig_term(TermKind::sin, 0, 9, rotation2())});
    CHECK(cf == expected);
    // A^2 = -9 I, so the derivative recombines into A e^(tA)
    CHECK(rotation2() * rotation2() == RM::identity(2) * Rational(-9));
    const ClosedForm<Rational> derivative(2, 2, {trig_term(TermKind::sin, 0, 9, RM::identity(2) * Rational(-9)),
                                                 trig_term(TermKind::cos, 0, 9, rotation2())});
    CHECK(cf.derivative() == derivative);
    CHECK(derivative_identity_holds(rotation2(), cf));
  }

  TEST_CASE("damped rotation") {
    const auto cf = real_exp(damped3());
    const ClosedForm<Rational> expected(
        3, 3,
        {exp_term(Rational(-2), 0, RM{{2, 1, 0}, {-2, -1, 0}, {2, 1, 0}}),
         trig_term(TermKind::cos, 2, 9, RM{{-1, -1, 0}, {2, 2, 0}, {-2, -1, 1}}),
         trig_term(TermKind::sin, 2, 9, RM{{1, 3, 2}, {-2, -6, -4}, {3, 8, 5}} * Rational(3))});
    CHECK(cf == expected);
    CHECK(derivative_identity_holds(damped3(), cf));
  }

  TEST_CASE("nilpotent") {
    const RM n{{0, 1}, {0, 0}};
    const auto cf = real_exp(n);
    const ClosedForm<Rational> expected(2, 2, {exp_term(Rational(0), 0, RM::identity(2)), exp_term(Rational(0), 1, n)});
    CHECK(cf == expected);
    CHECK(cf.derivative() == ClosedForm<Rational>(2, 2, {exp_term(Rational(0), 0, n)}));
    const DMatrix at2 = exp_eval(cf, 2.0);
    CHECK(at2(0, 0) == doctest::Approx(1.0));
    CHECK(at2(0, 1) == doctest::Approx(2.0));
    CHECK(at2(1, 0) == doctest::Approx(0.0));
  }

  TEST_CASE("derivative of a plain exponential") {
    const RM c{{1, 2}, {3, 4}};
    const ClosedForm<Rational> cf(2, 2, {exp_term(Rational(2), 0, c)});
    CHECK(cf.derivative() == ClosedForm<Rational>(2, 2, {exp_term(Rational(2), 0, c * Rational(2))}));
  }

  TEST_CASE("canonical form merges and drops terms") {
    const RM c{{1, 0}, {0, 1}};
    const ClosedForm<Rational> cf(2, 2, {exp_term(Rational(1), 0, c), exp_term(Rational(1), 0, -c),
                                         exp_term(Rational(3), 0, c), exp_term(Rational(-1), 0, c)});
    REQUIRE(cf.terms().size() == 2);
    CHECK(cf.terms()[0].lambda == Rational(-1));
    CHECK(cf.terms()[1].lambda == Rational(3));
  }

  TEST_CASE("oracle") {
    const DMatrix zero = numeric_oracle_exp(jordan3(), 0.0);
    CHECK(relative_error(zero, DMatrix::identity(3)) == 0.0);
    const DMatrix diag = numeric_oracle_exp(RM{{2, 0}, {0, 3}}, 1.0);
    CHECK(diag(0, 0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(diag(1, 1) == doctest::Approx(std::exp(3.0)).epsilon(1e-14));
    for (const auto& a : golden_matrices()) {
      const AnyClosedForm cf = matrix_exponential(decompose(a, ModeRequest::automatic));
      for (double t : {0.1, 0.5, 1.0}) {
        std::visit([&](const auto& f) { CHECK(relative_error(exp_eval(f, t), numeric_oracle_exp(a, t)) <= 1e-9); }, cf);
      }
      std::visit([&](const auto& f) { CHECK(relative_error(exp_eval(f, 0.0), DMatrix::identity(a.rows())) < 1e-15); },
                 cf);
    }
  }

  TEST_CASE("planted exponentials") {
    std::mt19937_64 rng(59);
    for (int k = 0; k < 25; ++k) {
      const auto p = random_planted(rng);
      const auto cf = std::get<ClosedForm<Gaussian>>(matrix_exponential(decompose(p.a, ModeRequest::complex)));
      CHECK(derivative_identity_holds(p.a.cast<Gaussian>(), cf));
      CHECK(cf.at_zero() == Matrix<Gaussian>::identity(p.a.rows()));
      for (double t : {0.1, 0.5, 1.0}) {
        CHECK(relative_error(exp_eval(cf, t), planted_exp(p, t)) <= 1e-9);
        CHECK(relative_error(numeric_oracle_exp(p.a, t), planted_exp(p, t)) <= 1e-9);
      }
    }
  }

  TEST_CASE("initial value problems") {
    const auto dec = decompose(ivp3(), ModeRequest::real);
    const auto y = std::get<ClosedForm<Rational>>(solve_ivp(dec, {1, -1, 2}));
    const ClosedForm<Rational> expected(3, 1, {exp_term(Rational(1), 0, RM{{-3}, {-5}, {6}}),
                                               exp_term(Rational(-1), 0, RM{{4}, {4}, {-4}})});
    CHECK(y == expected);
    CHECK(y.at_zero() == RM{{1}, {-1}, {2}});
    CHECK(std::get<ClosedForm<Rational>>(solve_ivp(dec, {0, 0, 0})).is_zero());

    const auto twice = decompose(RM::identity(2) * Rational(2), ModeRequest::real);
    CHECK(std::get<ClosedForm<Rational>>(solve_ivp(twice, {1, 1})) ==
          ClosedForm<Rational>(2, 1, {exp_term(Rational(2), 0, RM{{1}, {1}})}));
    try {
      solve_ivp(dec, {1, 2});
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
  }

  TEST_CASE("general solutions") {
    const auto gs = std::get<GeneralSolution<Rational>>(general_solution(decompose(damped3(), ModeRequest::real)));
    REQUIRE(gs.columns.size() == 3);
    const ClosedForm<Rational> c1(3, 1, {exp_term(Rational(-2), 0, RM{{2}, {-2}, {2}}),
                                         trig_term(TermKind::cos, 2, 9, RM{{-1}, {2}, {-2}}),
                                         trig_term(TermKind::sin, 2, 9, RM{{1}, {-2}, {3}} * Rational(3))});
    CHECK(gs.columns[0] == c1);
    const ClosedForm<Rational> c3(3, 1, {trig_term(TermKind::cos, 2, 9, RM{{0}, {0}, {1}}),
                                         trig_term(TermKind::sin, 2, 9, RM{{2}, {-4}, {5}} * Rational(3))});
    CHECK(gs.columns[2] == c3);

    const auto scalar = std::get<GeneralSolution<Rational>>(
        general_solution(decompose(RM::identity(2) * Rational(5), ModeRequest::real)));
    CHECK(scalar.columns[0] == ClosedForm<Rational>(2, 1, {exp_term(Rational(5), 0, RM{{1}, {0}})}));
    CHECK(scalar.columns[1] == ClosedForm<Rational>(2, 1, {exp_term(Rational(5), 0, RM{{0}, {1}})}));

    const auto nil = std::get<GeneralSolution<Rational>>(
        general_solution(decompose(RM{{0, 1}, {0, 0}}, ModeRequest::real)));
    CHECK(nil.columns[0] == ClosedForm<Rational>(2, 1, {exp_term(Rational(0), 0, RM{{1}, {0}})}));
    CHECK(nil.columns[1] == ClosedForm<Rational>(2, 1, {exp_term(Rational(0), 0, RM{{0}, {1}}),
                                                        exp_term(Rational(0), 1, RM{{1}, {0}})}));
  }

  TEST_CASE("irrational frequency") {
    // s^2 + 2: real mode only
    const RM a{{0, 1}, {-2, 0}};
    const auto cf = real_exp(a);
    CHECK(derivative_identity_holds(a, cf));
    for (double t : {0.1, 0.5, 1.0}) CHECK(relative_error(exp_eval(cf, t), numeric_oracle_exp(a, t)) <= 1e-9);
  }

  TEST_CASE("complex and real forms agree") {
    for (const auto& a : {rotation2(), damped3()}) {
      const auto c = std::get<ClosedForm<Gaussian>>(matrix_exponential(decompose(a, ModeRequest::complex)));
      const auto r = real_exp(a);
      for (double t : {0.1, 0.5, 1.0}) CHECK(relative_error(exp_eval(c, t), exp_eval(r, t)) <= 1e-12);
    }
  }
}
