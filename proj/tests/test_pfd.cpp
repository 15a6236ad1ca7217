#include <random>

#include "doctest.h"
#include "matpfd/pipeline.hpp"
#include "support/golden.hpp"
#include "support/planted.hpp"

using namespace matpfd;
using namespace matpfd::testing;

namespace {

using GM = Matrix<Gaussian>;

ResolventPFD<Gaussian> complex_pfd(const RM& a, ExecPolicy policy = ExecPolicy::serial) {
  const auto ca = faddeev_leverrier(a, policy);
  const auto f = factor_charpoly(ca.charpoly, Mode::complex);
  return pfd_residue(f, ca.adjugate.cast<Gaussian>(), policy);
}

RealResolventPFD real_pfd(const RM& a) {
  const auto ca = faddeev_leverrier(a);
  return pfd_real(factor_charpoly(ca.charpoly, Mode::real), ca.adjugate);
}

ResolventPFD<Gaussian> to_gaussian(const ResolventPFD<Rational>& p) {
  ResolventPFD<Gaussian> out{p.n, {}};
  for (const auto& b : p.blocks) {
    EigenBlock<Gaussian> g{Gaussian(b.eigenvalue), {}};
    for (const auto& m : b.coeffs) g.coeffs.push_back(m.cast<Gaussian>());
    out.blocks.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST_SUITE("pfd") {
  TEST_CASE("single Jordan block") {
    const auto pfd = complex_pfd(jordan3());
    REQUIRE(pfd.blocks.size() == 1);
    const auto& b = pfd.blocks[0];
    CHECK(b.eigenvalue == Gaussian(2));
    CHECK(b.B(1) == GM::identity(3));
    CHECK(b.B(2) == RM{{-2, 1, 2}, {-2, 2, 0}, {-1, 1, 0}}.cast<Gaussian>());
    CHECK(b.B(3) == RM{{0, 2, -4}, {0, 2, -4}, {0, 1, -2}}.cast<Gaussian>());
    CHECK(verify_pfd(jordan3().cast<Gaussian>(), pfd).ok());
  }

  TEST_CASE("distinct eigenvalues") {
    const auto pfd = complex_pfd(distinct2());
    REQUIRE(pfd.blocks.size() == 2);
    CHECK(pfd.blocks[0].eigenvalue == Gaussian(2));
    CHECK(pfd.blocks[0].B(1) == RM{{-3, -4}, {3, 4}}.cast<Gaussian>());
    CHECK(pfd.blocks[1].eigenvalue == Gaussian(3));
    CHECK(pfd.blocks[1].B(1) == RM{{4, 4}, {-3, -3}}.cast<Gaussian>());
  }

  TEST_CASE("scalar matrix") {
    const RM a = RM::identity(3) * Rational(5, 2);
    const auto pfd = complex_pfd(a);
    REQUIRE(pfd.blocks.size() == 1);
    REQUIRE(pfd.blocks[0].multiplicity() == 3);
    CHECK(pfd.blocks[0].B(1) == GM::identity(3));
    CHECK(pfd.blocks[0].B(2).is_zero());
    CHECK(reconstruct_resolvent(pfd, Gaussian(Rational(7, 2))) == GM::identity(3));
  }

  TEST_CASE("undetermined coefficients agree with residues") {
    for (const auto& a : {jordan3(), distinct2(), rotation2(), ivp3(), damped3(), RM{{0, 1}, {0, 0}}}) {
      const auto ca = faddeev_leverrier(a);
      const auto f = factor_charpoly(ca.charpoly, Mode::complex);
      CHECK(pfd_undetermined(f, ca.adjugate.cast<Gaussian>()) == pfd_residue(f, ca.adjugate.cast<Gaussian>()));
    }
    const auto nil = complex_pfd(RM{{0, 1}, {0, 0}});
    REQUIRE(nil.blocks.size() == 1);
    CHECK(nil.blocks[0].B(1) == GM::identity(2));
    CHECK(nil.blocks[0].B(2) == RM{{0, 1}, {0, 0}}.cast<Gaussian>());
  }

  TEST_CASE("planted 4x4 with (s-1)^2 (s+2)(s-3)") {
    std::mt19937_64 rng(41);
    const auto p = plant(rng, {{Rational(1), 2}, {Rational(-2), 1}, {Rational(3), 1}});
    const auto ca = faddeev_leverrier(p.a);
    CHECK(ca.charpoly ==
          Poly<Rational>::linear(1).pow(2) * Poly<Rational>::linear(-2) * Poly<Rational>::linear(3));
    const auto f = factor_charpoly(ca.charpoly, Mode::complex);
    const auto residue = pfd_residue(f, ca.adjugate.cast<Gaussian>());
    CHECK(residue == pfd_undetermined(f, ca.adjugate.cast<Gaussian>()));
    CHECK(residue == to_gaussian(oracle_pfd(p)));
  }

  TEST_CASE("planted structures match the oracle; serial and parallel agree") {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 30; ++k) {
      const auto p = random_planted(rng);
      const auto serial = complex_pfd(p.a, ExecPolicy::serial);
      CHECK(serial == to_gaussian(oracle_pfd(p)));
      CHECK(serial == complex_pfd(p.a, ExecPolicy::parallel));
      const auto ca = faddeev_leverrier(p.a);
      const auto f = factor_charpoly(ca.charpoly, Mode::real);
      const auto real = pfd_real(f, ca.adjugate);
      CHECK(real.quadratic.empty());
      CHECK(to_gaussian(real.linear) == serial);
    }
  }

  TEST_CASE("real mode") {
    const auto rot = real_pfd(rotation2());
    CHECK(rot.linear.blocks.empty());
    REQUIRE(rot.quadratic.size() == 1);
    CHECK(rot.quadratic[0].factor == QuadraticFactor{Rational(0), Rational(9)});
    CHECK(rot.quadratic[0].P == RM::identity(2));
    CHECK(rot.quadratic[0].Q == rotation2());

    const auto d = real_pfd(damped3());
    REQUIRE(d.linear.blocks.size() == 1);
    CHECK(d.linear.blocks[0].eigenvalue == Rational(-2));
    CHECK(d.linear.blocks[0].B(1) == RM{{2, 1, 0}, {-2, -1, 0}, {2, 1, 0}});
    REQUIRE(d.quadratic.size() == 1);
    CHECK(d.quadratic[0].P == RM{{-1, -1, 0}, {2, 2, 0}, {-2, -1, 1}});
    CHECK(d.quadratic[0].Q == RM{{1, 3, 2}, {-2, -6, -4}, {3, 8, 5}} * Rational(3));
    CHECK(coefficient_count(d) == 3);

    const RM quarter{{0, -1}, {1, 0}};
    const auto q = real_pfd(quarter);
    REQUIRE(q.quadratic.size() == 1);
    CHECK(q.quadratic[0].factor == QuadraticFactor{Rational(0), Rational(1)});
    CHECK(q.quadratic[0].P == RM::identity(2));
    CHECK(q.quadratic[0].Q == quarter);

    for (const auto& a : {rotation2(), damped3(), quarter}) {
      const auto ca = faddeev_leverrier(a);
      const auto f = factor_charpoly(ca.charpoly, Mode::real);
      CHECK(pfd_real_undetermined(f, ca.adjugate) == pfd_real(f, ca.adjugate));
      CHECK(verify_pfd(a, pfd_real(f, ca.adjugate)).ok());
    }
  }

  TEST_CASE("real mode on planted rotation blocks") {
    std::mt19937_64 rng(47);
    const auto p = plant(rng, {{Rational(1), 2}}, {{Rational(1), Rational(2)}, {Rational(-1, 2), Rational(3)}});
    const auto ca = faddeev_leverrier(p.a);
    const auto f = factor_charpoly(ca.charpoly, Mode::real);
    CHECK(f.quadratic.size() == 2);
    const auto pfd = pfd_real(f, ca.adjugate);
    CHECK(pfd == pfd_real_undetermined(f, ca.adjugate));
    CHECK(verify_pfd(p.a, pfd).ok());
    for (const Rational s0 : {Rational(1, 2), Rational(-7, 3), Rational(5)})
      CHECK(reconstruct_resolvent(pfd, s0) * (-p.a).shifted(-s0) == RM::identity(p.a.rows()));
  }

  TEST_CASE("reconstruction") {
    const auto pfd = complex_pfd(jordan3());
    CHECK(reconstruct_resolvent(pfd, Gaussian(0)) == (-inverse(jordan3())).cast<Gaussian>());
    const auto d = complex_pfd(distinct2());
    CHECK(reconstruct_resolvent(d, Gaussian(0)) ==
          RM{{Rational(1, 6), Rational(2, 3)}, {Rational(-1, 2), -1}}.cast<Gaussian>());
    try {
      reconstruct_resolvent(d, Gaussian(2));
      FAIL("expected EvalAtPole");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EvalAtPole);
    }
    try {
      reconstruct_resolvent(real_pfd(rotation2()), Rational(0));
    } catch (const Error&) {
      FAIL("0 is not a pole of s^2 + 9");
    }
  }

  TEST_CASE("verification catches corruption") {
    auto pfd = complex_pfd(jordan3());
    std::swap(pfd.blocks[0].coeffs[1], pfd.blocks[0].coeffs[2]);
    const Report rep = verify_pfd(jordan3().cast<Gaussian>(), pfd);
    CHECK_FALSE(rep.ok());
    bool recurrence_failed = false;
    for (const auto& c : rep.checks)
      if (!c.passed && c.name.find("B_j = B_j+1") != std::string::npos) recurrence_failed = true;
    CHECK(recurrence_failed);
  }

  TEST_CASE("diagonalizable matrix keeps a zero coefficient") {
    const auto pfd = complex_pfd(ivp3());
    REQUIRE(pfd.blocks.size() == 2);
    CHECK(pfd.blocks[0].eigenvalue == Gaussian(-1));
    CHECK(pfd.blocks[0].B(1) == RM{{3, -3, -1}, {3, -3, -1}, {-3, 3, 1}}.cast<Gaussian>());
    CHECK(pfd.blocks[1].eigenvalue == Gaussian(1));
    CHECK(pfd.blocks[1].B(1) == RM{{-2, 3, 1}, {-3, 4, 1}, {3, -3, 0}}.cast<Gaussian>());
    CHECK(pfd.blocks[1].B(2).is_zero());
    CHECK(verify_pfd(ivp3().cast<Gaussian>(), pfd).ok());
  }
}
