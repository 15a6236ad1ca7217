#include "matpfd/pipeline.hpp"

#include <cstdio>

namespace matpfd {

namespace {

std::string format_error(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", value);
  return buf;
}

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

template <ExactField T>
Report check_exponential(const Matrix<T>& a, const ClosedForm<T>& cf, const Matrix<Rational>& rational_a,
                         std::span<const double> times) {
  Report rep;
  rep.add("e^(tA) at t=0 equals I", cf.at_zero() == Matrix<T>::identity(a.rows()));
  rep.add("d/dt e^(tA) = A e^(tA) (exact, same basis)", derivative_identity_holds(a, cf));
  for (double t : times) {
    const double err = relative_error(exp_eval(cf, t), numeric_oracle_exp(rational_a, t));
    rep.add("oracle agreement t=" + format_time(t), err <= kOracleTolerance, "relative error " + format_error(err));
  }
  for (auto [t1, t2] : {std::pair{0.1, 0.2}, std::pair{0.5, 0.5}}) {
    const double err = relative_error(exp_eval(cf, t1) * exp_eval(cf, t2), exp_eval(cf, t1 + t2));
    rep.add("semigroup t1=" + format_time(t1) + " t2=" + format_time(t2), err <= kSemigroupTolerance,
            "relative error " + format_error(err));
  }
  return rep;
}

/// (sI - A) M(s) - det(sI - A) I = 0, coefficient by coefficient.
Report check_adjugate(const Matrix<Rational>& a, const CharpolyAdjugate<Rational>& ca) {
  Report rep;
  const std::size_t n = a.rows();
  const auto& m = ca.adjugate.coeffs();
  bool ok = true;
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix<Rational> lhs(n, n);
    if (k >= 1 && k - 1 < m.size()) lhs += m[k - 1];
    if (k < m.size()) lhs -= a * m[k];
    ok = ok && lhs == Matrix<Rational>::identity(n) * ca.charpoly[k];
  }
  rep.add("(sI-A) M(s) = det(sI-A) I", ok);
  const Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
  rep.add("det(sI-A) at s=0 = (-1)^n det(A)", ca.charpoly[0] == sign * det(a));
  return rep;
}

std::vector<Rational> sample_points(const FactoredCharPoly& f, std::size_t count) {
  static const Rational pool[] = {Rational(1, 2), Rational(-7, 3), Rational(11, 5), Rational(-13, 4),
                                  Rational(17, 6), Rational(-19, 7), Rational(23, 8)};
  std::vector<Rational> out;
  for (const auto& s : pool) {
    if (out.size() == count) break;
    bool pole = false;
    for (const auto& lf : f.linear) pole = pole || lf.root == Gaussian(s);
    if (!pole) out.push_back(s);
  }
  return out;
}

}  // namespace

Decomposition decompose(const Matrix<Rational>& a, ModeRequest mode, std::span<const RootHint> hints,
                        ExecPolicy policy) {
  Decomposition dec;
  dec.matrix = a;
  dec.charpoly_adjugate = faddeev_leverrier(a, policy);
  const auto& ca = dec.charpoly_adjugate;
  if (mode == ModeRequest::automatic) {
    try {
      dec.factors = factor_charpoly(ca.charpoly, Mode::complex, hints);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IrrationalSpectrum) throw;
      dec.factors = factor_charpoly(ca.charpoly, Mode::real, hints);
    }
  } else {
    dec.factors = factor_charpoly(ca.charpoly, mode == ModeRequest::real ? Mode::real : Mode::complex, hints);
  }
  if (dec.factors.mode == Mode::complex)
    dec.complex_pfd = pfd_residue(dec.factors, ca.adjugate.cast<Gaussian>(), policy);
  else
    dec.real_pfd = pfd_real(dec.factors, ca.adjugate, policy);
  return dec;
}

AnyClosedForm matrix_exponential(const Decomposition& dec) {
  if (dec.complex_pfd) return exp_from_pfd(*dec.complex_pfd);
  return exp_from_pfd(*dec.real_pfd);
}

AnyClosedForm solve_ivp(const Decomposition& dec, const Vector<Rational>& y0) {
  if (dec.complex_pfd) {
    Vector<Gaussian> g(y0.begin(), y0.end());
    return solve_ivp(exp_from_pfd(*dec.complex_pfd), g);
  }
  return solve_ivp(exp_from_pfd(*dec.real_pfd), y0);
}

AnyGeneralSolution general_solution(const Decomposition& dec) {
  if (dec.complex_pfd) return general_solution(exp_from_pfd(*dec.complex_pfd));
  return general_solution(exp_from_pfd(*dec.real_pfd));
}

std::vector<ChainBasis<Gaussian>> chain_bases(const Decomposition& dec) {
  if (!dec.complex_pfd)
    throw Error(ErrorKind::ModeUnsupported, "chains are defined per eigenvalue and need complex mode");
  const Matrix<Gaussian> a = dec.matrix.cast<Gaussian>();
  std::vector<ChainBasis<Gaussian>> out;
  for (std::size_t i = 0; i < dec.complex_pfd->blocks.size(); ++i)
    out.push_back(select_chain_basis(a, *dec.complex_pfd, i));
  return out;
}

Report verify_all(const Decomposition& dec, std::span<const double> times) {
  Report rep = check_adjugate(dec.matrix, dec.charpoly_adjugate);
  const auto& ca = dec.charpoly_adjugate;
  rep.add("factorization reproduces det(sI-A)", dec.factors.expand() == ca.charpoly.cast<Gaussian>());

  const auto samples = sample_points(dec.factors, 3);
  if (dec.complex_pfd) {
    const auto& pfd = *dec.complex_pfd;
    const Matrix<Gaussian> a = dec.matrix.cast<Gaussian>();
    for (const auto& b : pfd.blocks) {
      const std::size_t nullity = nullspace(a.shifted(b.eigenvalue)).size();
      rep.add("1 <= nullity(A-lambda I) <= r [lambda=" + b.eigenvalue.str() + "]",
              nullity >= 1 && nullity <= static_cast<std::size_t>(b.multiplicity()));
    }
    rep.add("residue = undetermined coefficients", pfd == pfd_undetermined(dec.factors, ca.adjugate.cast<Gaussian>()));
    rep.append(verify_pfd(a, pfd));
    for (const auto& s0 : samples) {
      const Matrix<Gaussian> shifted = (-a).shifted(-Gaussian(s0));  // s0 I - A
      rep.add("resolvent reconstruction at s0=" + s0.str(),
              reconstruct_resolvent(pfd, Gaussian(s0)) * shifted == Matrix<Gaussian>::identity(a.rows()));
    }
    const auto bases = chain_bases(dec);
    rep.append(verify_chain_bases(a, pfd, bases));
    bool members = true;
    for (std::size_t i = 0; i < bases.size(); ++i)
      for (const auto& chain : bases[i].chains)
        for (const auto& v : chain.vectors) {
          const auto m = membership_check(a, pfd, i, v);
          members = members && m.is_member && m.violations.empty();
        }
    rep.add("chain vectors lie in colspace(B_1..B_j0)", members);
    const auto cf = exp_from_pfd(pfd);
    rep.append(check_exponential(a, cf, dec.matrix, times));
    // Both forms of the same exponential must agree when the real form exists.
    try {
      const auto real_factors = factor_charpoly(ca.charpoly, Mode::real);
      const auto real_pfd = pfd_real(real_factors, ca.adjugate);
      if (dec.factors.all_roots_real()) {
        bool same = real_pfd.quadratic.empty() && real_pfd.linear.blocks.size() == pfd.blocks.size();
        for (std::size_t i = 0; same && i < pfd.blocks.size(); ++i)
          for (int j = 1; same && j <= pfd.blocks[i].multiplicity(); ++j)
            same = real_pfd.linear.blocks[i].B(j).cast<Gaussian>() == pfd.blocks[i].B(j);
        rep.add("real-mode linear part = complex-mode decomposition", same);
      }
      const auto real_cf = exp_from_pfd(real_pfd);
      double worst = 0.0;
      for (double t : times) worst = std::max(worst, relative_error(exp_eval(real_cf, t), exp_eval(cf, t)));
      rep.add("real and complex closed forms agree", worst <= kModeAgreementTolerance,
              "relative error " + format_error(worst));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RepeatedQuadraticFactor && e.kind() != ErrorKind::IrrationalSpectrum) throw;
    }
  } else {
    const auto& pfd = *dec.real_pfd;
    const Matrix<Rational>& a = dec.matrix;
    for (const auto& b : pfd.linear.blocks) {
      const std::size_t nullity = nullspace(a.shifted(b.eigenvalue)).size();
      rep.add("1 <= nullity(A-lambda I) <= r [lambda=" + b.eigenvalue.str() + "]",
              nullity >= 1 && nullity <= static_cast<std::size_t>(b.multiplicity()));
    }
    rep.add("residue = undetermined coefficients", pfd == pfd_real_undetermined(dec.factors, ca.adjugate));
    rep.append(verify_pfd(a, pfd));
    for (const auto& s0 : samples) {
      const Matrix<Rational> shifted = (-a).shifted(-s0);
      rep.add("resolvent reconstruction at s0=" + s0.str(),
              reconstruct_resolvent(pfd, s0) * shifted == Matrix<Rational>::identity(a.rows()));
    }
    rep.append(check_exponential(a, exp_from_pfd(pfd), dec.matrix, times));
  }
  return rep;
}

}  // namespace matpfd
