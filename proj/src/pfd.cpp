#include "matpfd/pfd.hpp"

#include <functional>

namespace matpfd {

namespace {

/// Runs body(i, j) for every entry of an n x n matrix; entries are
/// independent and each writes only its own output slots.
void for_each_entry(std::size_t n, ExecPolicy policy, const std::function<void(std::size_t, std::size_t)>& body) {
  const long total = static_cast<long>(n * n);
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < total; ++k)
      body(static_cast<std::size_t>(k) / n, static_cast<std::size_t>(k) % n);
  } else {
    for (long k = 0; k < total; ++k)
      body(static_cast<std::size_t>(k) / n, static_cast<std::size_t>(k) % n);
  }
}

template <ExactField T>
T root_as(const Gaussian& g) {
  if constexpr (std::is_same_v<T, Rational>) {
    return g.re();
  } else {
    return g;
  }
}

/// prod over linear factors other than `skip` (and every quadratic factor).
template <ExactField T>
Poly<T> cofactor(const FactoredCharPoly& f, std::size_t skip_linear, std::size_t skip_quadratic) {
  auto acc = Poly<T>::constant(T(1));
  for (std::size_t l = 0; l < f.linear.size(); ++l) {
    if (l == skip_linear) continue;
    acc = acc * Poly<T>::linear(root_as<T>(f.linear[l].root)).pow(static_cast<unsigned>(f.linear[l].multiplicity));
  }
  for (std::size_t q = 0; q < f.quadratic.size(); ++q) {
    if (q == skip_quadratic) continue;
    acc = acc * f.quadratic[q].poly().cast<T>();
  }
  return acc;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

template <ExactField T>
EigenBlock<T> residue_block(const PolyMatrix<T>& adj, const T& lambda, int r, const Poly<T>& other,
                            ExecPolicy policy) {
  const std::size_t n = adj.size();
  EigenBlock<T> block{lambda, std::vector<Matrix<T>>(static_cast<std::size_t>(r), Matrix<T>(n, n))};
  const Poly<T> den = taylor_shift(other, lambda);
  for_each_entry(n, policy, [&](std::size_t i, std::size_t j) {
    const Poly<T> local = series_div(taylor_shift(adj.entry(i, j), lambda), den, static_cast<std::size_t>(r));
    for (int m = 0; m < r; ++m) block.coeffs[static_cast<std::size_t>(r - 1 - m)](i, j) = local[static_cast<std::size_t>(m)];
  });
  return block;
}

template <ExactField T>
ResolventPFD<T> linear_part(const FactoredCharPoly& f, const PolyMatrix<T>& adj, ExecPolicy policy) {
  ResolventPFD<T> out;
  out.n = adj.size();
  for (std::size_t i = 0; i < f.linear.size(); ++i) {
    out.blocks.push_back(residue_block(adj, root_as<T>(f.linear[i].root), f.linear[i].multiplicity,
                                       cofactor<T>(f, i, kNone), policy));
  }
  return out;
}

void require_degree(const FactoredCharPoly& f, std::size_t n) {
  if (static_cast<std::size_t>(f.degree()) != n)
    throw Error(ErrorKind::DimensionMismatch, "factorization degree " + std::to_string(f.degree()) +
                                                  " does not match dimension " + std::to_string(n));
}

/// Solves M(s) = sum_k C_k basis_k(s) for the constant matrices C_k by
/// matching at distinct sample points s = n+1, n+2, ... that avoid `poles`.
template <ExactField T>
std::vector<Matrix<T>> undetermined_coefficients(const std::vector<Poly<T>>& basis, const PolyMatrix<T>& adj,
                                                 const std::vector<T>& poles, ExecPolicy policy) {
  const std::size_t n = adj.size();
  const std::size_t count = basis.size();
  std::vector<Rational> samples;
  for (long s = static_cast<long>(n) + 1; samples.size() < count; ++s) {
    const T candidate{Rational(s)};
    if (std::find(poles.begin(), poles.end(), candidate) != poles.end()) continue;
    samples.emplace_back(s);
  }
  Matrix<T> v(count, count);
  std::vector<Matrix<T>> values;
  for (std::size_t k = 0; k < count; ++k) {
    const T s{samples[k]};
    for (std::size_t c = 0; c < count; ++c) v(k, c) = basis[c].eval(s);
    values.push_back(adj.eval(s));
  }
  Matrix<T> vinv;
  try {
    vinv = inverse(v);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularMatrix) throw;
    throw Error(ErrorKind::SampleCollision, "sample system is singular");
  }
  std::vector<Matrix<T>> coeffs(count, Matrix<T>(n, n));
  for_each_entry(n, policy, [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < count; ++c) {
      T acc{};
      for (std::size_t k = 0; k < count; ++k) acc += vinv(c, k) * values[k](i, j);
      coeffs[c](i, j) = std::move(acc);
    }
  });
  return coeffs;
}

/// Basis det(sI-A)/(s-lambda_i)^j for every linear factor, in block order.
template <ExactField T>
std::vector<Poly<T>> linear_basis(const FactoredCharPoly& f) {
  std::vector<Poly<T>> basis;
  for (std::size_t i = 0; i < f.linear.size(); ++i) {
    const Poly<T> other = cofactor<T>(f, i, kNone);
    const auto lin = Poly<T>::linear(root_as<T>(f.linear[i].root));
    const int r = f.linear[i].multiplicity;
    for (int j = 1; j <= r; ++j) basis.push_back(other * lin.pow(static_cast<unsigned>(r - j)));
  }
  return basis;
}

template <ExactField T>
ResolventPFD<T> unpack_linear(const FactoredCharPoly& f, std::vector<Matrix<T>>& coeffs, std::size_t n) {
  ResolventPFD<T> out;
  out.n = n;
  std::size_t next = 0;
  for (const auto& lf : f.linear) {
    EigenBlock<T> block{root_as<T>(lf.root), {}};
    for (int j = 0; j < lf.multiplicity; ++j) block.coeffs.push_back(std::move(coeffs[next++]));
    out.blocks.push_back(std::move(block));
  }
  return out;
}

template <ExactField T>
Matrix<T> reconstruct_linear(const ResolventPFD<T>& pfd, const T& s0) {
  Matrix<T> acc(pfd.n, pfd.n);
  for (const auto& b : pfd.blocks) {
    const T diff = s0 - b.eigenvalue;
    if (is_zero(diff)) throw Error(ErrorKind::EvalAtPole, "s0 = " + to_string(s0) + " is an eigenvalue");
    const T inv = T(1) / diff;
    T scale = inv;
    for (const auto& bij : b.coeffs) {
      acc += bij * scale;
      scale *= inv;
    }
  }
  return acc;
}

template <ExactField T>
std::string label(const T& lambda) {
  return "lambda=" + to_string(lambda);
}

template <ExactField T>
Report verify_linear(const Matrix<T>& a, const ResolventPFD<T>& pfd, bool closes_identity) {
  Report rep;
  const std::size_t n = a.rows();
  for (const auto& b : pfd.blocks) {
    const Matrix<T> shifted = a.shifted(b.eigenvalue);
    const int r = b.multiplicity();
    rep.add("(A-lambda I) B_r = 0 [" + label(b.eigenvalue) + "]", (shifted * b.B(r)).is_zero());
    for (int j = 1; j < r; ++j)
      rep.add("(A-lambda I) B_j = B_j+1 [" + label(b.eigenvalue) + ", j=" + std::to_string(j) + "]",
              shifted * b.B(j) == b.B(j + 1));
    const Matrix<T>& proj = b.B(1);
    rep.add("(A-lambda I) B_1 = B_1 (A-lambda I) [" + label(b.eigenvalue) + "]", shifted * proj == proj * shifted);
    rep.add("B_1^2 = B_1 [" + label(b.eigenvalue) + "]", proj * proj == proj);
    const std::size_t rk = rank(proj);
    rep.add("rank B_1 = r [" + label(b.eigenvalue) + "]", rk == static_cast<std::size_t>(r),
            "rank " + std::to_string(rk) + ", multiplicity " + std::to_string(r));
    for (int j = 3; j <= r; ++j)
      rep.add("B_j = B_2^(j-1) [" + label(b.eigenvalue) + ", j=" + std::to_string(j) + "]",
              power(b.B(2), static_cast<unsigned>(j - 1)) == b.B(j));
  }
  for (std::size_t i = 0; i < pfd.blocks.size(); ++i)
    for (std::size_t p = 0; p < pfd.blocks.size(); ++p)
      if (i != p)
        rep.add("B_1 B'_1 = 0 [" + label(pfd.blocks[i].eigenvalue) + ", " + label(pfd.blocks[p].eigenvalue) + "]",
                (pfd.blocks[i].B(1) * pfd.blocks[p].B(1)).is_zero());
  if (closes_identity) {
    Matrix<T> sum(n, n);
    for (const auto& b : pfd.blocks) sum += b.B(1);
    rep.add("sum of B_1 = I", sum == Matrix<T>::identity(n));
  }
  return rep;
}

}  // namespace

ResolventPFD<Gaussian> pfd_residue(const FactoredCharPoly& factors, const PolyMatrix<Gaussian>& adjugate,
                                   ExecPolicy policy) {
  if (factors.mode != Mode::complex || !factors.quadratic.empty())
    throw Error(ErrorKind::ModeUnsupported, "pfd_residue needs a complex-mode factorization");
  require_degree(factors, adjugate.size());
  return linear_part(factors, adjugate, policy);
}

ResolventPFD<Gaussian> pfd_undetermined(const FactoredCharPoly& factors, const PolyMatrix<Gaussian>& adjugate,
                                        ExecPolicy policy) {
  if (factors.mode != Mode::complex || !factors.quadratic.empty())
    throw Error(ErrorKind::ModeUnsupported, "pfd_undetermined needs a complex-mode factorization");
  require_degree(factors, adjugate.size());
  std::vector<Gaussian> poles;
  for (const auto& f : factors.linear) poles.push_back(f.root);
  auto coeffs = undetermined_coefficients(linear_basis<Gaussian>(factors), adjugate, poles, policy);
  return unpack_linear(factors, coeffs, adjugate.size());
}

RealResolventPFD pfd_real(const FactoredCharPoly& factors, const PolyMatrix<Rational>& adjugate, ExecPolicy policy) {
  if (factors.mode != Mode::real)
    throw Error(ErrorKind::ModeUnsupported, "pfd_real needs a real-mode factorization");
  require_degree(factors, adjugate.size());
  const std::size_t n = adjugate.size();
  RealResolventPFD out;
  out.n = n;
  out.linear = linear_part(factors, adjugate, policy);
  for (std::size_t q = 0; q < factors.quadratic.size(); ++q) {
    const QuadraticFactor& qf = factors.quadratic[q];
    const Poly<Rational> modulus = qf.poly();
    // Quadratic factors are simple, so the cofactor is invertible modulo q.
    const Poly<Rational> inv = inverse_mod(cofactor<Rational>(factors, kNone, q), modulus);
    QuadraticBlock block{qf, Matrix<Rational>(n, n), Matrix<Rational>(n, n)};
    for_each_entry(n, policy, [&](std::size_t i, std::size_t j) {
      // (s + a) P + Q = M(s) R(s)^{-1} mod q(s)
      const Poly<Rational> rem = mod(adjugate.entry(i, j) * inv, modulus);
      block.P(i, j) = rem[1];
      block.Q(i, j) = rem[0] - qf.a * rem[1];
    });
    out.quadratic.push_back(std::move(block));
  }
  return out;
}

RealResolventPFD pfd_real_undetermined(const FactoredCharPoly& factors, const PolyMatrix<Rational>& adjugate,
                                       ExecPolicy policy) {
  if (factors.mode != Mode::real)
    throw Error(ErrorKind::ModeUnsupported, "pfd_real_undetermined needs a real-mode factorization");
  require_degree(factors, adjugate.size());
  const std::size_t n = adjugate.size();
  std::vector<Poly<Rational>> basis = linear_basis<Rational>(factors);
  for (std::size_t q = 0; q < factors.quadratic.size(); ++q) {
    const Poly<Rational> other = cofactor<Rational>(factors, kNone, q);
    basis.push_back(Poly<Rational>{factors.quadratic[q].a, Rational(1)} * other);
    basis.push_back(other);
  }
  std::vector<Rational> poles;
  for (const auto& f : factors.linear) poles.push_back(f.root.re());
  auto coeffs = undetermined_coefficients(basis, adjugate, poles, policy);
  RealResolventPFD out;
  out.n = n;
  out.linear = unpack_linear(factors, coeffs, n);
  std::size_t next = basis.size() - 2 * factors.quadratic.size();
  for (const auto& qf : factors.quadratic) {
    QuadraticBlock block{qf, std::move(coeffs[next]), std::move(coeffs[next + 1])};
    next += 2;
    out.quadratic.push_back(std::move(block));
  }
  return out;
}

Matrix<Gaussian> reconstruct_resolvent(const ResolventPFD<Gaussian>& pfd, const Gaussian& s0) {
  return reconstruct_linear(pfd, s0);
}

Matrix<Rational> reconstruct_resolvent(const ResolventPFD<Rational>& pfd, const Rational& s0) {
  return reconstruct_linear(pfd, s0);
}

Matrix<Rational> reconstruct_resolvent(const RealResolventPFD& pfd, const Rational& s0) {
  Matrix<Rational> acc = reconstruct_linear(pfd.linear, s0);
  for (const auto& q : pfd.quadratic) {
    const Rational shifted = s0 + q.factor.a;
    const Rational den = shifted * shifted + q.factor.d;
    if (den.is_zero()) throw Error(ErrorKind::EvalAtPole, "s0 is a root of a quadratic factor");
    acc += (q.P * shifted + q.Q) * den.inv();
  }
  return acc;
}

Report verify_pfd(const Matrix<Gaussian>& a, const ResolventPFD<Gaussian>& pfd) {
  return verify_linear(a, pfd, true);
}

Report verify_pfd(const Matrix<Rational>& a, const ResolventPFD<Rational>& pfd) {
  return verify_linear(a, pfd, true);
}

Report verify_pfd(const Matrix<Rational>& a, const RealResolventPFD& pfd) {
  Report rep = verify_linear(a, pfd.linear, false);
  const std::size_t n = a.rows();
  Matrix<Rational> sum(n, n);
  for (const auto& b : pfd.linear.blocks) sum += b.B(1);
  for (const auto& q : pfd.quadratic) {
    const std::string tag = " [" + to_string(q.factor.poly()) + "]";
    const Matrix<Rational> shifted = a.shifted(-q.factor.a);  // A + aI
    rep.add("P^2 = P" + tag, q.P * q.P == q.P);
    rep.add("(A+aI) P = Q" + tag, shifted * q.P == q.Q);
    rep.add("(A+aI) Q = -d P" + tag, shifted * q.Q == q.P * (-q.factor.d));
    rep.add("rank P = 2" + tag, rank(q.P) == 2);
    for (const auto& b : pfd.linear.blocks)
      rep.add("P B_1 = 0" + tag, (q.P * b.B(1)).is_zero());
    for (const auto& other : pfd.quadratic)
      if (!(other.factor == q.factor)) rep.add("P P' = 0" + tag, (q.P * other.P).is_zero());
    sum += q.P;
  }
  rep.add("sum of B_1 and P = I", sum == Matrix<Rational>::identity(n));
  return rep;
}

std::size_t coefficient_count(const RealResolventPFD& pfd) {
  std::size_t count = 2 * pfd.quadratic.size();
  for (const auto& b : pfd.linear.blocks) count += b.coeffs.size();
  return count;
}

}  // namespace matpfd
