#include "matpfd/chains.hpp"

#include <algorithm>

namespace matpfd {

namespace {

template <ExactField T>
std::size_t rank_of(const std::vector<Vector<T>>& vectors) {
  if (vectors.empty()) return 0;
  return rank(Matrix<T>::from_columns(vectors));
}

template <ExactField T>
std::vector<Vector<T>> chain_from(const Matrix<T>& shifted, Vector<T> top, int length) {
  std::vector<Vector<T>> out;
  for (int k = 0; k < length; ++k) {
    out.push_back(top);
    top = matpfd::apply(shifted, top);
  }
  return out;
}

bool longer_first(std::size_t la, std::size_t ca, std::size_t lb, std::size_t cb) {
  return la != lb ? la > lb : ca < cb;
}

/// Top-down Jordan construction on ker (A - lambda I)^r. At level p the new
/// chain heads must be independent modulo ker N^(p-1) and the level-p
/// vectors of longer chains already chosen.
template <ExactField T>
std::vector<Chain<T>> jordan_completion(const Matrix<T>& a, const T& lambda,
                                        const std::vector<Chain<T>>& column_chains, int multiplicity) {
  const Matrix<T> shifted = a.shifted(lambda);
  const std::size_t n = a.rows();
  int top_level = 0;
  for (const auto& c : column_chains) top_level = std::max(top_level, static_cast<int>(c.length()));

  std::vector<std::size_t> kernel_dim(static_cast<std::size_t>(top_level) + 1, 0);
  std::vector<std::vector<Vector<T>>> kernel_basis(static_cast<std::size_t>(top_level) + 1);
  Matrix<T> np = Matrix<T>::identity(n);
  for (int p = 1; p <= top_level; ++p) {
    np = shifted * np;
    kernel_basis[static_cast<std::size_t>(p)] = nullspace(np);
    kernel_dim[static_cast<std::size_t>(p)] = kernel_basis[static_cast<std::size_t>(p)].size();
  }

  std::vector<Chain<T>> chosen;
  for (int p = top_level; p >= 1; --p) {
    std::vector<Vector<T>> span = kernel_basis[static_cast<std::size_t>(p - 1)];
    std::size_t longer = 0;
    for (const auto& c : chosen) {
      if (static_cast<int>(c.length()) <= p) continue;
      span.push_back(c.vectors[c.length() - static_cast<std::size_t>(p)]);
      ++longer;
    }
    std::size_t need = kernel_dim[static_cast<std::size_t>(p)] - kernel_dim[static_cast<std::size_t>(p - 1)] - longer;
    std::size_t span_rank = rank_of(span);

    struct Candidate {
      Vector<T> head;
      std::size_t column;
      int start;
      bool from_columns;
    };
    std::vector<Candidate> candidates;
    for (const auto& c : column_chains) {
      if (static_cast<int>(c.length()) < p) continue;
      const std::size_t k = c.length() - static_cast<std::size_t>(p);
      candidates.push_back({c.vectors[k], c.source_column, c.start_index + static_cast<int>(k), true});
    }
    for (const auto& v : kernel_basis[static_cast<std::size_t>(p)]) candidates.push_back({v, 0, 0, false});

    for (const auto& cand : candidates) {
      if (need == 0) break;
      span.push_back(cand.head);
      const std::size_t r = rank_of(span);
      if (r == span_rank + 1) {
        span_rank = r;
        --need;
        chosen.push_back({lambda, chain_from(shifted, cand.head, p), cand.column, cand.start, cand.from_columns});
      } else {
        span.pop_back();
      }
    }
    if (need != 0)
      throw Error(ErrorKind::IncompleteBasis, "no independent chain heads at rank " + std::to_string(p));
  }
  std::size_t total = 0;
  for (const auto& c : chosen) total += c.length();
  if (total != static_cast<std::size_t>(multiplicity))
    throw Error(ErrorKind::IncompleteBasis,
                "constructed " + std::to_string(total) + " vectors for multiplicity " + std::to_string(multiplicity));
  return chosen;
}

}  // namespace

template <ExactField T>
std::vector<Chain<T>> extract_column_chains(const ResolventPFD<T>& pfd, std::size_t block) {
  const auto& b = pfd.blocks.at(block);
  std::vector<Chain<T>> chains;
  for (std::size_t m = 0; m < pfd.n; ++m) {
    std::vector<Vector<T>> column;
    for (const auto& bij : b.coeffs) column.push_back(bij.col(m));
    // Once a column vanishes the recurrence keeps it zero, so the chain is
    // the prefix up to the last nonzero entry.
    std::size_t last = 0;
    for (std::size_t j = 0; j < column.size(); ++j)
      if (!is_zero_vector(column[j])) last = j + 1;
    if (last == 0) continue;
    column.resize(last);
    chains.push_back({b.eigenvalue, std::move(column), m, 1, true});
  }
  return chains;
}

template <ExactField T>
int generalized_rank(const Matrix<T>& a, const T& lambda, const Vector<T>& v) {
  if (v.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "vector length");
  if (is_zero_vector(v)) throw Error(ErrorKind::NotAGeneralizedEigenvector, "zero vector");
  const Matrix<T> shifted = a.shifted(lambda);
  Vector<T> w = v;
  for (std::size_t p = 1; p <= a.rows(); ++p) {
    w = matpfd::apply(shifted, w);
    if (is_zero_vector(w)) return static_cast<int>(p);
  }
  throw Error(ErrorKind::NotAGeneralizedEigenvector,
              "(A - " + to_string(lambda) + " I)^n does not annihilate the vector");
}

template <ExactField T>
Membership membership_check(const Matrix<T>& a, const ResolventPFD<T>& pfd, std::size_t block,
                            const Vector<T>& v) {
  if (is_zero_vector(v)) throw Error(ErrorKind::NotAGeneralizedEigenvector, "zero vector");
  const auto& b = pfd.blocks.at(block);
  Membership out;
  out.is_member = in_column_space(b.B(1), v);
  if (!out.is_member) return out;
  const Matrix<T> shifted = a.shifted(b.eigenvalue);
  // j0 = 1 + max{m : v in Image((A - lambda I)^m)}
  int m = 0;
  Matrix<T> np = shifted;
  while (m < static_cast<int>(a.rows()) && in_column_space(np, v)) {
    ++m;
    np = shifted * np;
  }
  out.j0 = m + 1;
  for (int j = 1; j <= out.j0; ++j) {
    if (j > b.multiplicity()) {
      out.violations.push_back("j0 = " + std::to_string(out.j0) + " exceeds multiplicity");
      break;
    }
    if (!in_column_space(b.B(j), v)) out.violations.push_back("not in column space of B_" + std::to_string(j));
  }
  return out;
}

template <ExactField T>
ChainBasis<T> select_chain_basis(const Matrix<T>& a, const ResolventPFD<T>& pfd, std::size_t block) {
  const auto& b = pfd.blocks.at(block);
  ChainBasis<T> out{b.eigenvalue, b.multiplicity(), {}, true};
  auto candidates = extract_column_chains(pfd, block);
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
    return longer_first(x.length(), x.source_column, y.length(), y.source_column);
  });

  std::vector<Vector<T>> accepted;
  for (const auto& chain : candidates) {
    if (out.total() == static_cast<std::size_t>(out.multiplicity)) break;
    auto trial = accepted;
    trial.insert(trial.end(), chain.vectors.begin(), chain.vectors.end());
    if (rank_of(trial) != trial.size()) continue;
    accepted = std::move(trial);
    out.chains.push_back(chain);
  }
  if (out.total() == static_cast<std::size_t>(out.multiplicity)) return out;

  out.greedy_sufficient = false;
  out.chains = jordan_completion(a, b.eigenvalue, extract_column_chains(pfd, block), out.multiplicity);
  std::stable_sort(out.chains.begin(), out.chains.end(), [](const auto& x, const auto& y) {
    return longer_first(x.length(), x.source_column, y.length(), y.source_column);
  });
  return out;
}

template <ExactField T>
bool is_valid_chain(const Matrix<T>& a, const Chain<T>& chain) {
  if (chain.vectors.empty()) return false;
  const Matrix<T> shifted = a.shifted(chain.eigenvalue);
  for (std::size_t j = 0; j < chain.length(); ++j) {
    if (is_zero_vector(chain.vectors[j])) return false;
    const Vector<T> image = matpfd::apply(shifted, chain.vectors[j]);
    if (j + 1 < chain.length() ? image != chain.vectors[j + 1] : !is_zero_vector(image)) return false;
  }
  return true;
}

template <ExactField T>
Report verify_chain_bases(const Matrix<T>& a, const ResolventPFD<T>& pfd, const std::vector<ChainBasis<T>>& bases) {
  Report rep;
  std::vector<Vector<T>> all;
  for (const auto& basis : bases) {
    const std::string tag = " [lambda=" + to_string(basis.eigenvalue) + "]";
    bool chains_ok = true;
    bool ranks_ok = true;
    std::vector<Vector<T>> mine;
    for (const auto& chain : basis.chains) {
      chains_ok = chains_ok && is_valid_chain(a, chain);
      for (std::size_t j = 0; j < chain.length(); ++j) {
        mine.push_back(chain.vectors[j]);
        ranks_ok = ranks_ok && generalized_rank(a, basis.eigenvalue, chain.vectors[j]) ==
                                   static_cast<int>(chain.length() - j);
      }
    }
    rep.add("chain recurrences" + tag, chains_ok);
    rep.add("generalized ranks l-j+1" + tag, ranks_ok);
    rep.add("chain vectors = multiplicity" + tag, basis.total() == static_cast<std::size_t>(basis.multiplicity),
            std::to_string(basis.total()) + " of " + std::to_string(basis.multiplicity));
    const std::size_t nullity = nullspace(a.shifted(basis.eigenvalue)).size();
    rep.add("chain count = geometric multiplicity" + tag, basis.chains.size() == nullity,
            std::to_string(basis.chains.size()) + " chains, nullity " + std::to_string(nullity));
    rep.add("chain vectors independent" + tag, rank_of(mine) == mine.size());
    all.insert(all.end(), mine.begin(), mine.end());
  }
  rep.add("chain bases span the space", rank_of(all) == pfd.n && all.size() == pfd.n,
          "rank " + std::to_string(rank_of(all)) + " of " + std::to_string(pfd.n));
  return rep;
}

#define MATPFD_INSTANTIATE(T)                                                                              \
  template std::vector<Chain<T>> extract_column_chains(const ResolventPFD<T>&, std::size_t);               \
  template int generalized_rank(const Matrix<T>&, const T&, const Vector<T>&);                             \
  template Membership membership_check(const Matrix<T>&, const ResolventPFD<T>&, std::size_t,              \
                                       const Vector<T>&);                                                  \
  template ChainBasis<T> select_chain_basis(const Matrix<T>&, const ResolventPFD<T>&, std::size_t);        \
  template bool is_valid_chain(const Matrix<T>&, const Chain<T>&);                                         \
  template Report verify_chain_bases(const Matrix<T>&, const ResolventPFD<T>&, const std::vector<ChainBasis<T>>&);

MATPFD_INSTANTIATE(Rational)
MATPFD_INSTANTIATE(Gaussian)

#undef MATPFD_INSTANTIATE

}  // namespace matpfd
