#pragma once

// Chains of generalized eigenvectors read off the columns of the B_ij.
//
// For a fixed eigenvalue lambda with multiplicity r, column m of
// B_1, B_2, ..., B_r is a sequence with (A - lambda I) b_j = b_{j+1}; its
// nonzero prefix is a chain ending with an eigenvector.

#include <string>
#include <vector>

#include "matpfd/pfd.hpp"

namespace matpfd {

template <ExactField T>
struct Chain {
  T eigenvalue;
  std::vector<Vector<T>> vectors;  // v_1 .. v_l, v_l an eigenvector
  std::size_t source_column = 0;   // column m of the B_ij
  int start_index = 1;             // v_1 is column m of B_{start_index}
  bool from_columns = true;        // false when completed from a nullspace vector
  std::size_t length() const { return vectors.size(); }
};

template <ExactField T>
struct ChainBasis {
  T eigenvalue;
  int multiplicity = 0;
  std::vector<Chain<T>> chains;
  /// True when the plain greedy pass over full column chains reached r.
  bool greedy_sufficient = true;
  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& c : chains) t += c.length();
    return t;
  }
};

struct Membership {
  bool is_member = false;
  int j0 = 0;
  std::vector<std::string> violations;
};

/// One chain per column whose column sequence is not identically zero,
/// truncated at the last nonzero entry; ordered by column.
template <ExactField T>
std::vector<Chain<T>> extract_column_chains(const ResolventPFD<T>& pfd, std::size_t block);

/// Smallest p >= 1 with (A - lambda I)^p v = 0.
template <ExactField T>
int generalized_rank(const Matrix<T>& a, const T& lambda, const Vector<T>& v);

/// Column-space membership of v in B_i1 and the largest j0 with
/// v in colspace(B_i1) ... colspace(B_ij0); violations list any j <= j0
/// whose column space misses v.
template <ExactField T>
Membership membership_check(const Matrix<T>& a, const ResolventPFD<T>& pfd, std::size_t block,
                            const Vector<T>& v);

/// Greedy selection over column chains sorted by (length desc, column asc).
/// If the column chains cannot realize a full basis, falls back to a
/// top-down Jordan construction preferring column vectors as chain heads.
template <ExactField T>
ChainBasis<T> select_chain_basis(const Matrix<T>& a, const ResolventPFD<T>& pfd, std::size_t block);

template <ExactField T>
bool is_valid_chain(const Matrix<T>& a, const Chain<T>& chain);

/// Chain invariants, chain counts against geometric multiplicity, totals
/// against algebraic multiplicity, and full rank of the union.
template <ExactField T>
Report verify_chain_bases(const Matrix<T>& a, const ResolventPFD<T>& pfd,
                          const std::vector<ChainBasis<T>>& bases);

}  // namespace matpfd
