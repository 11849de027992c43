#pragma once

#include <vector>

#include "hermikit/hermitian.hpp"

namespace hermikit {

// Strict lexicographic order on equal-length tuples.
bool prec(const std::vector<Q>& a, const std::vector<Q>& b);
// Same order on the sorted diagonals of two Hermitian matrices.
bool prec(const FMat& a, const FMat& b);

std::vector<Q> sorted_diagonal(const FMat& m);

// Total order used to pick reduced representatives: sorted diagonal by prec,
// then entries row-major by their (a, b) coordinates.
bool reduction_key_less(const FMat& a, const FMat& b);

// max over i < j of |m_ij|^2 / (m_ii + 1)^2
Q entry_ratio(const FMat& m);

struct ReducedCertificate {
  FMat m_red;
  FMat u;  // m_red = m[u]
  int search_bound = 0;
  Q entry_constant;  // entry_ratio(m_red)
  std::size_t states = 0;
};

// Word generators for GL_h(O_F) with det^2 = 1: transpositions, unit diagonals
// and elementary e_ij(r) for r in {+-1, +-omega}.
std::vector<FMat> reduction_generators(std::size_t h, long D);

int default_search_bound(std::size_t h);

// Breadth-first orbit search over words of length <= bound; the minimum over all
// visited matrices (and their diagonal-sorting permutations and unit rescalings)
// under reduction_key_less. bound < 0 picks default_search_bound.
ReducedCertificate reduce(const FMat& m, long D, int bound = -1);

bool is_reduced(const FMat& m, long D, int bound = -1);

// Reduced positive semi-definite matrices in MatD_h(O_F)^dual with the given
// ascending diagonal, h <= 3.
std::vector<FMat> enumerate_M(const std::vector<long>& diag, long D, int bound = -1);

// prod_i max(1, m_i)^(2h - 2i), i = 1..h
Q enumeration_shape(const std::vector<long>& diag);

}  // namespace hermikit
