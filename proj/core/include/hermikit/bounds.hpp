#pragma once

#include <map>
#include <vector>

#include "hermikit/jacobi.hpp"
#include "hermikit/linalg.hpp"

namespace hermikit {

// forces_zero iff lhs > rhs.
struct VanishVerdict {
  bool forces_zero = false;
  Q lhs, rhs;
  long rank_used = 0;
};

// gamma_r^r for r <= 8.
struct HermiteTable {
  std::map<long, Q> gamma_pow;
  static HermiteTable classical();
};

// nu^{h+1} / (2^{h+1} h^h) > (k/12) prod m_ii
VanishVerdict vanish_diag(long k, const std::vector<long>& diag, long nu);
// rank r of m in place of h, product over nonzero diagonal entries
VanishVerdict vanish_general(long k, const JacobiIndex& m, long nu);
// rhs gamma_r^r (k/12) pdet(m)
VanishVerdict vanish_basis_independent(long k, const JacobiIndex& m, long nu,
                                       const HermiteTable& table = HermiteTable::classical());

// det(m') for m[u] = diag(m', 0), u unimodular; 1 for m = 0.
Q pdet(const JacobiIndex& m);
// m' and u with u^T m u = diag(m', 0)
struct KernelSplit {
  QMat m_prime;
  ZMat u;
};
KernelSplit split_kernel(const JacobiIndex& m);

// 2 / (3 sqrt 3) <= this
Q skoruppa_majorant();
// (k/2 - h/4 - 1/2 + 1/4 + c + 1/2) det(2m) with c the majorant; k >= 2 + h/2.
Q dim_upper_skoruppa_value(long k, const JacobiIndex& m);
// its floor
long dim_upper_skoruppa(long k, const JacobiIndex& m);

// m_F[(x; y)] = m[x + y omega]
JacobiIndex herm_to_elliptic_index(const FMat& m, long D);
// nu^{2r+1} / (2^{4r+1} r^{2r}) > (D(D-1)/4)^r (k/12) prod m_ii^2
VanishVerdict herm_vanish(long k, const FMat& m, long nu, long D);
// Skoruppa bound for the invertible part of m_F; k >= 2 + h.
long herm_dim_upper(long k, const FMat& m, long D);

// Integral of (nu - sum w_i x_i) over {x in [0,1]^h : sum w_i x_i <= nu}; h <= 3.
Q cut_simplex_integral(const Q& nu, const std::vector<Q>& weights);
// integral >= nu / (2^{h+1} h^h) prod nu / w_i
bool check_lower(const Q& nu, const std::vector<Q>& weights);

// sum ords > k #ords / 12
bool accumulated_criterion(long k, const std::vector<Q>& ords);
// prod p_i (p_i - 1) nu / (2^{h+1} h^h) prod nu / m_ii > (k/12) prod (p_i^2 - 1)
bool prime_tuple_criterion(long k, const std::vector<long>& diag, long nu, const std::vector<long>& primes);

}  // namespace hermikit
