#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hermikit/cyclotomic.hpp"
#include "hermikit/jacgroup.hpp"
#include "hermikit/linalg.hpp"

namespace hermikit {

using IVec = std::vector<long>;

// Symmetric index with integral diagonal and half-integral off-diagonal entries.
class JacobiIndex {
 public:
  JacobiIndex() = default;
  explicit JacobiIndex(QMat m);  // validates
  const QMat& matrix() const { return m_; }
  std::size_t size() const { return m_.rows(); }
  bool psd() const { return psd_; }
  bool pd() const { return pd_; }
  bool is_diagonal() const;
  friend bool operator==(const JacobiIndex& x, const JacobiIndex& y) { return x.m_ == y.m_; }

 private:
  QMat m_;
  bool psd_ = true, pd_ = false;
};

// [[2n, r^T], [r, 2m]] positive semi-definite.
bool support_ok(long n, const IVec& r, const JacobiIndex& m);

// Truncated expansion sum c(n, r) q^n zeta^r. Complete for n <= n_max: every
// nonzero coefficient in that range is stored.
struct JacobiExpansion {
  using Key = std::pair<long, IVec>;

  int weight = 0;
  JacobiIndex index;
  long n_max = 0;
  std::map<Key, CycNum> coeffs;

  // Throws for n > n_max.
  CycNum coeff(long n, const IVec& r) const;
  // Accumulates; entries that become zero are erased.
  void add(long n, const IVec& r, const CycNum& c);
  bool holomorphic_support() const;
  // Coefficientwise comparison up to min of both truncations.
  bool agrees_with(const JacobiExpansion& o) const;
};

// nullopt is +infinity (the zero expansion).
std::optional<long> ord(const JacobiExpansion& phi);

// Terms with exponent below exp_max are complete.
struct QExpansion {
  std::map<Q, CycNum> terms;
  Q exp_max;

  // Smallest exponent below exp_max with nonzero coefficient, if any.
  std::optional<Q> certified_min_exponent() const;
};

// gram: even positive definite, rank 2k. vs: columns v_j, integral.
JacobiExpansion lattice_theta_jacobi(const QMat& gram, const QMat& vs, long n_max);

// phi[alpha, beta](tau) = e(m[alpha] tau + 2 alpha^T m beta) phi(tau, alpha tau + beta).
// Requires holomorphic support, which provides the exp_max bound.
QExpansion specialize(const JacobiExpansion& phi, const QVec& alpha, const QVec& beta);

// z -> s z', s integral h x h'.
JacobiExpansion elliptic_map(const JacobiExpansion& phi, const QMat& s);

// Random nonzero rationals, constant on classes (n - m^{-1}[r]/4, r mod 2m Z^h).
JacobiExpansion symmetrize_synthetic(const JacobiIndex& m, std::uint64_t seed, long n_max);

struct VoronoiData {
  JacobiIndex m;
  std::vector<QVec> extreme_points;  // sorted
};

// Diagonal m of any size, or h <= 2.
VoronoiData voronoi(const JacobiIndex& m);

// ord_phi - max{ m[s] - m[s + lambda + alpha] : s extreme, lambda integral }.
// For diagonal m and alpha in [0, 1]^h the closed form is cross-checked.
Q ord_lower_bound(long ord_phi, const JacobiIndex& m, const QVec& alpha);
// ord_phi - sum m_ii alpha_i (1 - alpha_i); diagonal m, alpha in [0, 1]^h.
Q ord_lower_bound_diagonal(long ord_phi, const JacobiIndex& m, const QVec& alpha);

// x^T m x
Q qform(const QMat& m, const QVec& x);

}  // namespace hermikit
