#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hermikit/linalg.hpp"

namespace hermikit {

using CMat = Matrix<std::complex<double>>;

// L^dual / L for an even Z-lattice with Gram matrix `gram`. Elements are
// residue vectors (a_1, ..., a_r), 0 <= a_i < d_i, standing for sum a_i g_i
// with generators g_i = V e_i / d_i taken from the Smith form of gram.
class DiscForm {
 public:
  DiscForm() = default;
  DiscForm(QMat gram, long signature);  // validates: even, nondegenerate

  const std::vector<long>& orders() const { return orders_; }  // d_1 | d_2 | ..., all > 1
  std::size_t card() const { return q_.size(); }
  long signature() const { return signature_; }  // of the Z-lattice
  const QMat& gram() const { return gram_; }
  const QMat& generators() const { return gens_; }  // columns g_i

  std::vector<long> element(std::size_t idx) const;
  std::size_t index(const std::vector<long>& a) const;
  // class of a dual vector given in lattice coordinates
  std::size_t index_of_vector(const std::vector<Q>& x) const;
  std::vector<Q> representative(std::size_t idx) const;

  std::size_t add(std::size_t i, std::size_t j) const;
  std::size_t neg(std::size_t i) const;
  std::size_t scale(long c, std::size_t i) const;

  const Q& q(std::size_t i) const { return q_[i]; }  // gram[x]/2 mod 1
  Q pairing(std::size_t i, std::size_t j) const;     // x^T gram y mod 1
  const std::vector<Q>& q_values() const { return q_; }

  // multiplication by omega on the group, when the lattice is an O_F-module
  bool has_omega() const { return omega_.has_value(); }
  long disc() const { return D_; }
  void set_omega_action(long D, const QMat& omega_on_coords);
  // b * mu for b in O_F (b rational integer when there is no omega action)
  std::size_t mul(const FieldElem& b, std::size_t i) const;

 private:
  QMat gram_, gens_, vinv_;
  std::vector<long> orders_;
  std::vector<Q> q_;
  long signature_ = 0;
  long D_ = 0;
  std::optional<std::vector<std::size_t>> omega_;  // omega * element i
};

DiscForm disc_from_gram(const QMat& gram);
// Z-realization tr(x^D G y) on the basis e_1, omega e_1, ...; signature 2 h.
DiscForm herm_disc(const FMat& G, long D);

enum class WeilTag { trans, rot, sinv1 };

struct WeilGenMatrix {
  CMat matrix;
  WeilTag tag;
};

// Basis e_mu of C[disc^g], mu = (mu_1, ..., mu_g) indexed by sum idx(mu_i) card^i.
std::size_t weil_dim(const DiscForm& df, std::size_t g);
std::vector<std::size_t> weil_components(const DiscForm& df, std::size_t g, std::size_t idx);
std::size_t weil_index(const DiscForm& df, const std::vector<std::size_t>& mu);

// Exact phases p with rho(trans(b)) e_mu = e(p_mu) e_mu:
// p = sum_i b_ii q(mu_i) + sum_{i<j} pairing(mu_j, b_ij mu_i).
std::vector<Q> trans_phases(const DiscForm& df, std::size_t g, const FMat& b);
WeilGenMatrix rho_trans(const DiscForm& df, std::size_t g, const FMat& b);

// rho(rot(a)) e_mu = sign e_{target}, with mu a^{-1} and sign det(conj a)^{sgn}, sgn = signature / 2.
struct SignedPermutation {
  std::vector<std::size_t> target;
  int sign = 1;
};
SignedPermutation rot_action(const DiscForm& df, std::size_t g, const FMat& a);
// (mu c)_j = sum_i c_ij mu_i for integral c
std::vector<std::size_t> act_right(const DiscForm& df, const std::vector<std::size_t>& mu, const FMat& c);
// det(conj a)^{signature/2} for det(a) = +-1
int rot_sign(const DiscForm& df, const FMat& a);
WeilGenMatrix rho_rot(const DiscForm& df, std::size_t g, const FMat& a);

// e(-signature/8) / sqrt(card) sum e(-pairing(mu_1, mu')) e_(mu', mu_2, ...)
WeilGenMatrix rho_sinv1(const DiscForm& df, std::size_t g);

std::complex<double> e_phase(const Q& p);
double unitarity_defect(const CMat& m);               // max |m m^* - I|
double max_abs_diff(const CMat& a, const CMat& b);

}  // namespace hermikit
