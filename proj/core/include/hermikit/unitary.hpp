#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hermikit/linalg.hpp"

namespace hermikit {

// 2g x 2g matrices over F acting on the Hermitian half space. Rows and
// columns are ordered as the blocks (a b; c d).
using UnitaryMatrix = FMat;

// (0 -1; 1 0) in g x g blocks
FMat su_form(std::size_t g);

// gamma^D J gamma = J and det gamma = 1
bool su_member(const FMat& gamma);
// additionally entries in O_F and gamma = 1 mod N O_F
bool su_member_integral(const FMat& gamma, long N = 1);

// J^{-1} gamma^D J; no membership check
FMat su_inverse(const FMat& gamma);

FMat make_trans(const FMat& b);
FMat make_rot(const FMat& a);
FMat make_sinv(std::size_t g);
// (0 -1; 1 0) in coordinates 0 and g, identity elsewhere
FMat make_sinv1(std::size_t g);
// rot((1 0; lambda 1)) trans((0 mu^D; mu 0)); lambda, mu are h x (g - h)
FMat make_transJU(const FMat& lambda, const FMat& mu);

// r at (i, j) and conj(r) at (j, i); r rational when i == j. Indices are 0-based.
FMat s_matrix(std::size_t i, std::size_t j, const FieldElem& r, std::size_t g);
// identity plus r at (i, j), i != j
FMat e_matrix(std::size_t i, std::size_t j, const FieldElem& r, std::size_t g);
// permutation matrix swapping coordinates 0 and i
FMat swap_matrix(std::size_t i, std::size_t g);

enum class ElementaryKind { trans, trans_adjoint, rot };

// trans(s_ij(r)), trans(s_ij(r))^D, rot(e_ji(r)); r must lie in O_F, and in Z for s_ii.
FMat elementary_unitary(ElementaryKind kind, std::size_t i, std::size_t j, const FieldElem& r, std::size_t g);

// sinv == sinv1 * prod_{i >= 1} rot(u_i) sinv1 rot(u_i)
bool verify_sinv_factorization(std::size_t g);
// trans(s_ij(r))^D == sinv^{-1} trans(s_ij(-r)) sinv
bool verify_trans_conjugation(std::size_t i, std::size_t j, const FieldElem& r, std::size_t g);

enum class ParabolicKind { P, Q };

// Pattern match against the Levi times unipotent factorization in blocks of
// sizes g - h, h, g - h, h. With `integral`, entries must also lie in O_F.
bool parabolic_member(const FMat& gamma, std::size_t h, ParabolicKind kind, bool integral = false);

// Shortest word w (indices into gens) with gens[w0] * gens[w1] * ... == target,
// by breadth-first search over words of length <= max_len. Length 0 means target is 1.
std::optional<std::vector<std::size_t>> word_search(const FMat& target, const std::vector<FMat>& gens,
                                                    std::size_t max_len);

struct IdentityCheck {
  std::string name;
  bool pass = false;
};

// sinv factorization, trans conjugation for r in {+-1, +-omega} and all index
// pairs, and su_member on every constructor output.
std::vector<IdentityCheck> identity_battery(long D, std::size_t g);

}  // namespace hermikit
