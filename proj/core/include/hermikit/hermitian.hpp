#pragma once

#include <vector>

#include "hermikit/linalg.hpp"

namespace hermikit {

// A Hermitian matrix t together with the level N of the lattice (1/N) MatD_g(O_F)^dual
// it is expected to lie in.
struct FourierIndex {
  FMat t;
  long N = 1;
};

// Hermitian with integral (1/N) diagonal and N*t(i,j) in the inverse different.
bool is_dual_member(const FMat& t, long N, long D);

// entries in O_F
bool is_integral_matrix(const FMat& u);

// t = [[n, r^D], [r, m]] with m of size h.
struct IndexBlocks {
  FMat n, r, m;
};
IndexBlocks block_decompose(const FMat& t, std::size_t h);
FMat block_compose(const IndexBlocks& b);

// Two-way refinement used for cogenus transitions: with m of size h split
// as m = [[m1, *], [*, m']] where m' has size h', and n' the top-left block of
// size g - h'. Returns (n', r', m') for t viewed with cogenus h'.
IndexBlocks block_decompose_refined(const FMat& t, std::size_t h, std::size_t h_prime);

FMat elementary(std::size_t g, std::size_t i, std::size_t j, const FieldElem& r);
FMat permutation_swap(std::size_t g, std::size_t i, std::size_t j);

FieldElem det_f(const FMat& m);

// All g x g permutation matrices, identity first.
std::vector<FMat> permutation_matrices(std::size_t g);
// diag(u_1, ..., u_g) with units u_i and (u_1 ... u_g)^2 = 1, identity first.
std::vector<FMat> unit_diagonals(std::size_t g, long D);

// Z-realization of F^n on the basis e_1, w e_1, e_2, w e_2, ...:
// coordinates of x and the rational Gram matrix of (x, y) -> trace(x^D H y).
std::vector<Q> to_z_coords(const std::vector<FieldElem>& x);
std::vector<FieldElem> from_z_coords(const std::vector<Q>& c, long D);
QMat herm_z_gram(const FMat& H, long D);
// Matrix of multiplication by the scalar s on Z-coordinates.
QMat scalar_z_action(const FieldElem& s, std::size_t n, long D);

// x^D H y for column vectors
FieldElem herm_form(const FMat& H, const std::vector<FieldElem>& x, const std::vector<FieldElem>& y);

}  // namespace hermikit
