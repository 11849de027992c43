#pragma once

#include <vector>

#include "hermikit/linalg.hpp"

namespace hermikit {

struct SmithForm {
  ZMat U, S, V;  // U * A * V = S, S diagonal with S(i,i) | S(i+1,i+1), U and V unimodular
  std::vector<Z> diagonal() const;
};

SmithForm smith_normal_form(const ZMat& A);

// Column-style Hermite form: A * U = H where H is in column echelon form
// (pivot of column j strictly below the pivot of column j-1, positive, and the
// entries to the left of a pivot reduced into [0, pivot)). Zero columns last.
struct ColumnHermite {
  ZMat H, U;
  std::size_t rank;
};
ColumnHermite column_hermite(const ZMat& A);

// Reduce v modulo the lattice spanned by the columns of a column Hermite
// form, giving the canonical representative of its coset.
std::vector<Z> reduce_mod_hermite(const ColumnHermite& hf, std::vector<Z> v);

// Integer matrix from a rational one when all entries are integral.
ZMat to_integer(const QMat& m);

Z det_z(const ZMat& m);

}  // namespace hermikit
