#include "hermikit/hermitian.hpp"

#include <algorithm>
#include <stdexcept>

namespace hermikit {

bool is_dual_member(const FMat& t, long N, long D) {
  if (!is_hermitian(t)) return false;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (!t(i, i).is_rational() || !is_integer(t(i, i).a() * N)) return false;
    for (std::size_t j = i + 1; j < t.cols(); ++j)
      if (!in_inverse_different(t(i, j) * FieldElem(N), D)) return false;
  }
  return true;
}

bool is_integral_matrix(const FMat& u) {
  for (auto& x : u.data())
    if (!x.is_integral()) return false;
  return true;
}

IndexBlocks block_decompose(const FMat& t, std::size_t h) {
  if (!t.is_square() || h > t.rows()) throw std::out_of_range("block_decompose: h out of range");
  std::size_t b = t.rows() - h;
  return {t.block(0, 0, b, b), t.block(b, 0, h, b), t.block(b, b, h, h)};
}

FMat block_compose(const IndexBlocks& b) {
  std::size_t g = b.n.rows() + b.m.rows();
  FMat t(g, g);
  t.set_block(0, 0, b.n);
  t.set_block(b.n.rows(), 0, b.r);
  t.set_block(0, b.n.rows(), adjoint(b.r));
  t.set_block(b.n.rows(), b.n.rows(), b.m);
  return t;
}

IndexBlocks block_decompose_refined(const FMat& t, std::size_t h, std::size_t h_prime) {
  if (h_prime > h || h > t.rows()) throw std::out_of_range("block_decompose_refined: sizes");
  return block_decompose(t, h_prime);
}

FMat elementary(std::size_t g, std::size_t i, std::size_t j, const FieldElem& r) {
  if (i == j || i >= g || j >= g) throw std::invalid_argument("elementary: bad position");
  FMat e = FMat::identity(g);
  e(i, j) = r;
  return e;
}

FMat permutation_swap(std::size_t g, std::size_t i, std::size_t j) {
  FMat p = FMat::identity(g);
  if (i == j) return p;
  p(i, i) = 0;
  p(j, j) = 0;
  p(i, j) = 1;
  p(j, i) = 1;
  return p;
}

FieldElem det_f(const FMat& m) { return det(m); }

std::vector<FMat> permutation_matrices(std::size_t g) {
  std::vector<std::size_t> p(g);
  for (std::size_t i = 0; i < g; ++i) p[i] = i;
  std::vector<FMat> out;
  do {
    FMat m(g, g);
    for (std::size_t i = 0; i < g; ++i) m(p[i], i) = 1;
    out.push_back(m);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<FMat> unit_diagonals(std::size_t g, long D) {
  auto us = units(D);
  std::vector<FMat> out;
  std::vector<std::size_t> idx(g, 0);
  while (true) {
    FieldElem prod(1);
    std::vector<FieldElem> d(g);
    for (std::size_t i = 0; i < g; ++i) {
      d[i] = us[idx[i]];
      prod *= d[i];
    }
    if (prod * prod == FieldElem(1)) out.push_back(FMat::diagonal(d));
    std::size_t k = 0;
    while (k < g && ++idx[k] == us.size()) idx[k++] = 0;
    if (k == g) break;
  }
  return out;
}

std::vector<Q> to_z_coords(const std::vector<FieldElem>& x) {
  std::vector<Q> c;
  c.reserve(2 * x.size());
  for (auto& e : x) {
    c.push_back(e.a());
    c.push_back(e.b());
  }
  return c;
}

std::vector<FieldElem> from_z_coords(const std::vector<Q>& c, long D) {
  if (c.size() % 2) throw std::invalid_argument("from_z_coords: odd length");
  std::vector<FieldElem> x;
  for (std::size_t i = 0; i < c.size(); i += 2) x.emplace_back(D, c[i], c[i + 1]);
  return x;
}

QMat herm_z_gram(const FMat& H, long D) {
  std::size_t n = H.rows();
  QMat G(2 * n, 2 * n);
  FieldElem w = FieldElem::omega(D);
  auto basis = [&](std::size_t p) { return (p % 2) ? w : FieldElem(1); };
  for (std::size_t p = 0; p < 2 * n; ++p)
    for (std::size_t q = 0; q < 2 * n; ++q)
      G(p, q) = (basis(p).conj() * H(p / 2, q / 2) * basis(q)).trace();
  return G;
}

QMat scalar_z_action(const FieldElem& s, std::size_t n, long D) {
  // (a + b w) s in coordinates; column p is the image of basis vector p
  QMat M(2 * n, 2 * n);
  FieldElem w = FieldElem::omega(D);
  FieldElem s1 = s, sw = s * w;
  for (std::size_t i = 0; i < n; ++i) {
    M(2 * i, 2 * i) = s1.a();
    M(2 * i + 1, 2 * i) = s1.b();
    M(2 * i, 2 * i + 1) = sw.a();
    M(2 * i + 1, 2 * i + 1) = sw.b();
  }
  return M;
}

FieldElem herm_form(const FMat& H, const std::vector<FieldElem>& x, const std::vector<FieldElem>& y) {
  FieldElem s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    FieldElem row;
    for (std::size_t j = 0; j < y.size(); ++j) row += H(i, j) * y[j];
    s += x[i].conj() * row;
  }
  return s;
}

}  // namespace hermikit
