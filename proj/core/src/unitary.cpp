#include "hermikit/unitary.hpp"

#include <deque>
#include <map>
#include <stdexcept>

namespace hermikit {

namespace {

std::size_t half_size(const FMat& gamma) {
  if (!gamma.is_square() || gamma.rows() % 2) throw std::invalid_argument("unitary matrix must be 2g x 2g");
  return gamma.rows() / 2;
}

bool integral_entries(const FMat& m) {
  for (auto& x : m.data())
    if (!x.is_integral()) return false;
  return true;
}

bool is_identity(const FMat& m) { return m == FMat::identity(m.rows()); }

}  // namespace

FMat su_form(std::size_t g) {
  FMat J(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    J(i, g + i) = -1;
    J(g + i, i) = 1;
  }
  return J;
}

bool su_member(const FMat& gamma) {
  if (!gamma.is_square() || gamma.rows() % 2) return false;
  std::size_t g = gamma.rows() / 2;
  FMat J = su_form(g);
  if (adjoint(gamma) * J * gamma != J) return false;
  return det(gamma) == FieldElem(1);
}

bool su_member_integral(const FMat& gamma, long N) {
  if (N < 1) throw std::invalid_argument("level must be positive");
  if (!su_member(gamma) || !integral_entries(gamma)) return false;
  FMat d = gamma - FMat::identity(gamma.rows());
  d *= FieldElem(make_q(1, N));
  return integral_entries(d);
}

FMat su_inverse(const FMat& gamma) {
  std::size_t g = half_size(gamma);
  FMat J = su_form(g);
  return -(J * adjoint(gamma) * J);
}

FMat make_trans(const FMat& b) {
  if (!is_hermitian(b)) throw std::invalid_argument("trans: b must be Hermitian");
  std::size_t g = b.rows();
  FMat m = FMat::identity(2 * g);
  m.set_block(0, g, b);
  return m;
}

FMat make_rot(const FMat& a) {
  if (!a.is_square()) throw std::invalid_argument("rot: a must be square");
  FieldElem d = det(a);
  if (d * d != FieldElem(1)) throw std::invalid_argument("rot: det(a)^2 != 1");
  return block_diag(a, inverse(adjoint(a)));
}

FMat make_sinv(std::size_t g) { return su_form(g); }

FMat make_sinv1(std::size_t g) {
  if (g == 0) throw std::invalid_argument("sinv1 needs g >= 1");
  FMat m = FMat::identity(2 * g);
  m(0, 0) = 0;
  m(g, g) = 0;
  m(0, g) = -1;
  m(g, 0) = 1;
  return m;
}

FMat make_transJU(const FMat& lambda, const FMat& mu) {
  if (lambda.rows() != mu.rows() || lambda.cols() != mu.cols())
    throw std::invalid_argument("transJU: lambda and mu differ in shape");
  std::size_t h = lambda.rows(), n = lambda.cols(), g = h + n;
  FMat u = FMat::identity(g);
  u.set_block(n, 0, lambda);
  FMat b(g, g);
  b.set_block(0, n, adjoint(mu));
  b.set_block(n, 0, mu);
  return make_rot(u) * make_trans(b);
}

FMat s_matrix(std::size_t i, std::size_t j, const FieldElem& r, std::size_t g) {
  if (i >= g || j >= g) throw std::out_of_range("s_matrix index");
  if (i == j && !r.is_rational()) throw std::invalid_argument("s_ii(r) needs r rational");
  FMat m(g, g);
  m(i, j) += r;
  if (i != j) m(j, i) += conj(r);
  return m;
}

FMat e_matrix(std::size_t i, std::size_t j, const FieldElem& r, std::size_t g) {
  if (i >= g || j >= g) throw std::out_of_range("e_matrix index");
  if (i == j) throw std::invalid_argument("e_matrix needs i != j");
  FMat m = FMat::identity(g);
  m(i, j) = r;
  return m;
}

FMat swap_matrix(std::size_t i, std::size_t g) {
  if (i >= g) throw std::out_of_range("swap_matrix index");
  FMat m = FMat::identity(g);
  if (i == 0) return m;
  m(0, 0) = m(i, i) = 0;
  m(0, i) = m(i, 0) = 1;
  return m;
}

FMat elementary_unitary(ElementaryKind kind, std::size_t i, std::size_t j, const FieldElem& r, std::size_t g) {
  if (!r.is_integral()) throw std::invalid_argument("elementary_unitary: r must lie in O_F");
  switch (kind) {
    case ElementaryKind::trans:
      return make_trans(s_matrix(i, j, r, g));
    case ElementaryKind::trans_adjoint:
      return adjoint(make_trans(s_matrix(i, j, r, g)));
    case ElementaryKind::rot:
      return make_rot(e_matrix(j, i, r, g));
  }
  throw std::invalid_argument("elementary_unitary: unknown kind");
}

bool verify_sinv_factorization(std::size_t g) {
  if (g == 0) throw std::invalid_argument("g must be positive");
  FMat s1 = make_sinv1(g);
  FMat p = s1;
  for (std::size_t i = 1; i < g; ++i) {
    FMat u = make_rot(swap_matrix(i, g));
    p = p * u * s1 * u;
  }
  return p == make_sinv(g);
}

bool verify_trans_conjugation(std::size_t i, std::size_t j, const FieldElem& r, std::size_t g) {
  FMat lhs = adjoint(make_trans(s_matrix(i, j, r, g)));
  FMat s = make_sinv(g);
  FMat rhs = su_inverse(s) * make_trans(s_matrix(i, j, -r, g)) * s;
  return lhs == rhs;
}

bool parabolic_member(const FMat& gamma, std::size_t h, ParabolicKind kind, bool integral) {
  if (!gamma.is_square() || gamma.rows() % 2) return false;
  std::size_t g = gamma.rows() / 2;
  if (h > g) throw std::invalid_argument("parabolic_member: h > g");
  if (!su_member(gamma)) return false;
  if (integral && !integral_entries(gamma)) return false;
  std::size_t n = g - h;
  // block starts: 0 | n | g | g + n
  const std::size_t o1 = 0, o2 = n, o3 = g, o4 = g + n;
  auto blk = [&](std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) { return gamma.block(r0, c0, nr, nc); };
  if (!blk(o1, n, o2, h).is_zero() || !blk(o3, n, o2, h).is_zero()) return false;
  if (!blk(o4, h, o1, n).is_zero() || !blk(o4, h, o2, h).is_zero() || !blk(o4, h, o3, n).is_zero()) return false;

  FMat u = blk(o2, h, o2, h);
  FieldElem du = det(u);
  if (du * du != FieldElem(1)) return false;
  if (blk(o4, h, o4, h) != inverse(adjoint(u))) return false;
  if (kind == ParabolicKind::Q && !is_identity(u)) return false;

  FMat a = blk(o1, n, o1, n), b = blk(o1, n, o3, n), c = blk(o3, n, o1, n), d = blk(o3, n, o3, n);
  if (n > 0) {
    FMat inner(2 * n, 2 * n);
    inner.set_block(0, 0, a);
    inner.set_block(0, n, b);
    inner.set_block(n, 0, c);
    inner.set_block(n, n, d);
    if (!su_member(inner)) return false;
  }
  FMat ui = inverse(u);
  FMat lambda = ui * blk(o2, h, o1, n), mu = ui * blk(o2, h, o3, n), kappa = ui * blk(o2, h, o4, h);
  if (blk(o1, n, o4, h) != a * adjoint(mu) - b * adjoint(lambda)) return false;
  if (blk(o3, n, o4, h) != c * adjoint(mu) - d * adjoint(lambda)) return false;
  return is_hermitian(kappa - lambda * adjoint(mu));
}

std::optional<std::vector<std::size_t>> word_search(const FMat& target, const std::vector<FMat>& gens,
                                                    std::size_t max_len) {
  if (gens.empty()) {
    if (target.is_square() && is_identity(target)) return std::vector<std::size_t>{};
    return std::nullopt;
  }
  FMat one = FMat::identity(gens.front().rows());
  if (target == one) return std::vector<std::size_t>{};
  // parent links: element -> (previous element, generator)
  std::map<FMat, std::pair<FMat, std::size_t>> seen;
  seen.emplace(one, std::make_pair(one, gens.size()));
  std::vector<FMat> frontier{one};
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<FMat> next;
    for (auto& x : frontier)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        FMat y = x * gens[k];
        if (seen.count(y)) continue;
        seen.emplace(y, std::make_pair(x, k));
        if (y == target) {
          std::deque<std::size_t> w;
          FMat cur = y;
          while (cur != one) {
            auto& [prev, gk] = seen.at(cur);
            w.push_front(gk);
            cur = prev;
          }
          return std::vector<std::size_t>(w.begin(), w.end());
        }
        next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return std::nullopt;
}

std::vector<IdentityCheck> identity_battery(long D, std::size_t g) {
  if (!is_field_discriminant(D)) throw std::invalid_argument("not a field discriminant");
  std::vector<IdentityCheck> out;
  out.push_back({"sinv factorization g=" + std::to_string(g), verify_sinv_factorization(g)});
  const FieldElem w = FieldElem::omega(D);
  const std::vector<std::pair<std::string, FieldElem>> rs = {{"1", 1}, {"-1", -1}, {"omega", w}, {"-omega", -w}};
  for (auto& [rn, r] : rs)
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) {
        if (i == j && !r.is_rational()) continue;
        std::string tag = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") r=" + rn;
        out.push_back({"trans conjugation " + tag, verify_trans_conjugation(i, j, r, g)});
        bool members = su_member(elementary_unitary(ElementaryKind::trans, i, j, r, g)) &&
                       su_member(elementary_unitary(ElementaryKind::trans_adjoint, i, j, r, g));
        if (i != j) members = members && su_member(elementary_unitary(ElementaryKind::rot, i, j, r, g));
        out.push_back({"elementary members " + tag, members});
      }
  bool cons = su_member(make_sinv(g)) && su_member(make_sinv1(g));
  for (std::size_t i = 0; i < g; ++i) cons = cons && su_member(make_rot(swap_matrix(i, g)));
  for (std::size_t h = 1; h < g; ++h) {
    FMat lam(h, g - h), mu(h, g - h);
    for (std::size_t p = 0; p < h; ++p)
      for (std::size_t q = 0; q < g - h; ++q) {
        lam(p, q) = (p + q) % 2 ? w : FieldElem(1);
        mu(p, q) = (p + q) % 2 ? FieldElem(-1) : -w;
      }
    FMat t = make_transJU(lam, mu);
    cons = cons && su_member(t) && parabolic_member(t, h, ParabolicKind::Q, true);
  }
  out.push_back({"constructors in SU(g,g)", cons});
  return out;
}

}  // namespace hermikit
