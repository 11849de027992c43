#include "hermikit/intmat.hpp"

#include <stdexcept>

namespace hermikit {

namespace {

// g = s*a + t*b
void xgcd(const Z& a, const Z& b, Z& g, Z& s, Z& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

void swap_rows(ZMat& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(i, k), m(j, k));
}

void swap_cols(ZMat& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < m.rows(); ++k) std::swap(m(k, i), m(k, j));
}

// Columns (ci, cj) <- (s ci + t cj, -b/g ci + a/g cj)
void combine_cols(ZMat& m, std::size_t ci, std::size_t cj, const Z& s, const Z& t, const Z& u,
                  const Z& v) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    Z x = m(k, ci), y = m(k, cj);
    m(k, ci) = s * x + t * y;
    m(k, cj) = u * x + v * y;
  }
}

void combine_rows(ZMat& m, std::size_t ri, std::size_t rj, const Z& s, const Z& t, const Z& u,
                  const Z& v) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    Z x = m(ri, k), y = m(rj, k);
    m(ri, k) = s * x + t * y;
    m(rj, k) = u * x + v * y;
  }
}

}  // namespace

std::vector<Z> SmithForm::diagonal() const {
  std::vector<Z> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SmithForm smith_normal_form(const ZMat& A) {
  std::size_t m = A.rows(), n = A.cols();
  SmithForm f{ZMat::identity(m), A, ZMat::identity(n)};
  ZMat& S = f.S;
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    // pivot: smallest nonzero absolute value in the trailing block
    bool again = true;
    while (again) {
      again = false;
      std::size_t pi = m, pj = n;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (S(i, j) != 0 && (pi == m || abs(S(i, j)) < abs(S(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return f;
      swap_rows(S, k, pi);
      swap_rows(f.U, k, pi);
      swap_cols(S, k, pj);
      swap_cols(f.V, k, pj);
      for (std::size_t i = k + 1; i < m; ++i) {
        if (S(i, k) == 0) continue;
        if (S(i, k) % S(k, k) == 0) {
          Z q = S(i, k) / S(k, k);
          combine_rows(S, k, i, 1, 0, -q, 1);
          combine_rows(f.U, k, i, 1, 0, -q, 1);
          continue;
        }
        Z g, s, t;
        xgcd(S(k, k), S(i, k), g, s, t);
        Z a = S(k, k) / g, b = S(i, k) / g;
        combine_rows(S, k, i, s, t, -b, a);
        combine_rows(f.U, k, i, s, t, -b, a);
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (S(k, j) == 0) continue;
        if (S(k, j) % S(k, k) == 0) {
          Z q = S(k, j) / S(k, k);
          combine_cols(S, k, j, 1, 0, -q, 1);
          combine_cols(f.V, k, j, 1, 0, -q, 1);
          continue;
        }
        Z g, s, t;
        xgcd(S(k, k), S(k, j), g, s, t);
        Z a = S(k, k) / g, b = S(k, j) / g;
        combine_cols(S, k, j, s, t, -b, a);
        combine_cols(f.V, k, j, s, t, -b, a);
      }
      for (std::size_t i = k + 1; i < m && !again; ++i)
        if (S(i, k) != 0) again = true;
      if (again) continue;
      // divisibility: fold any entry not divisible by the pivot into row k
      for (std::size_t i = k + 1; i < m && !again; ++i)
        for (std::size_t j = k + 1; j < n && !again; ++j)
          if (S(i, j) % S(k, k) != 0) {
            for (std::size_t c = 0; c < n; ++c) S(k, c) += S(i, c);
            for (std::size_t c = 0; c < m; ++c) f.U(k, c) += f.U(i, c);
            again = true;
          }
    }
    if (S(k, k) < 0) {
      for (std::size_t c = 0; c < n; ++c) S(k, c) = -S(k, c);
      for (std::size_t c = 0; c < m; ++c) f.U(k, c) = -f.U(k, c);
    }
  }
  return f;
}

ColumnHermite column_hermite(const ZMat& A) {
  std::size_t m = A.rows(), n = A.cols();
  ColumnHermite hf{A, ZMat::identity(n), 0};
  ZMat& H = hf.H;
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    for (std::size_t j = c + 1; j < n; ++j) {
      if (H(i, j) == 0) continue;
      if (H(i, c) == 0) {
        swap_cols(H, c, j);
        swap_cols(hf.U, c, j);
        continue;
      }
      Z g, s, t;
      xgcd(H(i, c), H(i, j), g, s, t);
      Z a = H(i, c) / g, b = H(i, j) / g;
      combine_cols(H, c, j, s, t, -b, a);
      combine_cols(hf.U, c, j, s, t, -b, a);
    }
    if (H(i, c) == 0) continue;
    if (H(i, c) < 0) {
      for (std::size_t k = 0; k < m; ++k) H(k, c) = -H(k, c);
      for (std::size_t k = 0; k < n; ++k) hf.U(k, c) = -hf.U(k, c);
    }
    for (std::size_t j = 0; j < c; ++j) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(i, c).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k < m; ++k) H(k, j) -= q * H(k, c);
      for (std::size_t k = 0; k < n; ++k) hf.U(k, j) -= q * hf.U(k, c);
    }
    ++c;
  }
  hf.rank = c;
  return hf;
}

std::vector<Z> reduce_mod_hermite(const ColumnHermite& hf, std::vector<Z> v) {
  const ZMat& H = hf.H;
  if (v.size() != H.rows()) throw std::invalid_argument("reduce_mod_hermite: length mismatch");
  std::size_t row = 0;
  for (std::size_t c = 0; c < hf.rank; ++c) {
    while (H(row, c) == 0) ++row;
    Z q;
    mpz_fdiv_q(q.get_mpz_t(), v[row].get_mpz_t(), H(row, c).get_mpz_t());
    if (q != 0)
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= q * H(k, c);
  }
  return v;
}

ZMat to_integer(const QMat& m) {
  ZMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw std::invalid_argument("matrix entry is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

Z det_z(const ZMat& m) {
  Q d = det(to_rational(m));
  return d.get_num();
}

Inertia inertia(QMat m) {
  if (!is_hermitian(m)) throw std::invalid_argument("inertia: not symmetric");
  Inertia r;
  std::vector<std::size_t> act(m.rows());
  for (std::size_t i = 0; i < act.size(); ++i) act[i] = i;
  while (!act.empty()) {
    std::size_t piv = act.size();
    for (std::size_t k = 0; k < act.size(); ++k)
      if (m(act[k], act[k]) != 0) {
        piv = k;
        break;
      }
    if (piv == act.size()) {
      // all diagonals zero: e_i <- e_i + e_j creates the diagonal 2 m_ij
      bool found = false;
      for (std::size_t a = 0; a < act.size() && !found; ++a)
        for (std::size_t b = a + 1; b < act.size() && !found; ++b) {
          std::size_t i = act[a], j = act[b];
          if (m(i, j) == 0) continue;
          for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) += m(j, k);
          for (std::size_t k = 0; k < m.rows(); ++k) m(k, i) += m(k, j);
          piv = a;
          found = true;
        }
      if (!found) {
        r.zero += act.size();
        break;
      }
    }
    std::size_t p = act[piv];
    act.erase(act.begin() + static_cast<long>(piv));
    if (m(p, p) > 0)
      ++r.pos;
    else
      ++r.neg;
    Q inv = 1 / m(p, p);
    for (auto i : act) {
      if (m(i, p) == 0) continue;
      Q f = m(i, p) * inv;
      for (auto j : act) m(i, j) -= f * m(p, j);
      m(i, p) = 0;
    }
    for (auto j : act) m(p, j) = 0;
  }
  return r;
}

}  // namespace hermikit
