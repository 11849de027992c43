#pragma once

#include <stdexcept>
#include <vector>

#include "hermikit/field.hpp"
#include "hermikit/matrix.hpp"
#include "hermikit/rational.hpp"

namespace hermikit {

using QMat = Matrix<Q>;
using FMat = Matrix<FieldElem>;
using ZMat = Matrix<Z>;

inline Q conj(const Q& x) { return x; }

// Real value of a self-conjugate entry.
inline Q real_value(const Q& x) { return x; }
inline Q real_value(const FieldElem& x) {
  if (!x.is_rational()) throw std::domain_error("entry is not real");
  return x.a();
}

template <class T>
Matrix<T> adjoint(const Matrix<T>& m) {
  Matrix<T> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = conj(m(i, j));
  return t;
}

template <class T>
bool is_hermitian(const Matrix<T>& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (m(j, i) != conj(m(i, j))) return false;
  return true;
}

// x[y] = y^D x y
template <class T>
Matrix<T> act(const Matrix<T>& x, const Matrix<T>& y) {
  if (!x.is_square() || x.rows() != y.rows()) throw std::invalid_argument("act: dimension mismatch");
  return adjoint(y) * x * y;
}

template <class T>
T det(Matrix<T> m) {
  if (!m.is_square()) throw std::invalid_argument("det of non-square matrix");
  std::size_t n = m.rows();
  T d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == T(0)) ++p;
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    T inv = T(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == T(0)) continue;
      T f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == T(0)) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == T(0)) continue;
      T f = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

template <class T>
Matrix<T> inverse(Matrix<T> m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = m.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == T(0)) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    T s = T(1) / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == T(0)) continue;
      T f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// Positive semi-definiteness of a Hermitian (or real symmetric) matrix by
// symmetric Schur-complement elimination: m >= 0 iff some pivot m_pp > 0
// leaves a semi-definite complement, or m vanishes when all diagonals do.
template <class T>
bool is_psd(Matrix<T> m) {
  if (!is_hermitian(m)) throw std::invalid_argument("is_psd: not Hermitian");
  std::vector<std::size_t> act(m.rows());
  for (std::size_t i = 0; i < act.size(); ++i) act[i] = i;
  while (!act.empty()) {
    std::size_t piv = act.size();
    for (std::size_t k = 0; k < act.size(); ++k) {
      Q d = real_value(m(act[k], act[k]));
      if (d < 0) return false;
      if (d > 0 && piv == act.size()) piv = k;
    }
    if (piv == act.size()) {
      for (auto i : act)
        for (auto j : act)
          if (!(m(i, j) == T(0))) return false;
      return true;
    }
    std::size_t p = act[piv];
    act.erase(act.begin() + static_cast<long>(piv));
    T inv = T(1) / m(p, p);
    for (auto i : act) {
      if (m(i, p) == T(0)) continue;
      T f = m(i, p) * inv;
      for (auto j : act) m(i, j) -= f * m(p, j);
    }
  }
  return true;
}

template <class T>
bool is_pd(Matrix<T> m) {
  if (!is_hermitian(m)) throw std::invalid_argument("is_pd: not Hermitian");
  std::size_t n = m.rows();
  for (std::size_t p = 0; p < n; ++p) {
    if (real_value(m(p, p)) <= 0) return false;
    T inv = T(1) / m(p, p);
    for (std::size_t i = p + 1; i < n; ++i) {
      if (m(i, p) == T(0)) continue;
      T f = m(i, p) * inv;
      for (std::size_t j = p + 1; j < n; ++j) m(i, j) -= f * m(p, j);
    }
  }
  return true;
}

// (positive, negative, zero) counts of a real symmetric matrix.
struct Inertia {
  std::size_t pos = 0, neg = 0, zero = 0;
};
Inertia inertia(QMat m);

template <class T>
T trace(const Matrix<T>& m) {
  T s(0);
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) s += m(i, i);
  return s;
}

// Lift a rational matrix to matrix over F (entries rational).
inline FMat to_field(const QMat& m) {
  return map_entries(m, [](const Q& x) { return FieldElem(x); });
}

inline QMat to_rational(const ZMat& m) {
  return map_entries(m, [](const Z& x) { return Q(x); });
}

}  // namespace hermikit
