#include "hermikit/bounds.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hermikit/hermitian.hpp"
#include "hermikit/intmat.hpp"

namespace hermikit {

namespace {

// r^r with 0^0 = 1
Q self_pow(long r) { return pow_q(Q(r), static_cast<unsigned long>(r)); }

VanishVerdict verdict(Q lhs, Q rhs, long rank) {
  VanishVerdict v;
  v.forces_zero = lhs > rhs;
  v.lhs = std::move(lhs);
  v.rhs = std::move(rhs);
  v.rank_used = rank;
  return v;
}

// nu^{r+1} / (2^{r+1} r^r)
Q elliptic_lhs(long nu, long r) {
  return pow_q(Q(nu), static_cast<unsigned long>(r + 1)) / (pow_q(Q(2), static_cast<unsigned long>(r + 1)) * self_pow(r));
}

Z denominator_lcm(const QMat& m) {
  Z l = 1;
  for (auto& x : m.data()) l = lcm(l, x.get_den());
  return l;
}

}  // namespace

HermiteTable HermiteTable::classical() {
  HermiteTable t;
  t.gamma_pow = {{0, 1}, {1, 1}, {2, make_q(4, 3)}, {3, 2}, {4, 4}, {5, 8}, {6, make_q(64, 3)}, {7, 64}, {8, 256}};
  return t;
}

VanishVerdict vanish_diag(long k, const std::vector<long>& diag, long nu) {
  if (nu < 0) throw std::invalid_argument("vanish_diag: negative nu");
  Q prod = 1;
  for (long d : diag) {
    if (d < 1) throw std::invalid_argument("vanish_diag: diagonal entries must be positive");
    prod *= d;
  }
  long h = static_cast<long>(diag.size());
  return verdict(elliptic_lhs(nu, h), Q(k) / 12 * prod, h);
}

VanishVerdict vanish_general(long k, const JacobiIndex& m, long nu) {
  if (!m.psd()) throw std::invalid_argument("vanish_general: index not positive semi-definite");
  long r = static_cast<long>(rank(m.matrix()));
  Q prod = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.matrix()(i, i) != 0) prod *= m.matrix()(i, i);
  return verdict(elliptic_lhs(nu, r), Q(k) / 12 * prod, r);
}

VanishVerdict vanish_basis_independent(long k, const JacobiIndex& m, long nu, const HermiteTable& table) {
  if (!m.psd()) throw std::invalid_argument("vanish_basis_independent: index not positive semi-definite");
  long r = static_cast<long>(rank(m.matrix()));
  auto it = table.gamma_pow.find(r);
  if (it == table.gamma_pow.end()) throw std::out_of_range("vanish_basis_independent: no Hermite constant for rank " + std::to_string(r));
  return verdict(elliptic_lhs(nu, r), it->second * k / 12 * pdet(m), r);
}

KernelSplit split_kernel(const JacobiIndex& m) {
  if (!m.psd()) throw std::invalid_argument("split_kernel: index not positive semi-definite");
  std::size_t h = m.size();
  if (h == 0) return {QMat(), ZMat()};
  Z l = denominator_lcm(m.matrix());
  SmithForm sf = smith_normal_form(to_integer(m.matrix() * Q(l)));
  std::size_t r = 0;
  while (r < h && sf.S(r, r) != 0) ++r;
  QMat u = to_rational(sf.V);
  QMat mu = u.transpose() * m.matrix() * u;
  return {mu.block(0, 0, r, r), sf.V};
}

Q pdet(const JacobiIndex& m) { return det(split_kernel(m).m_prime); }

Q skoruppa_majorant() { return make_q(7699, 20000); }

Q dim_upper_skoruppa_value(long k, const JacobiIndex& m) {
  if (!m.pd()) throw std::invalid_argument("dim_upper_skoruppa: index not positive definite");
  long h = static_cast<long>(m.size());
  if (2 * k < 4 + h) throw std::invalid_argument("dim_upper_skoruppa: weight below 2 + h/2");
  Q d2 = det(m.matrix() * Q(2));
  Q coeff = Q(k) / 2 - Q(h) / 4 - make_q(1, 2) + make_q(1, 4) + skoruppa_majorant() + make_q(1, 2);
  return coeff * d2;
}

long dim_upper_skoruppa(long k, const JacobiIndex& m) { return to_long(floor_q(dim_upper_skoruppa_value(k, m))); }

JacobiIndex herm_to_elliptic_index(const FMat& m, long D) {
  if (!is_dual_member(m, 1, D)) throw std::invalid_argument("herm_to_elliptic_index: index not in the dual lattice");
  std::size_t h = m.rows();
  FieldElem w = FieldElem::omega(D);
  Q wn = w.norm();
  QMat f(2 * h, 2 * h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      f(i, j) = m(i, j).trace() / 2;
      f(i, h + j) = (m(i, j) * w).trace() / 2;
      f(h + j, i) = f(i, h + j);
      f(h + i, h + j) = wn * m(i, j).trace() / 2;
    }
  return JacobiIndex(f);
}

VanishVerdict herm_vanish(long k, const FMat& m, long nu, long D) {
  if (!is_psd(m)) throw std::invalid_argument("herm_vanish: index not positive semi-definite");
  long r = static_cast<long>(rank(m));
  Q prod = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Q d = real_value(m(i, i));
    if (d != 0) prod *= d * d;
  }
  auto ur = static_cast<unsigned long>(r);
  Q lhs = pow_q(Q(nu), 2 * ur + 1) / (pow_q(Q(2), 4 * ur + 1) * pow_q(Q(r), 2 * ur));
  Q rhs = pow_q(make_q(D * D - D, 4), ur) * k / 12 * prod;
  return verdict(lhs, rhs, r);
}

long herm_dim_upper(long k, const FMat& m, long D) {
  if (!is_psd(m)) throw std::invalid_argument("herm_dim_upper: index not positive semi-definite");
  long h = static_cast<long>(m.rows());
  if (k < 2 + h) throw std::invalid_argument("herm_dim_upper: weight below 2 + h");
  return dim_upper_skoruppa(k, JacobiIndex(split_kernel(herm_to_elliptic_index(m, D)).m_prime));
}

namespace {

using Poly = std::vector<Q>;  // constant term first

Q peval(const Poly& p, const Q& x) {
  Q s = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
  return s;
}

Poly antiderivative(const Poly& p) {
  Poly q(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] = p[i] / Q(static_cast<long>(i + 1));
  return q;
}

// p(x - w)
Poly shifted(const Poly& p, const Q& w) {
  Poly out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    Poly next(out.size() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] += out[i];
      next[i] -= w * out[i];
    }
    next[0] += *it;
    out = std::move(next);
  }
  return out;
}

Poly combine(const Poly& a, const Poly& b, const Q& scale) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  for (auto& x : out) x *= scale;
  return out;
}

// Piece i lives on [breaks[i-1], breaks[i]).
struct Piecewise {
  std::vector<Q> breaks;
  std::vector<Poly> pieces;

  std::size_t locate(const Q& x) const {
    return static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
  }
  Q operator()(const Q& x) const { return peval(pieces[locate(x)], x); }
};

// c -> integral over x in [0,1] of g(c - w x), for g vanishing on (-inf, breaks[0]).
Piecewise integrate_step(const Piecewise& g, const Q& w) {
  Piecewise p;
  p.breaks = g.breaks;
  p.pieces.push_back(Poly{});
  for (std::size_t i = 1; i < g.pieces.size(); ++i) {
    Poly a = antiderivative(g.pieces[i]);
    const Q& b = g.breaks[i - 1];
    a.resize(std::max<std::size_t>(a.size(), 1));
    a[0] += peval(p.pieces[i - 1], b) - peval(a, b);
    p.pieces.push_back(std::move(a));
  }
  std::set<Q> bs(g.breaks.begin(), g.breaks.end());
  for (auto& b : g.breaks) bs.insert(b + w);
  Piecewise out;
  out.breaks.assign(bs.begin(), bs.end());
  std::size_t n = out.breaks.size();
  for (std::size_t j = 0; j <= n; ++j) {
    Q s = j == 0 ? Q(out.breaks[0] - 1) : j == n ? Q(out.breaks[n - 1] + 1) : Q((out.breaks[j - 1] + out.breaks[j]) / 2);
    out.pieces.push_back(combine(p.pieces[p.locate(s)], shifted(p.pieces[p.locate(s - w)], w), 1 / w));
  }
  return out;
}

}  // namespace

Q cut_simplex_integral(const Q& nu, const std::vector<Q>& weights) {
  if (weights.size() > 3) throw std::invalid_argument("cut_simplex_integral: exact mode supports h <= 3");
  for (auto& w : weights)
    if (w <= 0) throw std::invalid_argument("cut_simplex_integral: weights must be positive");
  Piecewise f{{Q(0)}, {Poly{}, Poly{0, 1}}};  // c_+
  for (auto& w : weights) f = integrate_step(f, w);
  return f(nu);
}

bool check_lower(const Q& nu, const std::vector<Q>& weights) {
  long h = static_cast<long>(weights.size());
  Q rhs = nu / (pow_q(Q(2), static_cast<unsigned long>(h + 1)) * self_pow(h));
  for (auto& w : weights) rhs *= nu / w;
  return cut_simplex_integral(nu, weights) >= rhs;
}

bool accumulated_criterion(long k, const std::vector<Q>& ords) {
  Q s = 0;
  for (auto& o : ords) s += o;
  return s > Q(k) * static_cast<long>(ords.size()) / 12;
}

bool prime_tuple_criterion(long k, const std::vector<long>& diag, long nu, const std::vector<long>& primes) {
  if (diag.size() != primes.size()) throw std::invalid_argument("prime_tuple_criterion: one prime per diagonal entry");
  std::set<long> seen;
  for (long p : primes) {
    if (!is_prime(p)) throw std::invalid_argument("prime_tuple_criterion: " + std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) throw std::invalid_argument("prime_tuple_criterion: repeated prime");
  }
  long h = static_cast<long>(diag.size());
  Q lhs = Q(nu) / (pow_q(Q(2), static_cast<unsigned long>(h + 1)) * self_pow(h)), rhs = Q(k) / 12;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 1) throw std::invalid_argument("prime_tuple_criterion: diagonal entries must be positive");
    lhs *= Q(primes[i] * (primes[i] - 1)) * nu / diag[i];
    rhs *= primes[i] * primes[i] - 1;
  }
  return lhs > rhs;
}

}  // namespace hermikit
