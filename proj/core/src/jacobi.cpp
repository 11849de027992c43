#include "hermikit/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "hermikit/intmat.hpp"
#include "hermikit/lattice.hpp"

namespace hermikit {

Q qform(const QMat& m, const QVec& x) {
  if (m.rows() != x.size() || m.cols() != x.size()) throw std::invalid_argument("qform: size mismatch");
  Q s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Q row = 0;
    for (std::size_t j = 0; j < x.size(); ++j) row += m(i, j) * x[j];
    s += x[i] * row;
  }
  return s;
}

namespace {

QVec to_q(const IVec& v) { return QVec(v.begin(), v.end()); }

Q bilinear(const QMat& m, const QVec& x, const QVec& y) {
  Q s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * m(i, j) * y[j];
  return s;
}

Q dot(const IVec& r, const QVec& x) {
  Q s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * x[i];
  return s;
}

void check_integral(const QMat& m, const char* what) {
  for (auto& x : m.data())
    if (!is_integer(x)) throw std::invalid_argument(std::string(what) + ": expected an integral matrix");
}

}  // namespace

JacobiIndex::JacobiIndex(QMat m) : m_(std::move(m)) {
  if (!m_.is_square() || m_ != m_.transpose()) throw std::invalid_argument("JacobiIndex: not symmetric");
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    if (!is_integer(m_(i, i))) throw std::invalid_argument("JacobiIndex: non-integral diagonal");
    for (std::size_t j = i + 1; j < m_.cols(); ++j)
      if (!is_integer(2 * m_(i, j))) throw std::invalid_argument("JacobiIndex: off-diagonal not half-integral");
  }
  psd_ = is_psd(m_);
  pd_ = m_.rows() == 0 || is_pd(m_);
}

bool JacobiIndex::is_diagonal() const {
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = 0; j < m_.cols(); ++j)
      if (i != j && m_(i, j) != 0) return false;
  return true;
}

bool support_ok(long n, const IVec& r, const JacobiIndex& m) {
  std::size_t h = m.size();
  if (r.size() != h) throw std::invalid_argument("support_ok: size mismatch");
  QMat b(h + 1, h + 1);
  b(0, 0) = 2 * n;
  for (std::size_t i = 0; i < h; ++i) {
    b(0, i + 1) = b(i + 1, 0) = r[i];
    for (std::size_t j = 0; j < h; ++j) b(i + 1, j + 1) = 2 * m.matrix()(i, j);
  }
  return is_psd(b);
}

CycNum JacobiExpansion::coeff(long n, const IVec& r) const {
  if (n > n_max) throw std::out_of_range("coefficient beyond the truncation");
  auto it = coeffs.find({n, r});
  return it == coeffs.end() ? CycNum() : it->second;
}

void JacobiExpansion::add(long n, const IVec& r, const CycNum& c) {
  if (r.size() != index.size()) throw std::invalid_argument("JacobiExpansion::add: size mismatch");
  auto [it, fresh] = coeffs.try_emplace({n, r}, c);
  if (!fresh) it->second += c;
  if (it->second.is_zero()) coeffs.erase(it);
}

bool JacobiExpansion::holomorphic_support() const {
  for (auto& [k, c] : coeffs)
    if (!support_ok(k.first, k.second, index)) return false;
  return true;
}

bool JacobiExpansion::agrees_with(const JacobiExpansion& o) const {
  if (!(index == o.index)) return false;
  long top = std::min(n_max, o.n_max);
  auto check = [top](const JacobiExpansion& x, const JacobiExpansion& y) {
    for (auto& [k, c] : x.coeffs)
      if (k.first <= top && y.coeff(k.first, k.second) != c) return false;
    return true;
  };
  return check(*this, o) && check(o, *this);
}

std::optional<long> ord(const JacobiExpansion& phi) {
  std::optional<long> best;
  for (auto& [k, c] : phi.coeffs)
    if (!c.is_zero() && (!best || k.first < *best)) best = k.first;
  return best;
}

std::optional<Q> QExpansion::certified_min_exponent() const {
  for (auto& [e, c] : terms) {
    if (e >= exp_max) break;
    if (!c.is_zero()) return e;
  }
  return std::nullopt;
}

JacobiExpansion lattice_theta_jacobi(const QMat& gram, const QMat& vs, long n_max) {
  std::size_t n = gram.rows();
  if (!gram.is_square() || gram != gram.transpose()) throw std::invalid_argument("lattice theta: gram not symmetric");
  check_integral(gram, "lattice theta");
  for (std::size_t i = 0; i < n; ++i)
    if (gram(i, i).get_num() % 2 != 0) throw std::invalid_argument("lattice theta: gram is odd");
  if (!is_pd(gram)) throw std::invalid_argument("lattice theta: gram not positive definite");
  if (n % 2 != 0) throw std::invalid_argument("lattice theta: odd rank gives half-integral weight");
  if (vs.rows() != n) throw std::invalid_argument("lattice theta: vectors have the wrong length");
  check_integral(vs, "lattice theta");

  QMat gv = gram * vs;
  JacobiExpansion phi;
  phi.weight = static_cast<int>(n / 2);
  phi.index = JacobiIndex(vs.transpose() * gv * make_q(1, 2));
  phi.n_max = n_max;
  if (n_max < 0) return phi;
  for (auto& p : enumerate_ellipsoid(gram, Q(2 * n_max))) {
    IVec r(vs.cols());
    for (std::size_t j = 0; j < vs.cols(); ++j) {
      Q s = 0;
      for (std::size_t i = 0; i < n; ++i) s += p.k[i] * gv(i, j);
      r[j] = to_long(s.get_num());
    }
    phi.add(to_long(Q(p.value / 2).get_num()), r, CycNum(1));
  }
  return phi;
}

QExpansion specialize(const JacobiExpansion& phi, const QVec& alpha, const QVec& beta) {
  const QMat& m = phi.index.matrix();
  std::size_t h = m.rows();
  if (alpha.size() != h || beta.size() != h) throw std::invalid_argument("specialize: size mismatch");
  if (!phi.holomorphic_support()) throw std::invalid_argument("specialize: expansion without holomorphic support");
  Q ma = qform(m, alpha), cross = 2 * bilinear(m, alpha, beta);
  QExpansion out;
  for (auto& [k, c] : phi.coeffs) {
    Q e = k.first + dot(k.second, alpha) + ma;
    CycNum term = c * CycNum::phase(dot(k.second, beta) + cross);
    auto [it, fresh] = out.terms.try_emplace(e, term);
    if (!fresh) it->second += term;
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);

  // Missing terms have n >= N. The support condition applied to (1, t alpha)
  // gives r^T alpha >= -(n + t^2 m[alpha]) / t, so for t > 1 every such term
  // has exponent >= N (1 - 1/t) + m[alpha] (1 - t); with t = 1 it is >= 0.
  Q big_n = phi.n_max + 1;
  Q bound = 0;
  if (ma == 0) {
    bound = big_n;
  } else if (big_n > ma) {
    double tt = std::sqrt(big_n.get_d() / ma.get_d());
    Q t = make_q(std::lround(tt * 1048576.0), 1048576);
    if (t > 1) bound = std::max(bound, Q(big_n * (1 - 1 / t) + ma * (1 - t)));
  }
  out.exp_max = bound;
  return out;
}

JacobiExpansion elliptic_map(const JacobiExpansion& phi, const QMat& s) {
  if (s.rows() != phi.index.size()) throw std::invalid_argument("elliptic_map: size mismatch");
  check_integral(s, "elliptic_map");
  JacobiExpansion out;
  out.weight = phi.weight;
  out.index = JacobiIndex(s.transpose() * phi.index.matrix() * s);
  out.n_max = phi.n_max;
  for (auto& [k, c] : phi.coeffs) {
    IVec r(s.cols());
    for (std::size_t j = 0; j < s.cols(); ++j) {
      Q x = 0;
      for (std::size_t i = 0; i < s.rows(); ++i) x += s(i, j) * k.second[i];
      r[j] = to_long(x.get_num());
    }
    out.add(k.first, r, c);
  }
  return out;
}

JacobiExpansion symmetrize_synthetic(const JacobiIndex& m, std::uint64_t seed, long n_max) {
  if (!m.pd()) throw std::invalid_argument("symmetrize_synthetic: index not positive definite");
  QMat mi = inverse(m.matrix());
  ColumnHermite hf = column_hermite(to_integer(m.matrix() * Q(2)));

  using ClassKey = std::pair<Q, std::vector<Z>>;
  std::map<ClassKey, std::vector<std::pair<long, IVec>>> classes;
  if (n_max >= 0) {
    for (auto& p : enumerate_ellipsoid(mi, Q(4 * n_max))) {
      Q quarter = p.value / 4;
      std::vector<Z> red = reduce_mod_hermite(hf, std::vector<Z>(p.k.begin(), p.k.end()));
      for (long n = to_long(ceil_q(quarter)); n <= n_max; ++n) classes[{n - quarter, red}].emplace_back(n, p.k);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(1, 9), den(1, 6), sign(0, 1);
  JacobiExpansion phi;
  phi.index = m;
  phi.n_max = n_max;
  for (auto& [key, members] : classes) {
    long a = num(rng), b = den(rng);
    Q v = make_q(sign(rng) ? -a : a, b);
    for (auto& [n, r] : members) phi.add(n, r, CycNum(v));
  }
  return phi;
}

namespace {

std::vector<QVec> sign_cube(std::size_t h) {
  std::vector<QVec> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << h); ++mask) {
    QVec s(h);
    for (std::size_t i = 0; i < h; ++i) s[i] = (mask >> i & 1) ? make_q(1, 2) : make_q(-1, 2);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

VoronoiData voronoi(const JacobiIndex& m) {
  if (!m.pd()) throw std::invalid_argument("voronoi: index not positive definite");
  std::size_t h = m.size();
  if (m.is_diagonal()) return {m, sign_cube(h)};
  if (h > 2) throw std::invalid_argument("voronoi: non-diagonal index of size > 2");

  // For s in the cell, m[s] <= m[frac part] <= sum |m_ij| / 4, and a relevant
  // vector lambda has lambda / 2 in the cell.
  const QMat& a = m.matrix();
  Q radius = 0;
  for (auto& x : a.data()) radius += abs(x);
  struct Half {
    Q a0, a1, b;  // a0 x + a1 y <= b
  };
  std::vector<Half> hs;
  for (auto& p : enumerate_ellipsoid(a, radius)) {
    if (p.value == 0) continue;
    QVec l = to_q(p.k);
    hs.push_back({a(0, 0) * l[0] + a(0, 1) * l[1], a(1, 0) * l[0] + a(1, 1) * l[1], p.value / 2});
  }
  std::set<QVec> verts;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      Q d = hs[i].a0 * hs[j].a1 - hs[i].a1 * hs[j].a0;
      if (d == 0) continue;
      QVec x{(hs[i].b * hs[j].a1 - hs[i].a1 * hs[j].b) / d, (hs[i].a0 * hs[j].b - hs[i].b * hs[j].a0) / d};
      bool inside = std::all_of(hs.begin(), hs.end(), [&](const Half& q) { return q.a0 * x[0] + q.a1 * x[1] <= q.b; });
      if (inside) verts.insert(x);
    }
  return {m, {verts.begin(), verts.end()}};
}

Q ord_lower_bound_diagonal(long ord_phi, const JacobiIndex& m, const QVec& alpha) {
  if (!m.is_diagonal() || alpha.size() != m.size()) throw std::invalid_argument("ord_lower_bound_diagonal: bad input");
  Q s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0 || alpha[i] > 1) throw std::invalid_argument("ord_lower_bound_diagonal: alpha outside [0, 1]");
    s += m.matrix()(i, i) * alpha[i] * (1 - alpha[i]);
  }
  return ord_phi - s;
}

Q ord_lower_bound(long ord_phi, const JacobiIndex& m, const QVec& alpha) {
  std::size_t h = m.size();
  if (alpha.size() != h) throw std::invalid_argument("ord_lower_bound: size mismatch");
  VoronoiData vd = voronoi(m);
  const QMat& a = m.matrix();
  auto shifted = [&](const QVec& s, const QVec& l) {
    QVec x(h);
    for (std::size_t i = 0; i < h; ++i) x[i] = s[i] + l[i] + alpha[i];
    return qform(a, x);
  };
  // starting value from lambda = -round(alpha)
  QVec l0(h);
  for (std::size_t i = 0; i < h; ++i) l0[i] = Q(-floor_q(alpha[i] + make_q(1, 2)));
  Q best = qform(a, vd.extreme_points[0]) - shifted(vd.extreme_points[0], l0);
  for (auto& s : vd.extreme_points) best = std::max(best, Q(qform(a, s) - shifted(s, l0)));
  // Improving lambda satisfy m[s + alpha + lambda] <= m[s] - best: a finite
  // ellipsoid around -(s + alpha), enumerated exactly.
  for (auto& s : vd.extreme_points) {
    Q ms = qform(a, s), r = ms - best;
    if (r < 0) continue;
    QVec c(h);
    for (std::size_t i = 0; i < h; ++i) c[i] = s[i] + alpha[i];
    for (auto& p : enumerate_ellipsoid(a, c, r)) best = std::max(best, Q(ms - p.value));
  }
  Q out = ord_phi - best;
  if (m.is_diagonal() && std::all_of(alpha.begin(), alpha.end(), [](const Q& x) { return x >= 0 && x <= 1; }))
    if (out != ord_lower_bound_diagonal(ord_phi, m, alpha))
      throw std::logic_error("ord_lower_bound: general and diagonal bounds disagree");
  return out;
}

}  // namespace hermikit
