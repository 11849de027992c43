#include "hermikit/weil.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hermikit/hermitian.hpp"
#include "hermikit/intmat.hpp"

namespace hermikit {

DiscForm::DiscForm(QMat gram, long signature) : gram_(std::move(gram)), signature_(signature) {
  std::size_t n = gram_.rows();
  if (!gram_.is_square() || gram_ != gram_.transpose()) throw std::invalid_argument("DiscForm: gram not symmetric");
  for (auto& x : gram_.data())
    if (!is_integer(x)) throw std::invalid_argument("DiscForm: gram not integral");
  for (std::size_t i = 0; i < n; ++i)
    if (gram_(i, i).get_num() % 2 != 0) throw std::invalid_argument("DiscForm: gram is odd");
  if (det(gram_) == 0) throw std::invalid_argument("DiscForm: gram is singular");

  SmithForm sf = smith_normal_form(to_integer(gram_));
  QMat v = to_rational(sf.V);
  QMat vinv = inverse(v);
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) {
    Z d = abs(sf.S(i, i));
    if (d > 1) {
      orders_.push_back(to_long(d));
      pos.push_back(i);
    }
  }
  std::size_t r = pos.size();
  gens_ = QMat(n, r);
  vinv_ = QMat(r, n);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      gens_(i, k) = v(i, pos[k]) / orders_[k];
      vinv_(k, i) = vinv(pos[k], i) * orders_[k];
    }
  }
  std::size_t card = 1;
  for (long d : orders_) card *= static_cast<std::size_t>(d);
  q_.resize(card);
  for (std::size_t i = 0; i < card; ++i) {
    std::vector<Q> x = representative(i);
    Q s = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) s += x[a] * gram_(a, b) * x[b];
    q_[i] = frac(s / 2);
  }
}

std::vector<long> DiscForm::element(std::size_t idx) const {
  std::vector<long> a(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    a[k] = static_cast<long>(idx % static_cast<std::size_t>(orders_[k]));
    idx /= static_cast<std::size_t>(orders_[k]);
  }
  return a;
}

std::size_t DiscForm::index(const std::vector<long>& a) const {
  if (a.size() != orders_.size()) throw std::invalid_argument("DiscForm::index: wrong length");
  std::size_t idx = 0;
  for (std::size_t k = orders_.size(); k-- > 0;) {
    long d = orders_[k];
    long x = ((a[k] % d) + d) % d;
    idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(x);
  }
  return idx;
}

std::size_t DiscForm::index_of_vector(const std::vector<Q>& x) const {
  std::size_t n = gram_.rows();
  if (x.size() != n) throw std::invalid_argument("DiscForm::index_of_vector: wrong length");
  // must be dual: gram x integral
  for (std::size_t a = 0; a < n; ++a) {
    Q s = 0;
    for (std::size_t b = 0; b < n; ++b) s += gram_(a, b) * x[b];
    if (!is_integer(s)) throw std::invalid_argument("DiscForm::index_of_vector: not a dual vector");
  }
  std::vector<long> a(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    Q y = 0;
    for (std::size_t i = 0; i < n; ++i) y += vinv_(k, i) * x[i];
    a[k] = to_long(Z(floor_q(y) % orders_[k]));
  }
  return index(a);
}

std::vector<Q> DiscForm::representative(std::size_t idx) const {
  std::vector<long> a = element(idx);
  std::vector<Q> x(gram_.rows());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += a[k] * gens_(i, k);
  return x;
}

std::size_t DiscForm::add(std::size_t i, std::size_t j) const {
  std::vector<long> a = element(i), b = element(j);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return index(a);
}

std::size_t DiscForm::neg(std::size_t i) const { return scale(-1, i); }

std::size_t DiscForm::scale(long c, std::size_t i) const {
  std::vector<long> a = element(i);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = (a[k] * (c % orders_[k])) % orders_[k];
  return index(a);
}

Q DiscForm::pairing(std::size_t i, std::size_t j) const {
  std::vector<Q> x = representative(i), y = representative(j);
  Q s = 0;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b) s += x[a] * gram_(a, b) * y[b];
  return frac(s);
}

void DiscForm::set_omega_action(long D, const QMat& w) {
  std::size_t n = gram_.rows();
  if (w.rows() != n || w.cols() != n) throw std::invalid_argument("set_omega_action: size mismatch");
  std::vector<std::size_t> table(card());
  for (std::size_t i = 0; i < card(); ++i) {
    std::vector<Q> x = representative(i), y(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) y[a] += w(a, b) * x[b];
    table[i] = index_of_vector(y);
  }
  D_ = D;
  omega_ = std::move(table);
}

std::size_t DiscForm::mul(const FieldElem& b, std::size_t i) const {
  if (!is_integer(b.a()) || !is_integer(b.b())) throw std::invalid_argument("DiscForm::mul: scalar not integral");
  std::size_t out = card() ? scale(to_long(b.a().get_num()), i) : 0;
  if (b.b() != 0) {
    if (!omega_) throw std::invalid_argument("DiscForm::mul: no omega action on this form");
    if (b.disc() != 0 && b.disc() != D_) throw std::invalid_argument("DiscForm::mul: field mismatch");
    out = add(out, scale(to_long(b.b().get_num()), (*omega_)[i]));
  }
  return out;
}

DiscForm disc_from_gram(const QMat& gram) {
  Inertia in = inertia(gram);
  return DiscForm(gram, static_cast<long>(in.pos) - static_cast<long>(in.neg));
}

DiscForm herm_disc(const FMat& G, long D) {
  if (!is_hermitian(G) || !is_pd(G)) throw std::invalid_argument("herm_disc: expected a positive definite Hermitian matrix");
  std::size_t h = G.rows();
  DiscForm df(herm_z_gram(G, D), static_cast<long>(2 * h));
  df.set_omega_action(D, scalar_z_action(FieldElem::omega(D), h, D));
  return df;
}

std::size_t weil_dim(const DiscForm& df, std::size_t g) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < g; ++i) {
    n *= df.card();
    if (n > 4096) throw std::length_error("Weil representation space too large");
  }
  return n;
}

std::vector<std::size_t> weil_components(const DiscForm& df, std::size_t g, std::size_t idx) {
  std::vector<std::size_t> mu(g);
  for (std::size_t i = 0; i < g; ++i) {
    mu[i] = idx % df.card();
    idx /= df.card();
  }
  return mu;
}

std::size_t weil_index(const DiscForm& df, const std::vector<std::size_t>& mu) {
  std::size_t idx = 0;
  for (std::size_t i = mu.size(); i-- > 0;) idx = idx * df.card() + mu[i];
  return idx;
}

std::complex<double> e_phase(const Q& p) {
  double t = 2 * std::numbers::pi * frac(p).get_d();
  return {std::cos(t), std::sin(t)};
}

std::vector<Q> trans_phases(const DiscForm& df, std::size_t g, const FMat& b) {
  if (b.rows() != g || b.cols() != g || !is_hermitian(b)) throw std::invalid_argument("trans: b must be g x g Hermitian");
  if (!is_integral_matrix(b)) throw std::invalid_argument("trans: b not integral");
  std::size_t n = weil_dim(df, g);
  std::vector<Q> out(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    auto mu = weil_components(df, g, idx);
    Q p = 0;
    for (std::size_t i = 0; i < g; ++i) {
      p += real_value(b(i, i)) * df.q(mu[i]);
      for (std::size_t j = i + 1; j < g; ++j)
        if (!b(i, j).is_zero()) p += df.pairing(mu[j], df.mul(b(i, j), mu[i]));
    }
    out[idx] = frac(p);
  }
  return out;
}

WeilGenMatrix rho_trans(const DiscForm& df, std::size_t g, const FMat& b) {
  std::vector<Q> p = trans_phases(df, g, b);
  CMat m(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m(i, i) = e_phase(p[i]);
  return {m, WeilTag::trans};
}

std::vector<std::size_t> act_right(const DiscForm& df, const std::vector<std::size_t>& mu, const FMat& c) {
  if (c.rows() != mu.size()) throw std::invalid_argument("act_right: size mismatch");
  std::vector<std::size_t> nu(c.cols(), 0);
  for (std::size_t j = 0; j < c.cols(); ++j)
    for (std::size_t i = 0; i < c.rows(); ++i)
      if (!c(i, j).is_zero()) nu[j] = df.add(nu[j], df.mul(c(i, j), mu[i]));
  return nu;
}

int rot_sign(const DiscForm& df, const FMat& a) {
  FieldElem d = det_f(a);
  if (d == FieldElem(1)) return 1;
  if (!(d == FieldElem(-1))) throw std::invalid_argument("rot: det(a)^2 != 1");
  if (df.signature() % 2 != 0) throw std::invalid_argument("rot: det(a) = -1 needs an even signature");
  return (df.signature() / 2) % 2 == 0 ? 1 : -1;
}

SignedPermutation rot_action(const DiscForm& df, std::size_t g, const FMat& a) {
  if (a.rows() != g || a.cols() != g || !is_integral_matrix(a)) throw std::invalid_argument("rot: a must be integral g x g");
  SignedPermutation sp;
  sp.sign = rot_sign(df, a);
  FMat ai = inverse(a);
  std::size_t n = weil_dim(df, g);
  sp.target.resize(n);
  for (std::size_t idx = 0; idx < n; ++idx) sp.target[idx] = weil_index(df, act_right(df, weil_components(df, g, idx), ai));
  return sp;
}

WeilGenMatrix rho_rot(const DiscForm& df, std::size_t g, const FMat& a) {
  SignedPermutation sp = rot_action(df, g, a);
  CMat m(sp.target.size(), sp.target.size());
  for (std::size_t i = 0; i < sp.target.size(); ++i) m(sp.target[i], i) = static_cast<double>(sp.sign);
  return {m, WeilTag::rot};
}

WeilGenMatrix rho_sinv1(const DiscForm& df, std::size_t g) {
  if (g == 0) throw std::invalid_argument("sinv1: genus must be positive");
  std::size_t n = weil_dim(df, g), c = df.card();
  std::complex<double> norm = e_phase(Q(-df.signature()) / 8) / std::sqrt(static_cast<double>(c));
  CMat m(n, n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    auto mu = weil_components(df, g, idx);
    for (std::size_t x = 0; x < c; ++x) {
      auto nu = mu;
      nu[0] = x;
      m(weil_index(df, nu), idx) = norm * e_phase(-df.pairing(mu[0], x));
    }
  }
  return {m, WeilTag::sinv1};
}

double unitarity_defect(const CMat& m) {
  CMat p = m * adjoint(m);
  double worst = 0;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) worst = std::max(worst, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: size mismatch");
  double worst = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

}  // namespace hermikit
