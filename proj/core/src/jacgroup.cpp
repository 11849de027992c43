#include "hermikit/jacgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace hermikit {

namespace {

QMat outer(const QVec& x, const QVec& y) {
  QMat m(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * y[j];
  return m;
}

QVec add(const QVec& x, const QVec& y) {
  QVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

QVec neg(const QVec& x) {
  QVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
  return r;
}

void check_sl2(const QMat& g) {
  if (g.rows() != 2 || g.cols() != 2 || det(g) != 1) throw std::invalid_argument("expected a 2x2 matrix of determinant 1");
}

}  // namespace

HeisElem::HeisElem(QVec l, QVec m, QMat k) : lambda(std::move(l)), mu(std::move(m)), kappa(std::move(k)) {
  std::size_t h = lambda.size();
  if (mu.size() != h || kappa.rows() != h || kappa.cols() != h) throw std::invalid_argument("HeisElem: size mismatch");
  QMat s = kappa + outer(mu, lambda);
  if (s != s.transpose()) throw std::invalid_argument("HeisElem: kappa + mu lambda^T not symmetric");
}

HeisElem HeisElem::identity(std::size_t h) { return HeisElem(QVec(h), QVec(h), QMat(h, h)); }

HeisElem HeisElem::inverse() const {
  return HeisElem(neg(lambda), neg(mu), -kappa + outer(lambda, mu) - outer(mu, lambda));
}

HeisElem HeisElem::act(const QMat& g) const {
  check_sl2(g);
  std::size_t h = size();
  QVec l(h), m(h);
  for (std::size_t i = 0; i < h; ++i) {
    l[i] = lambda[i] * g(0, 0) + mu[i] * g(1, 0);
    m[i] = lambda[i] * g(0, 1) + mu[i] * g(1, 1);
  }
  return HeisElem(l, m, kappa);
}

HeisElem operator*(const HeisElem& x, const HeisElem& y) {
  if (x.size() != y.size()) throw std::invalid_argument("Heisenberg product: size mismatch");
  return HeisElem(add(x.lambda, y.lambda), add(x.mu, y.mu),
                  x.kappa + y.kappa + outer(x.lambda, y.mu) - outer(x.mu, y.lambda));
}

JacElem::JacElem(QMat g, HeisElem x) : gamma(std::move(g)), h(std::move(x)) { check_sl2(gamma); }

JacElem JacElem::identity(std::size_t n) { return JacElem(QMat::identity(2), HeisElem::identity(n)); }

JacElem JacElem::from_sl2(const QMat& g, std::size_t n) { return JacElem(g, HeisElem::identity(n)); }

JacElem JacElem::inverse() const {
  QMat gi = hermikit::inverse(gamma);
  return JacElem(gi, h.act(gi).inverse());
}

JacElem operator*(const JacElem& x, const JacElem& y) {
  if (x.h.size() != y.h.size()) throw std::invalid_argument("Jacobi product: size mismatch");
  return JacElem(x.gamma * y.gamma, x.h.act(y.gamma) * y.h);
}

JacElem transJ(const QVec& alpha, const QVec& beta) {
  if (alpha.size() != beta.size()) throw std::invalid_argument("transJ: size mismatch");
  return JacElem(QMat::identity(2), HeisElem(alpha, beta, outer(alpha, beta)));
}

SL2Conjugate conj_by_sl2(const QVec& alpha, const QVec& beta, const QMat& g) {
  check_sl2(g);
  HeisElem x = HeisElem(alpha, beta, outer(alpha, beta)).act(g);
  return {x.lambda, x.mu, outer(alpha, beta) - outer(x.lambda, x.mu)};
}

QMat sl2_S() { return QMat{{0, -1}, {1, 0}}; }
QMat sl2_T() { return QMat{{1, 1}, {0, 1}}; }

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

void check_primes(const std::vector<long>& primes) {
  std::set<long> seen;
  for (long p : primes) {
    if (!is_prime(p)) throw std::invalid_argument("torsion points: " + std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) throw std::invalid_argument("torsion points: repeated prime " + std::to_string(p));
  }
}

}  // namespace

bool tp_member(const TorsionPoint& tp, const std::vector<long>& primes) {
  if (tp.alpha.size() != primes.size() || tp.beta.size() != primes.size()) return false;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const Q &a = tp.alpha[i], &b = tp.beta[i];
    if (a < 0 || a >= 1 || b < 0 || b >= 1) return false;
    Q pa = a * primes[i], pb = b * primes[i];
    if (!is_integer(pa) || !is_integer(pb)) return false;
    // taken together with p: the pair must be nonzero mod p
    if (gcd(gcd(pa.get_num(), pb.get_num()), Z(primes[i])) != 1) return false;
  }
  return true;
}

std::vector<TorsionPoint> tp_enumerate(const std::vector<long>& primes) {
  check_primes(primes);
  std::size_t h = primes.size();
  // per coordinate: nonzero pairs (x, y) mod p
  std::vector<std::vector<std::pair<Q, Q>>> per(h);
  for (std::size_t i = 0; i < h; ++i)
    for (long x = 0; x < primes[i]; ++x)
      for (long y = 0; y < primes[i]; ++y)
        if (x || y) per[i].emplace_back(make_q(x, primes[i]), make_q(y, primes[i]));
  std::vector<TorsionPoint> out;
  std::vector<std::size_t> idx(h, 0);
  while (true) {
    TorsionPoint tp{QVec(h), QVec(h)};
    for (std::size_t i = 0; i < h; ++i) std::tie(tp.alpha[i], tp.beta[i]) = per[i][idx[i]];
    out.push_back(tp);
    std::size_t k = 0;
    while (k < h && ++idx[k] == per[k].size()) idx[k++] = 0;
    if (k == h) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

TorsionPoint tp_act(const TorsionPoint& tp, const QMat& g, const std::vector<long>& primes) {
  check_sl2(g);
  for (auto& x : g.data())
    if (!is_integer(x)) throw std::invalid_argument("tp_act: gamma not integral");
  if (!tp_member(tp, primes)) throw std::invalid_argument("tp_act: point not in TP");
  std::size_t h = primes.size();
  TorsionPoint r{QVec(h), QVec(h)};
  for (std::size_t i = 0; i < h; ++i) {
    r.alpha[i] = frac(tp.alpha[i] * g(0, 0) + tp.beta[i] * g(1, 0));
    r.beta[i] = frac(tp.alpha[i] * g(0, 1) + tp.beta[i] * g(1, 1));
  }
  return r;
}

std::vector<TorsionPoint> tp_orbit(const TorsionPoint& tp, const std::vector<long>& primes) {
  std::set<TorsionPoint> seen{tp};
  std::deque<TorsionPoint> queue{tp};
  QMat gens[2] = {sl2_S(), sl2_T()};
  while (!queue.empty()) {
    TorsionPoint x = queue.front();
    queue.pop_front();
    for (auto& g : gens) {
      TorsionPoint y = tp_act(x, g, primes);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace hermikit
