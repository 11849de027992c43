#pragma once

#include <vector>

#include "hermikit/linalg.hpp"

namespace hermikit {

using QVec = std::vector<Q>;

// (lambda, mu, kappa) with kappa + mu lambda^T symmetric.
struct HeisElem {
  QVec lambda, mu;
  QMat kappa;

  HeisElem() = default;
  HeisElem(QVec l, QVec m, QMat k);  // validates the symmetry constraint
  static HeisElem identity(std::size_t h);
  std::size_t size() const { return lambda.size(); }

  HeisElem inverse() const;
  // right action of SL_2: ((lambda, mu) gamma, kappa)
  HeisElem act(const QMat& gamma) const;

  friend bool operator==(const HeisElem& x, const HeisElem& y) {
    return x.lambda == y.lambda && x.mu == y.mu && x.kappa == y.kappa;
  }
};

HeisElem operator*(const HeisElem& x, const HeisElem& y);

struct JacElem {
  QMat gamma;  // det 1
  HeisElem h;

  JacElem() = default;
  JacElem(QMat g, HeisElem x);
  static JacElem identity(std::size_t h);
  static JacElem from_sl2(const QMat& g, std::size_t h);
  JacElem inverse() const;

  friend bool operator==(const JacElem& x, const JacElem& y) { return x.gamma == y.gamma && x.h == y.h; }
};

// (g1, h1)(g2, h2) = (g1 g2, (h1 g2) h2)
JacElem operator*(const JacElem& x, const JacElem& y);

// (1, (alpha, beta, alpha beta^T))
JacElem transJ(const QVec& alpha, const QVec& beta);

struct SL2Conjugate {
  QVec alpha, beta;
  QMat central;  // alpha beta^T - alpha' beta'^T
};
// transJ(alpha, beta) gamma = gamma transJ(alpha', beta') (0, 0, central)
SL2Conjugate conj_by_sl2(const QVec& alpha, const QVec& beta, const QMat& gamma);

QMat sl2_S();
QMat sl2_T();

struct TorsionPoint {
  QVec alpha, beta;
  friend bool operator==(const TorsionPoint& x, const TorsionPoint& y) { return x.alpha == y.alpha && x.beta == y.beta; }
  friend bool operator<(const TorsionPoint& x, const TorsionPoint& y) {
    if (x.alpha != y.alpha) return x.alpha < y.alpha;
    return x.beta < y.beta;
  }
};

bool is_prime(long p);
bool tp_member(const TorsionPoint& tp, const std::vector<long>& primes);
// All of TP(p_1, ..., p_h), sorted; throws on repeated or non-prime entries.
std::vector<TorsionPoint> tp_enumerate(const std::vector<long>& primes);
// The representative of (alpha, beta) gamma mod Z^h x Z^h, gamma in SL_2(Z).
TorsionPoint tp_act(const TorsionPoint& tp, const QMat& gamma, const std::vector<long>& primes);
// Orbit of tp under the group generated by S and T.
std::vector<TorsionPoint> tp_orbit(const TorsionPoint& tp, const std::vector<long>& primes);

}  // namespace hermikit
