#include "hermikit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace hermikit {

unsigned thread_count() {
  if (const char* s = std::getenv("HERMIKIT_THREADS")) {
    try {
      long v = std::stol(s);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace {

struct Enumerator {
  std::size_t n;
  std::vector<std::vector<double>> q;  // q[i][i] pivots, q[i][j] (j > i) multipliers
  std::vector<double> c;
  double margin;
  const QMat* A;
  const std::vector<Q>* cq;
  Q bound;

  Q exact_value(const std::vector<long>& k) const {
    std::vector<Q> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = Q(k[i]) + (*cq)[i];
    Q s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (y[i] == 0) continue;
      Q row = 0;
      for (std::size_t j = 0; j < n; ++j) row += (*A)(i, j) * y[j];
      s += y[i] * row;
    }
    return s;
  }

  void range(std::size_t i, const std::vector<long>& k, double budget, long& lo, long& hi) const {
    double center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= q[i][j] * (static_cast<double>(k[j]) + c[j]);
    double r = std::sqrt(std::max(0.0, budget) / q[i][i]);
    lo = static_cast<long>(std::ceil(center - r - c[i] - margin));
    hi = static_cast<long>(std::floor(center + r - c[i] + margin));
  }

  double used(std::size_t i, const std::vector<long>& k) const {
    double t = static_cast<double>(k[i]) + c[i];
    for (std::size_t j = i + 1; j < n; ++j) t += q[i][j] * (static_cast<double>(k[j]) + c[j]);
    return q[i][i] * t * t;
  }

  void recurse(std::size_t i, std::vector<long>& k, double budget, std::vector<LatticePoint>& out) const {
    long lo, hi;
    range(i, k, budget, lo, hi);
    for (long v = lo; v <= hi; ++v) {
      k[i] = v;
      double rest = budget - used(i, k);
      if (rest < -margin) continue;
      if (i == 0) {
        Q val = exact_value(k);
        if (val <= bound) out.push_back({k, val});
      } else {
        recurse(i - 1, k, rest, out);
      }
    }
    k[i] = 0;
  }
};

}  // namespace

std::vector<LatticePoint> enumerate_ellipsoid(const QMat& A, const std::vector<Q>& c, const Q& bound) {
  std::size_t n = A.rows();
  if (!A.is_square() || c.size() != n) throw std::invalid_argument("enumerate_ellipsoid: shape");
  if (n == 0) {
    if (bound >= 0) return {LatticePoint{{}, Q(0)}};
    return {};
  }
  if (!is_pd(A)) throw std::invalid_argument("enumerate_ellipsoid: form not positive definite");
  if (bound < 0) return {};
  Enumerator e;
  e.n = n;
  e.A = &A;
  e.cq = &c;
  e.bound = bound;
  e.q.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double d = A(i, i).get_d();
    for (std::size_t k = 0; k < i; ++k) d -= e.q[k][k] * e.q[k][i] * e.q[k][i];
    e.q[i][i] = d;
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = A(i, j).get_d();
      for (std::size_t k = 0; k < i; ++k) s -= e.q[k][k] * e.q[k][i] * e.q[k][j];
      e.q[i][j] = s / d;
    }
  }
  e.c.resize(n);
  for (std::size_t i = 0; i < n; ++i) e.c[i] = c[i].get_d();
  double B = bound.get_d();
  e.margin = 1e-7 * (1.0 + std::fabs(B));
  double budget = B + e.margin;

  std::vector<long> k(n, 0);
  long lo, hi;
  e.range(n - 1, k, budget, lo, hi);
  std::vector<long> tops;
  for (long v = lo; v <= hi; ++v) tops.push_back(v);
  std::vector<std::vector<LatticePoint>> parts(tops.size());
  unsigned nt = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(1, tops.size())));
  auto work = [&](unsigned tid) {
    std::vector<long> kk(n, 0);
    for (std::size_t t = tid; t < tops.size(); t += nt) {
      kk[n - 1] = tops[t];
      double rest = budget - e.used(n - 1, kk);
      if (rest < -e.margin) continue;
      if (n == 1) {
        Q val = e.exact_value(kk);
        if (val <= bound) parts[t].push_back({kk, val});
      } else {
        e.recurse(n - 2, kk, rest, parts[t]);
      }
    }
  };
  if (nt <= 1 || tops.size() < 4) {
    nt = 1;
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::vector<LatticePoint> out;
  for (auto& p : parts)
    for (auto& x : p) out.push_back(std::move(x));
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) { return a.k < b.k; });
  return out;
}

std::vector<LatticePoint> enumerate_ellipsoid(const QMat& A, const Q& bound) {
  return enumerate_ellipsoid(A, std::vector<Q>(A.rows(), Q(0)), bound);
}

}  // namespace hermikit
