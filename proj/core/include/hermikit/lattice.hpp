#pragma once

#include <vector>

#include "hermikit/linalg.hpp"

namespace hermikit {

struct LatticePoint {
  std::vector<long> k;  // integer coordinates
  Q value;              // (k + c)^T A (k + c), exact
};

// All integer k with (k + c)^T A (k + c) <= bound, for positive definite rational A.
// Fincke-Pohst recursion on a floating Cholesky factor with a safety margin;
// every candidate is re-checked exactly. Output order does not depend on the
// thread count: points are sorted by coordinates.
std::vector<LatticePoint> enumerate_ellipsoid(const QMat& A, const std::vector<Q>& c, const Q& bound);
std::vector<LatticePoint> enumerate_ellipsoid(const QMat& A, const Q& bound);

// Threads available to internal parallel loops: HERMIKIT_THREADS when set,
// otherwise the hardware concurrency.
unsigned thread_count();

}  // namespace hermikit
