#include <set>

#include "doctest.h"
#include "gauss_oracle.hpp"
#include "hermikit/reduction.hpp"
#include "test_util.hpp"

using namespace hermikit;

namespace {

std::vector<Q> tup(std::initializer_list<long> v) {
  std::vector<Q> r;
  for (long x : v) r.push_back(x);
  return r;
}

// dual-lattice 2x2 PSD matrices with the given diagonal, D = -4
std::vector<FMat> psd_family(long d1, long d2) {
  std::vector<FMat> out;
  for (long p = -6; p <= 6; ++p)
    for (long q = -6; q <= 6; ++q) {
      // x = (p + q i)/2
      if (p * p + q * q > 4 * d1 * d2) continue;
      FieldElem x(-4, make_q(p + 2 * q, 2), make_q(q, 2));
      FMat t{{d1, x.conj()}, {x, d2}};
      out.push_back(t);
    }
  return out;
}

}  // namespace

TEST_CASE("lexicographic order") {
  CHECK(prec(tup({0, 1}), tup({1, 1})));
  CHECK_FALSE(prec(tup({1, 2}), tup({1, 2})));
  CHECK(prec(tup({0, 2}), tup({1, 3})));
  CHECK_THROWS(prec(tup({0}), tup({0, 1})));
  // strict total order on distinct tuples, transitive
  std::mt19937_64 rng(1);
  for (int it = 0; it < 300; ++it) {
    std::vector<Q> a, b, c;
    for (int k = 0; k < 3; ++k) {
      a.push_back(testutil::rand_int(rng, 0, 2));
      b.push_back(testutil::rand_int(rng, 0, 2));
      c.push_back(testutil::rand_int(rng, 0, 2));
    }
    CHECK_FALSE(prec(a, a));
    if (a != b) CHECK(prec(a, b) != prec(b, a));
    if (prec(a, b) && prec(b, c)) CHECK(prec(a, c));
  }
}

TEST_CASE("reduce basic cases") {
  auto c = reduce(FMat::identity(2), -4);
  CHECK(c.m_red == FMat::identity(2));
  CHECK(c.u == FMat::identity(2));
  FMat one{{5}};
  CHECK(reduce(one, -4).m_red == one);
  // rank one: the orbit contains diag(0, 1); ascending diagonal puts 0 first
  FMat r1{{1, 1}, {1, 1}};
  auto cr = reduce(r1, -4);
  FMat expect{{0, 0}, {0, 1}};
  CHECK(cr.m_red == expect);
  CHECK(act(r1, cr.u) == cr.m_red);
  CHECK(det(cr.u) * det(cr.u) == FieldElem(1));
  FieldElem w = FieldElem::omega(-4);
  FMat q{{2, w}, {w.conj(), 2}};
  CHECK_THROWS(reduce(q, -4));
}

TEST_CASE("reduction certificate properties") {
  std::mt19937_64 rng(9);
  for (long D : {-3L, -4L, -7L}) {
    auto gens = reduction_generators(2, D);
    for (int it = 0; it < 25; ++it) {
      FMat t = testutil::rand_dual(rng, D, 2, 2);
      t(0, 0) = testutil::rand_int(rng, 0, 3);
      t(1, 1) = testutil::rand_int(rng, 0, 3);
      if (!is_psd(t)) continue;
      auto c = reduce(t, D);
      CHECK(act(t, c.u) == c.m_red);
      CHECK(is_integral_matrix(c.u));
      CHECK(det(c.u) * det(c.u) == FieldElem(1));
      CHECK_FALSE(reduction_key_less(t, c.m_red));
      CHECK(real_value(c.m_red(0, 0)) <= real_value(c.m_red(1, 1)));
      for (auto& a : gens) CHECK_FALSE(prec(act(c.m_red, a), c.m_red));
      CHECK(reduce(c.m_red, D).m_red == c.m_red);
      CHECK(c.m_red(1, 0).norm() <= real_value(c.m_red(0, 0)) * real_value(c.m_red(1, 1)));
    }
  }
}

TEST_CASE("reduce agrees with exhaustive Gaussian orbit search") {
  int n = 0;
  for (long d1 = 0; d1 <= 2; ++d1)
    for (long d2 = 0; d2 <= 2; ++d2)
      for (auto& t : psd_family(d1, d2)) {
        if (!is_psd(t)) continue;
        CHECK(reduce(t, -4).m_red == gauss::orbit_minimum(t, 2));
        ++n;
      }
  CHECK(n > 30);
}

TEST_CASE("enumerate M") {
  auto z = enumerate_M({0, 0}, -4);
  REQUIRE(z.size() == 1);
  CHECK(z[0].is_zero());
  auto one = enumerate_M({4}, -4);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == FMat{{4}});
  // (1,1): orbit minima of all PSD matrices with that diagonal
  std::set<FMat> oracle;
  for (auto& t : psd_family(1, 1)) {
    if (!is_psd(t)) continue;
    FMat r = gauss::orbit_minimum(t, 2);
    if (sorted_diagonal(r) == tup({1, 1})) oracle.insert(r);
  }
  auto m11 = enumerate_M({1, 1}, -4);
  CHECK(std::set<FMat>(m11.begin(), m11.end()) == oracle);
  for (auto& m : m11) {
    CHECK(m(0, 1).norm() <= real_value(m(0, 0)) * real_value(m(1, 1)));
    CHECK(real_value(m(0, 0)) <= real_value(m(1, 1)));
  }
  CHECK(enumeration_shape({2, 3}) == 4);
  CHECK(enumeration_shape({0, 3}) == 1);
  CHECK(enumeration_shape({2, 3, 5}) == 16 * 9);
}

TEST_CASE("enumerate M in size 3") {
  auto m = enumerate_M({1, 1, 1}, -3);
  CHECK(!m.empty());
  bool has_id = false;
  for (auto& t : m) {
    has_id = has_id || t == FMat::identity(3);
    CHECK(is_psd(t));
    CHECK(is_dual_member(t, 1, -3));
  }
  CHECK(has_id);
}
