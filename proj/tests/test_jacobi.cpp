#include <functional>
#include <set>

#include "doctest.h"
#include "hermikit/jacobi.hpp"
#include "test_util.hpp"

using namespace hermikit;

namespace {

QMat e8_cartan() {
  // Bourbaki labelling, node 2 attached to node 4
  QMat c = QMat::identity(8) * Q(2);
  int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (auto& e : edges) c(e[0], e[1]) = c(e[1], e[0]) = -1;
  return c;
}

// E8 vectors of squared length 2n in the even coordinate model: D8 together
// with D8 + (1/2, ..., 1/2). Returns counts of <x, v> for v = e1 + e2.
std::map<long, long> e8_oracle(long n) {
  std::map<long, long> out;
  long two_n = 2 * n;
  // work with y = 2x, integer entries of one parity, sum(y^2) = 8n
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<long> y(8, 0);
    std::vector<long> vals;
    for (long t = -6; t <= 6; ++t)
      if ((t & 1) == parity) vals.push_back(t);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rem) {
      if (i == 8) {
        if (rem != 0) return;
        long s = 0;
        for (long t : y) s += t;
        if (s % 4 != 0) return;  // sum of x even
        out[(y[0] + y[1]) / 2]++;
        return;
      }
      for (long t : vals)
        if (t * t <= rem) {
          y[i] = t;
          rec(i + 1, rem - t * t);
        }
    };
    rec(0, 4 * two_n);
  }
  return out;
}

std::map<long, long> r_counts(const JacobiExpansion& phi, long n) {
  std::map<long, long> out;
  for (auto& [k, c] : phi.coeffs)
    if (k.first == n) out[k.second[0]] += to_long(c.to_rational().get_num());
  return out;
}

JacobiExpansion single(long n, IVec r, QMat m, long n_max) {
  JacobiExpansion phi;
  phi.index = JacobiIndex(std::move(m));
  phi.n_max = n_max;
  phi.add(n, r, CycNum(1));
  return phi;
}

}  // namespace

TEST_CASE("index and support") {
  CHECK_THROWS(JacobiIndex(QMat{{make_q(1, 2)}}));
  CHECK_THROWS(JacobiIndex(QMat{{1, make_q(1, 3)}, {make_q(1, 3), 1}}));
  CHECK(JacobiIndex(QMat{{1, make_q(1, 2)}, {make_q(1, 2), 1}}).pd());
  JacobiIndex one(QMat{{1}});
  CHECK(support_ok(0, {0}, one));
  CHECK(support_ok(1, {2}, one));
  CHECK_FALSE(support_ok(0, {1}, one));
  CHECK(support_ok(0, {0, 0}, JacobiIndex(QMat(2, 2))));
  // pd index: PSD block iff 4n >= m^{-1}[r]
  JacobiIndex a2(QMat{{1, make_q(1, 2)}, {make_q(1, 2), 1}});
  QMat mi = inverse(a2.matrix());
  for (long n = 0; n <= 3; ++n)
    for (long x = -5; x <= 5; ++x)
      for (long y = -5; y <= 5; ++y) CHECK(support_ok(n, {x, y}, a2) == (4 * n >= qform(mi, {x, y})));
}

TEST_CASE("ord") {
  JacobiExpansion zero;
  zero.index = JacobiIndex(QMat{{1}});
  CHECK_FALSE(ord(zero).has_value());
  CHECK(ord(single(3, {0}, QMat{{1}}, 5)) == 3);
  JacobiExpansion c = single(2, {1}, QMat{{1}}, 5);
  c.add(2, {1}, CycNum(-1));
  CHECK(c.coeffs.empty());
  CHECK_THROWS(c.coeff(6, {0}));
}

TEST_CASE("E8 theta") {
  QMat g = e8_cartan();
  QMat v(8, 1);
  v(0, 0) = 1;
  JacobiExpansion phi = lattice_theta_jacobi(g, v, 2);
  CHECK(phi.weight == 4);
  CHECK(phi.index.matrix() == QMat{{1}});
  CHECK(ord(phi) == 0);
  CHECK(phi.coeff(0, {0}) == CycNum(1));
  CHECK(phi.holomorphic_support());
  for (long n = 1; n <= 2; ++n) CHECK(r_counts(phi, n) == e8_oracle(n));
  long total = 0;
  for (auto& [r, c] : r_counts(phi, 1)) total += c;
  CHECK(total == 240);
  for (auto& [k, c] : phi.coeffs) {
    IVec neg = k.second;
    for (auto& x : neg) x = -x;
    CHECK(phi.coeff(k.first, neg) == c);
  }
  CHECK_THROWS(lattice_theta_jacobi(QMat{{1}}, QMat{{1}}, 1));
  CHECK_THROWS(lattice_theta_jacobi(QMat{{2, 3}, {3, 2}}, QMat{{1}, {0}}, 1));
  CHECK_THROWS(lattice_theta_jacobi(QMat{{2}}, QMat{{1}}, 1));
}

TEST_CASE("specialize") {
  QMat g = e8_cartan();
  QMat v(8, 1);
  v(0, 0) = 1;
  JacobiExpansion phi = lattice_theta_jacobi(g, v, 2);
  QExpansion f = specialize(phi, {0}, {0});
  CHECK(f.terms.size() == 3);
  CHECK(f.terms.at(0) == CycNum(1));
  CHECK(f.terms.at(1) == CycNum(240));
  CHECK(f.terms.at(2) == CycNum(2160));
  CHECK(f.exp_max == 3);

  QExpansion s = specialize(single(1, {0}, QMat{{1}}, 1), {make_q(1, 2)}, {0});
  CHECK(s.terms.size() == 1);
  CHECK(s.terms.begin()->first == make_q(5, 4));
  CHECK(s.terms.begin()->second == CycNum(1));

  // linearity and the exp_max bound against a deeper truncation
  JacobiIndex a2(QMat{{1, make_q(1, 2)}, {make_q(1, 2), 1}});
  JacobiExpansion x = symmetrize_synthetic(a2, 1, 3), y = symmetrize_synthetic(a2, 2, 3);
  JacobiExpansion deep = symmetrize_synthetic(a2, 1, 8);
  JacobiExpansion sum = x;
  for (auto& [k, c] : y.coeffs) sum.add(k.first, k.second, c * make_q(3));
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    QVec a{make_q(testutil::rand_int(rng, 0, 3), 4), make_q(testutil::rand_int(rng, 0, 2), 3)};
    QVec b{make_q(testutil::rand_int(rng, 0, 3), 4), make_q(testutil::rand_int(rng, 0, 5), 6)};
    QExpansion fx = specialize(x, a, b), fy = specialize(y, a, b), fs = specialize(sum, a, b);
    std::map<Q, CycNum> lin = fx.terms;
    for (auto& [e, c] : fy.terms) lin[e] += c * make_q(3);
    for (auto& [e, c] : lin) {
      auto it = fs.terms.find(e);
      CHECK((it == fs.terms.end() ? c.is_zero() : it->second == c));
    }
    for (auto& [e, c] : fs.terms) CHECK(e >= 0);
    // terms below exp_max agree with a longer expansion
    QExpansion fd = specialize(deep, a, b);
    for (auto& [e, c] : fd.terms)
      if (e < fx.exp_max) {
        auto it = fx.terms.find(e);
        REQUIRE(it != fx.terms.end());
        CHECK(it->second == c);
      }
  }
}

TEST_CASE("elliptic map") {
  JacobiIndex a2(QMat{{1, make_q(1, 2)}, {make_q(1, 2), 1}});
  JacobiExpansion phi = symmetrize_synthetic(a2, 7, 3);
  JacobiExpansion same = elliptic_map(phi, QMat::identity(2));
  CHECK(same.agrees_with(phi));
  JacobiExpansion col = elliptic_map(phi, QMat{{0}, {0}});
  CHECK(col.index.matrix() == QMat{{0}});
  for (long n = 0; n <= 3; ++n) {
    CycNum total;
    for (auto& [k, c] : phi.coeffs)
      if (k.first == n) total += c;
    CHECK(col.coeff(n, {0}) == total);
  }
  QMat s{{1, 1}, {0, 1}}, si{{1, -1}, {0, 1}}, t{{2, 0}, {-1, 1}};
  CHECK(elliptic_map(elliptic_map(phi, s), si).agrees_with(phi));
  CHECK(elliptic_map(elliptic_map(phi, s), t).agrees_with(elliptic_map(phi, s * t)));
  QMat u{{1}, {2}};
  CHECK(elliptic_map(elliptic_map(phi, t), u).agrees_with(elliptic_map(phi, t * u)));
  CHECK(elliptic_map(phi, s).holomorphic_support());
}

TEST_CASE("synthetic data") {
  JacobiIndex one(QMat{{1}});
  JacobiExpansion phi = symmetrize_synthetic(one, 3, 5);
  CHECK(phi.coeff(1, {0}) == phi.coeff(2, {2}));
  CHECK_FALSE(phi.coeff(1, {0}).is_zero());
  CHECK(phi.coeff(5, {4}) == phi.coeff(1, {0}));
  CHECK(phi.holomorphic_support());
  CHECK(symmetrize_synthetic(one, 3, 5).agrees_with(phi));
  JacobiIndex a2(QMat{{1, make_q(1, 2)}, {make_q(1, 2), 1}});
  JacobiExpansion psi = symmetrize_synthetic(a2, 5, 4);
  CHECK(psi.holomorphic_support());
  QMat mi = inverse(a2.matrix());
  // every stored term is invariant along r -> r + 2 m lambda within range
  for (auto& [k, c] : psi.coeffs)
    for (long a = -1; a <= 1; ++a)
      for (long b = -1; b <= 1; ++b) {
        IVec r{k.second[0] + 2 * a + b, k.second[1] + a + 2 * b};
        Q shift = (qform(mi, {r[0], r[1]}) - qform(mi, {k.second[0], k.second[1]})) / 4;
        REQUIRE(is_integer(shift));
        long n = k.first + to_long(shift.get_num());
        if (n <= psi.n_max) CHECK(psi.coeff(n, r) == c);
      }
}

TEST_CASE("voronoi") {
  auto v3 = voronoi(JacobiIndex(QMat::diagonal({1, 2, 3})));
  CHECK(v3.extreme_points.size() == 8);
  auto v1 = voronoi(JacobiIndex(QMat{{5}}));
  CHECK(v1.extreme_points == std::vector<QVec>{{make_q(-1, 2)}, {make_q(1, 2)}});
  QMat a{{2, 1}, {1, 2}};
  auto hex = voronoi(JacobiIndex(a));
  Q t = make_q(1, 3), tt = make_q(2, 3);
  std::set<QVec> expect{{t, t}, {-t, -t}, {t, -tt}, {-t, tt}, {tt, -t}, {-tt, t}};
  CHECK(std::set<QVec>(hex.extreme_points.begin(), hex.extreme_points.end()) == expect);
  CHECK_THROWS(voronoi(JacobiIndex(QMat{{2, 1, 0}, {1, 2, 0}, {0, 0, 2}})));
  CHECK_THROWS(voronoi(JacobiIndex(QMat{{1, 1}, {1, 1}})));

  // brute-force: extreme points lie in the cell, at least two independent
  // tight constraints, and the set is symmetric
  std::vector<QMat> forms{a, QMat{{1, make_q(1, 2)}, {make_q(1, 2), 3}}, QMat{{2, make_q(-1, 2)}, {make_q(-1, 2), 1}},
                          QMat{{3, make_q(5, 2)}, {make_q(5, 2), 3}}};
  for (auto& m : forms) {
    auto vd = voronoi(JacobiIndex(m));
    CHECK(vd.extreme_points.size() >= 4);
    std::set<QVec> all(vd.extreme_points.begin(), vd.extreme_points.end());
    for (auto& s : vd.extreme_points) {
      CHECK(all.count({-s[0], -s[1]}));
      Q ms = qform(m, s);
      std::vector<QVec> tight;
      for (long x = -4; x <= 4; ++x)
        for (long y = -4; y <= 4; ++y) {
          Q v = qform(m, {s[0] + x, s[1] + y});
          CHECK(ms <= v);
          if ((x || y) && v == ms) tight.push_back({Q(x), Q(y)});
        }
      bool independent = false;
      for (auto& p : tight)
        for (auto& q : tight)
          if (p[0] * q[1] != p[1] * q[0]) independent = true;
      CHECK(independent);
    }
  }
}

TEST_CASE("vanishing order bounds") {
  JacobiIndex one(QMat{{1}}), two(QMat{{2}});
  CHECK(ord_lower_bound(3, one, {0}) == 3);
  CHECK(ord_lower_bound(0, one, {make_q(1, 2)}) == make_q(-1, 4));
  CHECK(ord_lower_bound(2, two, {make_q(1, 3)}) == 2 - make_q(4, 9));
  CHECK(ord_lower_bound(0, JacobiIndex(QMat{{2, 1}, {1, 2}}), {0, 0}) == 0);

  // general bound equals the closed form for diagonal m
  std::mt19937_64 rng(12);
  for (int it = 0; it < 200; ++it) {
    std::size_t h = static_cast<std::size_t>(testutil::rand_int(rng, 1, 3));
    std::vector<Q> d(h);
    QVec alpha(h);
    for (std::size_t i = 0; i < h; ++i) {
      d[i] = testutil::rand_int(rng, 1, 6);
      long den = testutil::rand_int(rng, 1, 12);
      alpha[i] = make_q(testutil::rand_int(rng, 0, den), den);
    }
    JacobiIndex m(QMat::diagonal(d));
    CHECK(ord_lower_bound(1, m, alpha) == ord_lower_bound_diagonal(1, m, alpha));
  }

  // independent maximization over a wide lambda box
  std::vector<QMat> forms{QMat{{2, 1}, {1, 2}}, QMat{{1, make_q(1, 2)}, {make_q(1, 2), 3}},
                          QMat{{3, make_q(5, 2)}, {make_q(5, 2), 3}}};
  for (auto& mm : forms) {
    JacobiIndex m(mm);
    auto vd = voronoi(m);
    for (long num0 = 0; num0 < 4; ++num0)
      for (long num1 = 0; num1 < 3; ++num1) {
        QVec alpha{make_q(num0, 4), make_q(num1, 3)};
        Q best;
        bool first = true;
        for (auto& s : vd.extreme_points)
          for (long x = -6; x <= 6; ++x)
            for (long y = -6; y <= 6; ++y) {
              Q v = qform(mm, s) - qform(mm, {s[0] + x + alpha[0], s[1] + y + alpha[1]});
              if (first || v > best) best = v, first = false;
            }
        CHECK(ord_lower_bound(0, m, alpha) == -best);
      }
  }
}

TEST_CASE("specializations respect the vanishing bound") {
  std::vector<JacobiExpansion> forms;
  forms.push_back(symmetrize_synthetic(JacobiIndex(QMat{{1, make_q(1, 2)}, {make_q(1, 2), 1}}), 21, 4));
  forms.push_back(symmetrize_synthetic(JacobiIndex(QMat{{2}}), 22, 6));
  forms.push_back(symmetrize_synthetic(JacobiIndex(QMat::diagonal({1, 2})), 23, 4));
  QMat g = e8_cartan();
  QMat v(8, 2);
  v(0, 0) = 1;
  v(2, 1) = 1;  // adjacent roots: index [[1, -1/2], [-1/2, 1]]
  forms.push_back(lattice_theta_jacobi(g, v, 3));
  CHECK(forms.back().index.matrix() == QMat{{1, make_q(-1, 2)}, {make_q(-1, 2), 1}});
  for (auto& phi : forms) {
    std::size_t h = phi.index.size();
    long o = *ord(phi);
    std::vector<QVec> pts;
    for (long den = 1; den <= 4; ++den)
      for (long a0 = 0; a0 < den; ++a0)
        for (long b0 = 0; b0 < den; ++b0) {
          QVec al(h, 0), be(h, 0);
          al[0] = make_q(a0, den);
          be[0] = make_q(b0, den);
          if (h == 2) al[1] = make_q(b0, den), be[1] = make_q(a0, den);
          QExpansion f = specialize(phi, al, be);
          Q bound = ord_lower_bound(o, phi.index, al);
          for (auto& [e, c] : f.terms) CHECK(e >= bound);
        }
  }
}
