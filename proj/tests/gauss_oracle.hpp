#pragma once

// Brute-force orbit minimization for 2x2 Hermitian matrices over Z[i]
// (D = -4), written with plain integer arithmetic.

#include <algorithm>
#include <vector>

#include "hermikit/field.hpp"
#include "hermikit/linalg.hpp"

namespace gauss {

struct G {
  long re = 0, im = 0;
};
inline G operator+(G a, G b) { return {a.re + b.re, a.im + b.im}; }
inline G operator-(G a, G b) { return {a.re - b.re, a.im - b.im}; }
inline G operator*(G a, G b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline G cj(G a) { return {a.re, -a.im}; }
inline bool operator==(G a, G b) { return a.re == b.re && a.im == b.im; }

// 2m with m in MatD_2(O_F)^dual: diagonal even, off-diagonal in Z[i]
struct H2 {
  long d1, d2;  // 2 m_11, 2 m_22
  G x;          // 2 m_21
};

inline H2 from_fmat(const hermikit::FMat& m) {
  auto to_g = [](const hermikit::FieldElem& e) {
    // a + b w with w = -2 + i
    hermikit::Q re = e.a() - 2 * e.b(), im = e.b();
    re *= 2;
    im *= 2;
    return G{re.get_num().get_si(), im.get_num().get_si()};
  };
  hermikit::Q d1 = 2 * hermikit::real_value(m(0, 0)), d2 = 2 * hermikit::real_value(m(1, 1));
  return {d1.get_num().get_si(), d2.get_num().get_si(), to_g(m(1, 0))};
}

inline hermikit::FMat to_fmat(const H2& h) {
  auto to_f = [](G g) {
    // (re + im i)/2 with i = w + 2
    return hermikit::FieldElem(-4, hermikit::make_q(g.re + 2 * g.im, 2), hermikit::make_q(g.im, 2));
  };
  hermikit::FMat m(2, 2);
  m(0, 0) = hermikit::make_q(h.d1, 2);
  m(1, 1) = hermikit::make_q(h.d2, 2);
  m(1, 0) = to_f(h.x);
  m(0, 1) = to_f(cj(h.x));
  return m;
}

// v^D M v for a column v = (p, q)
inline long value(const H2& h, G p, G q) {
  // conj(p) d1 p + conj(q) d2 q + conj(q) x p + conj(p) conj(x) q
  G s = cj(p) * p * G{h.d1, 0} + cj(q) * q * G{h.d2, 0} + cj(q) * h.x * p + cj(p) * cj(h.x) * q;
  return s.re;
}

// m[u] for u = [[p1, p2], [q1, q2]]
inline H2 apply(const H2& h, G p1, G q1, G p2, G q2) {
  H2 r;
  r.d1 = value(h, p1, q1);
  r.d2 = value(h, p2, q2);
  // entry (2,1) = col2^D M col1
  G m11{h.d1, 0}, m22{h.d2, 0};
  G mc1_0 = m11 * p1 + cj(h.x) * q1;  // (M col1)_0
  G mc1_1 = h.x * p1 + m22 * q1;      // (M col1)_1
  r.x = cj(p2) * mc1_0 + cj(q2) * mc1_1;
  return r;
}

// The key-minimal element of {m[u] : u in GL_2(Z[i]), det u = +-1, entries with |re|,|im| <= box}.
inline hermikit::FMat orbit_minimum(const hermikit::FMat& m, long box) {
  H2 h = from_fmat(m);
  std::vector<G> vs;
  for (long a = -box; a <= box; ++a)
    for (long b = -box; b <= box; ++b) vs.push_back({a, b});
  long first = std::min(h.d1, h.d2);
  std::vector<H2> cands;
  long best1 = first + 1, best2 = 0;
  for (auto p1 : vs)
    for (auto q1 : vs) {
      long v1 = value(h, p1, q1);
      if (v1 > first || v1 > best1) continue;
      for (auto p2 : vs)
        for (auto q2 : vs) {
          G d = p1 * q2 - p2 * q1;
          if (!((d.re == 1 || d.re == -1) && d.im == 0)) continue;
          long v2 = value(h, p2, q2);
          if (v2 < v1) continue;
          if (v1 < best1 || (v1 == best1 && v2 < best2)) {
            best1 = v1;
            best2 = v2;
            cands.clear();
          }
          if (v1 == best1 && v2 == best2) cands.push_back(apply(h, p1, q1, p2, q2));
        }
    }
  hermikit::FMat best = to_fmat(cands.front());
  for (auto& c : cands) {
    auto f = to_fmat(c);
    if (f < best) best = f;
  }
  return best;
}

}  // namespace gauss
