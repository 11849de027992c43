#include "hermikit/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "hermikit/lattice.hpp"

namespace hermikit {

bool prec(const std::vector<Q>& a, const std::vector<Q>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("prec: length mismatch");
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Q> sorted_diagonal(const FMat& m) {
  std::vector<Q> d;
  for (std::size_t i = 0; i < m.rows(); ++i) d.push_back(real_value(m(i, i)));
  std::sort(d.begin(), d.end());
  return d;
}

bool prec(const FMat& a, const FMat& b) { return prec(sorted_diagonal(a), sorted_diagonal(b)); }

bool reduction_key_less(const FMat& a, const FMat& b) {
  auto da = sorted_diagonal(a), db = sorted_diagonal(b);
  if (da != db) return prec(da, db);
  return a < b;
}

Q entry_ratio(const FMat& m) {
  Q c = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Q d = real_value(m(i, i)) + 1;
    for (std::size_t j = i + 1; j < m.cols(); ++j) c = std::max<Q>(c, m(i, j).norm() / (d * d));
  }
  return c;
}

std::vector<FMat> reduction_generators(std::size_t h, long D) {
  std::vector<FMat> gens;
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i + 1; j < h; ++j) gens.push_back(permutation_swap(h, i, j));
  auto diags = unit_diagonals(h, D);
  gens.insert(gens.end(), diags.begin() + 1, diags.end());
  FieldElem w = FieldElem::omega(D);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      if (i == j) continue;
      for (const FieldElem& r : {FieldElem(1), FieldElem(-1), w, -w}) gens.push_back(elementary(h, i, j, r));
    }
  return gens;
}

int default_search_bound(std::size_t h) {
  if (h <= 1) return 0;
  if (h == 2) return 6;
  if (h == 3) return 4;
  return 3;
}

namespace {

using Vec = std::vector<long>;

// Search engine on L*m in integer (a, b) coordinates, L clearing all denominators.
// Permutations and unit rescalings (the finite group W) are applied as a
// normalization of every state; words count elementary generators only.
struct Engine {
  std::size_t h;
  long D, N;
  struct WAct {
    std::vector<std::size_t> perm;
    std::vector<std::pair<long, long>> unit;
  };
  struct EAct {
    std::size_t i, j;
    long ra, rb;
  };
  std::vector<WAct> w;
  std::vector<FMat> w_mats;
  std::vector<EAct> e;
  std::vector<FMat> e_mats;

  Engine(std::size_t h_, long D_) : h(h_), D(D_) {
    N = (D * D - D) / 4;
    auto perms = permutation_matrices(h);
    auto diags = unit_diagonals(h, D);
    // unit diagonals differing by a scalar act identically
    std::vector<FMat> reps;
    std::set<std::vector<FieldElem>> normal;
    for (auto& d : diags) {
      std::vector<FieldElem> v;
      FieldElem inv = d(0, 0).inverse();
      for (std::size_t i = 0; i < h; ++i) v.push_back(d(i, i) * inv);
      if (normal.insert(v).second) reps.push_back(d);
    }
    for (auto& p : perms)
      for (auto& d : reps) {
        WAct a;
        a.perm.resize(h);
        for (std::size_t i = 0; i < h; ++i)
          for (std::size_t k = 0; k < h; ++k)
            if (p(k, i) == FieldElem(1)) a.perm[i] = k;
        for (std::size_t i = 0; i < h; ++i) a.unit.emplace_back(to_long(d(i, i).a().get_num()), to_long(d(i, i).b().get_num()));
        w.push_back(a);
        w_mats.push_back(p * d);
      }
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        if (i == j) continue;
        for (auto [ra, rb] : {std::pair<long, long>{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
          e.push_back({i, j, ra, rb});
          e_mats.push_back(elementary(h, i, j, FieldElem(D, ra, rb)));
        }
      }
  }

  std::pair<long, long> mul(long a, long b, long c, long d) const { return {a * c - b * d * N, a * d + b * c + b * d * D}; }
  std::pair<long, long> cj(long a, long b) const { return {a + b * D, -b}; }

  long& ca(Vec& v, std::size_t i, std::size_t j) const { return v[2 * (i * h + j)]; }
  long& cb(Vec& v, std::size_t i, std::size_t j) const { return v[2 * (i * h + j) + 1]; }
  long diag(const Vec& v, std::size_t i) const { return v[2 * (i * h + i)]; }

  Vec apply_w(const Vec& x, const WAct& a) const {
    Vec y(x.size());
    for (std::size_t k = 0; k < h; ++k)
      for (std::size_t l = 0; l < h; ++l) {
        std::size_t src = 2 * (a.perm[k] * h + a.perm[l]);
        auto [uka, ukb] = cj(a.unit[k].first, a.unit[k].second);
        auto [pa, pb] = mul(uka, ukb, x[src], x[src + 1]);
        auto [qa, qb] = mul(pa, pb, a.unit[l].first, a.unit[l].second);
        y[2 * (k * h + l)] = qa;
        y[2 * (k * h + l) + 1] = qb;
      }
    return y;
  }

  Vec apply_e(Vec x, const EAct& g) const {
    for (std::size_t k = 0; k < h; ++k) {
      auto [pa, pb] = mul(ca(x, k, g.i), cb(x, k, g.i), g.ra, g.rb);
      ca(x, k, g.j) += pa;
      cb(x, k, g.j) += pb;
    }
    auto [ra, rb] = cj(g.ra, g.rb);
    for (std::size_t k = 0; k < h; ++k) {
      auto [pa, pb] = mul(ra, rb, ca(x, g.i, k), cb(x, g.i, k));
      ca(x, g.j, k) += pa;
      cb(x, g.j, k) += pb;
    }
    return x;
  }

  long trace(const Vec& x) const {
    long t = 0;
    for (std::size_t i = 0; i < h; ++i) t += diag(x, i);
    return t;
  }

  // sorted diagonal first, then coordinates row-major
  bool less(const Vec& x, const Vec& y) const {
    Vec dx, dy;
    for (std::size_t i = 0; i < h; ++i) {
      dx.push_back(diag(x, i));
      dy.push_back(diag(y, i));
    }
    std::sort(dx.begin(), dx.end());
    std::sort(dy.begin(), dy.end());
    if (dx != dy) return dx < dy;
    return x < y;
  }

  std::pair<Vec, std::size_t> canon(const Vec& x) const {
    Vec best;
    std::size_t bi = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      bool asc = true;
      for (std::size_t i = 1; i < h && asc; ++i) asc = diag(x, w[k].perm[i - 1]) <= diag(x, w[k].perm[i]);
      if (!asc) continue;
      Vec y = apply_w(x, w[k]);
      if (best.empty() || y < best) {
        best = std::move(y);
        bi = k;
      }
    }
    return {best, bi};
  }
};

struct Scaled {
  Vec v;
  Z L;
};

Scaled to_scaled(const FMat& m) {
  Z L = 1;
  for (auto& x : m.data()) {
    L = lcm(L, x.a().get_den());
    L = lcm(L, x.b().get_den());
  }
  Scaled s{{}, L};
  for (auto& x : m.data()) {
    s.v.push_back(to_long(Q(x.a() * L).get_num()));
    s.v.push_back(to_long(Q(x.b() * L).get_num()));
  }
  return s;
}

FMat from_scaled(const Vec& v, const Z& L, std::size_t h, long D) {
  FMat m(h, h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      Q a(v[2 * (i * h + j)], L), b(v[2 * (i * h + j) + 1], L);
      a.canonicalize();
      b.canonicalize();
      m(i, j) = (i == j || b == 0) ? FieldElem(a) : FieldElem(D, a, b);
    }
  return m;
}

struct SearchResult {
  Vec best;
  FMat u;
  std::size_t states;
};

// One bounded search round from x (already normalized), with x = m[u0].
SearchResult search_round(const Engine& en, const Vec& x, const FMat& u0, int bound, long limit) {
  std::map<Vec, std::size_t> index;
  std::vector<Vec> states{x};
  std::vector<std::size_t> parent{0}, via_e{0}, via_w{0};
  index.emplace(x, 0);
  std::vector<std::size_t> frontier{0};
  for (int depth = 0; depth < bound; ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t s : frontier)
      for (std::size_t g = 0; g < en.e.size(); ++g) {
        Vec y = en.apply_e(states[s], en.e[g]);
        if (en.trace(y) > limit) continue;
        auto [c, wi] = en.canon(y);
        if (index.count(c)) continue;
        index.emplace(c, states.size());
        states.push_back(std::move(c));
        parent.push_back(s);
        via_e.push_back(g);
        via_w.push_back(wi);
        next.push_back(states.size() - 1);
      }
    frontier = std::move(next);
  }
  std::size_t best = 0;
  for (std::size_t s = 1; s < states.size(); ++s)
    if (en.less(states[s], states[best])) best = s;
  std::vector<std::size_t> chain;
  for (std::size_t s = best; s != 0; s = parent[s]) chain.push_back(s);
  FMat u = u0;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) u = u * en.e_mats[via_e[*it]] * en.w_mats[via_w[*it]];
  return {states[best], u, states.size()};
}

struct Reduction {
  Vec v;
  FMat u;
  std::size_t states = 0;
};

// Rounds repeat from the current best until the bounded search finds nothing
// smaller, so the output is a fixed point.
Reduction run_reduction(const Engine& en, const Vec& x, const Z& L, long base_trace, long maxdiag, int bound) {
  auto [c, wi] = en.canon(x);
  Reduction r{c, en.w_mats[wi], 0};
  long limit = 2 * base_trace + 2 * en.N * (maxdiag + to_long(L));
  while (true) {
    auto sr = search_round(en, r.v, r.u, bound, limit);
    r.states += sr.states;
    if (sr.best == r.v) break;
    r.v = std::move(sr.best);
    r.u = std::move(sr.u);
  }
  return r;
}

}  // namespace

ReducedCertificate reduce(const FMat& m, long D, int bound) {
  if (!is_hermitian(m) || !is_psd(m)) throw std::invalid_argument("reduce: input is not positive semi-definite");
  std::size_t h = m.rows();
  if (bound < 0) bound = default_search_bound(h);
  ReducedCertificate cert;
  cert.search_bound = bound;
  if (h <= 1) {
    cert.m_red = m;
    cert.u = FMat::identity(h);
    cert.entry_constant = entry_ratio(m);
    cert.states = 1;
    return cert;
  }
  Engine en(h, D);
  auto sc = to_scaled(m);
  long maxdiag = 0;
  for (std::size_t i = 0; i < h; ++i) maxdiag = std::max(maxdiag, en.diag(sc.v, i));
  auto r = run_reduction(en, sc.v, sc.L, en.trace(sc.v), maxdiag, bound);
  cert.m_red = from_scaled(r.v, sc.L, h, D);
  cert.u = r.u;
  cert.entry_constant = entry_ratio(cert.m_red);
  cert.states = r.states;
  return cert;
}

bool is_reduced(const FMat& m, long D, int bound) { return reduce(m, D, bound).m_red == m; }

namespace {

// Elements x of the inverse different with norm(x) <= bound, as y / sqrt(D), y in O_F.
std::vector<FieldElem> inverse_different_ball(long D, const Q& bound) {
  Q n = FieldDisc(D).omega_norm();
  QMat A{{1, make_q(D, 2)}, {make_q(D, 2), n}};
  FieldElem s = sqrt_disc(D);
  std::vector<FieldElem> out;
  for (auto& p : enumerate_ellipsoid(A, bound * (-D))) out.push_back(FieldElem(D, p.k[0], p.k[1]) / s);
  return out;
}

}  // namespace

std::vector<FMat> enumerate_M(const std::vector<long>& diag, long D, int bound) {
  std::size_t h = diag.size();
  if (h == 0 || h > 3) throw std::out_of_range("enumerate_M: size must be 1..3");
  std::vector<long> d = diag;
  std::sort(d.begin(), d.end());
  if (d[0] < 0) throw std::invalid_argument("enumerate_M: negative diagonal");
  if (d.back() > 10) throw std::out_of_range("enumerate_M: diagonal entries above 10");

  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<std::vector<FieldElem>> choices;
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i + 1; j < h; ++j) {
      slots.emplace_back(i, j);
      choices.push_back(inverse_different_ball(D, Q(d[i] * d[j])));
    }

  if (bound < 0) bound = default_search_bound(h);
  Engine en(h, D);
  std::set<FMat> out;
  std::vector<std::size_t> idx(slots.size(), 0);
  while (true) {
    FMat t(h, h);
    for (std::size_t i = 0; i < h; ++i) t(i, i) = d[i];
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [i, j] = slots[s];
      t(j, i) = choices[s][idx[s]];
      t(i, j) = t(j, i).conj();
    }
    if (h == 1) {
      out.insert(t);
    } else if (is_psd(t)) {
      auto sc = to_scaled(t);
      // cheap local tests before the full orbit search
      bool local = en.canon(sc.v).first == sc.v;
      for (std::size_t g = 0; g < en.e.size() && local; ++g)
        if (en.less(en.canon(en.apply_e(sc.v, en.e[g])).first, sc.v)) local = false;
      if (local) {
        long maxdiag = 0;
        for (std::size_t i = 0; i < h; ++i) maxdiag = std::max(maxdiag, en.diag(sc.v, i));
        if (run_reduction(en, sc.v, sc.L, en.trace(sc.v), maxdiag, bound).v == sc.v) out.insert(t);
      }
    }
    std::size_t k = 0;
    while (k < slots.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == slots.size()) break;
  }
  return {out.begin(), out.end()};
}

Q enumeration_shape(const std::vector<long>& diag) {
  std::vector<long> d = diag;
  std::sort(d.begin(), d.end());
  std::size_t h = d.size();
  Q s = 1;
  for (std::size_t i = 1; i <= h; ++i) s *= pow_q(Q(std::max(1L, d[i - 1])), 2 * h - 2 * i);
  return s;
}

}  // namespace hermikit
