#include "hermikit/sfjs.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "hermikit/intmat.hpp"
#include "hermikit/lattice.hpp"

namespace hermikit {

namespace {

int cmp_q(const Q& x, const Q& y) { return x < y ? -1 : (y < x ? 1 : 0); }

FMat column_matrix(const std::vector<FieldElem>& v) { return FMat::column(v); }

std::vector<FieldElem> column_of(const FMat& m, std::size_t j) { return m.col(j); }

FMat unipotent(std::size_t rows, const FMat& x) {
  FMat u = FMat::identity(rows + x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) u(rows + i, j) = x(i, j);
  return u;
}

// det(conj a)^k for det a = +-1
Q det_power(const FMat& a, long k) {
  FieldElem d = det_f(a);
  if (d == FieldElem(1)) return 1;
  if (d == FieldElem(-1)) return k % 2 == 0 ? 1 : -1;
  throw std::invalid_argument("det(a) is not +-1");
}

std::size_t checked_pow(std::size_t base, std::size_t e) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (base && n > static_cast<std::size_t>(-1) / base) throw std::overflow_error("disc^g too large");
    n *= base;
  }
  return n;
}

}  // namespace

bool FMatLess::operator()(const FMat& x, const FMat& y) const {
  if (x.rows() != y.rows()) return x.rows() < y.rows();
  if (x.cols() != y.cols()) return x.cols() < y.cols();
  for (std::size_t i = 0; i < x.data().size(); ++i) {
    int c = cmp_q(x.data()[i].a(), y.data()[i].a());
    if (c == 0) c = cmp_q(x.data()[i].b(), y.data()[i].b());
    if (c != 0) return c < 0;
  }
  return false;
}

bool JKeyLess::operator()(const std::pair<FMat, FMat>& x, const std::pair<FMat, FMat>& y) const {
  FMatLess less;
  if (less(x.first, y.first)) return true;
  if (less(y.first, x.first)) return false;
  return less(x.second, y.second);
}

FMat hbracket(const FMat& t, const FMat& a) { return adjoint(a) * t * a; }

Q trace_real(const FMat& t) {
  Q s = 0;
  for (std::size_t i = 0; i < t.rows(); ++i) s += real_value(t(i, i));
  return s;
}

std::string to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::rational: return "rational";
    case ModuleKind::cyc: return "cyc";
    case ModuleKind::disc_algebra: return "disc-algebra";
  }
  return "";
}

ModuleKind module_kind_from_string(const std::string& s) {
  if (s == "rational") return ModuleKind::rational;
  if (s == "cyc") return ModuleKind::cyc;
  if (s == "disc-algebra") return ModuleKind::disc_algebra;
  throw std::invalid_argument("unknown coefficient module '" + s + "'");
}

ModValue ModValue::scalar(const CycNum& v) {
  ModValue m;
  m.add(0, v);
  return m;
}

ModValue ModValue::basis(std::size_t mu, const Q& coeff) {
  ModValue m;
  m.add(mu, CycNum(coeff));
  return m;
}

CycNum ModValue::slot(std::size_t mu) const {
  auto it = c.find(mu);
  return it == c.end() ? CycNum() : it->second;
}

void ModValue::add(std::size_t mu, const CycNum& v) {
  auto [it, fresh] = c.try_emplace(mu, v);
  if (!fresh) it->second += v;
  if (it->second.is_zero()) c.erase(it);
}

ModValue& ModValue::operator+=(const ModValue& o) {
  for (auto& [mu, v] : o.c) add(mu, v);
  return *this;
}

ModValue& ModValue::operator*=(const Q& s) {
  if (s == 0) {
    c.clear();
    return *this;
  }
  for (auto& [mu, v] : c) v *= s;
  return *this;
}

bool operator==(const ModValue& x, const ModValue& y) {
  for (auto& [mu, v] : x.c)
    if (y.slot(mu) != v) return false;
  for (auto& [mu, v] : y.c)
    if (!x.c.count(mu)) return false;
  return true;
}

ModValue rot_inverse_apply(const DiscForm& df, std::size_t g, const FMat& a, const ModValue& v) {
  int sign = rot_sign(df, a);
  ModValue out;
  for (auto& [idx, val] : v.c) {
    auto nu = act_right(df, weil_components(df, g, idx), a);
    out.add(weil_index(df, nu), val * Q(sign));
  }
  return out;
}

void HermJacobiExpansion::add(const FMat& n, const FMat& r, const ModValue& v) {
  FMat t = block_compose({n, r, index});
  if (!is_psd(t)) throw std::invalid_argument("HermJacobiExpansion: index outside the semi-definite support");
  if (v.is_zero()) return;
  auto [it, fresh] = coeffs.try_emplace({n, r}, v);
  if (!fresh) it->second += v;
  if (it->second.is_zero()) coeffs.erase(it);
}

ModValue HermJacobiExpansion::coeff(const FMat& n, const FMat& r) const {
  auto it = coeffs.find({n, r});
  return it == coeffs.end() ? ModValue() : it->second;
}

bool cusp_support_check(const HermJacobiExpansion& phi) {
  for (auto& [key, v] : phi.coeffs)
    if (!v.is_zero() && !is_pd(block_compose({key.first, key.second, phi.index}))) return false;
  return true;
}

HermJacobiExpansion drop_boundary(const HermJacobiExpansion& phi) {
  HermJacobiExpansion out = phi;
  out.coeffs.clear();
  for (auto& [key, v] : phi.coeffs)
    if (is_pd(block_compose({key.first, key.second, phi.index}))) out.coeffs.emplace(key, v);
  return out;
}

ModValue SFJSeries::coeff(const FMat& t) const {
  IndexBlocks b = block_decompose(t, cogenus);
  auto it = fj.find(b.m);
  return it == fj.end() ? ModValue() : it->second.coeff(b.n, b.r);
}

SFJSeries fj_slice(const SeriesHeader& header, const CoeffMap& coeffs, std::size_t h) {
  if (h > header.genus) throw std::invalid_argument("fj_slice: cogenus exceeds the genus");
  SFJSeries f;
  f.header = header;
  f.cogenus = h;
  for (auto& [t, v] : coeffs) {
    if (t.rows() != header.genus) throw std::invalid_argument("fj_slice: index of the wrong size");
    if (v.is_zero()) continue;
    IndexBlocks b = block_decompose(t, h);
    auto it = f.fj.find(b.m);
    if (it == f.fj.end()) {
      HermJacobiExpansion phi;
      phi.D = header.D;
      phi.genus_base = header.genus - h;
      phi.cogenus = h;
      phi.weight = header.weight;
      phi.index = b.m;
      phi.trunc = header.trunc - trace_real(b.m);
      it = f.fj.emplace(b.m, std::move(phi)).first;
    }
    it->second.add(b.n, b.r, v);
  }
  return f;
}

CoeffMap flatten(const SFJSeries& f) {
  CoeffMap out;
  for (auto& [m, phi] : f.fj)
    for (auto& [key, v] : phi.coeffs) out[block_compose({key.first, key.second, m})] += v;
  return out;
}

SFJSeries raise_cogenus(const SFJSeries& f, std::size_t h_prime) {
  if (h_prime == f.cogenus) return f;
  if (h_prime < f.cogenus || h_prime + 1 > f.header.genus)
    throw std::invalid_argument("raise_cogenus: need cogenus < h' <= genus - 1");
  return fj_slice(f.header, flatten(f), h_prime);
}

std::vector<FMat> gl_generators(std::size_t g, long D) {
  std::vector<FMat> out;
  std::set<FMat, FMatLess> seen;
  auto push = [&](const FMat& a) {
    if (seen.insert(a).second) out.push_back(a);
  };
  for (auto& p : permutation_matrices(g)) push(p);
  for (auto& u : unit_diagonals(g, D)) push(u);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      if (i != j) {
        push(elementary(g, i, j, FieldElem(1)));
        push(elementary(g, i, j, FieldElem::omega(D)));
      }
  return out;
}

SymmetryReport symmetry_check(const SeriesHeader& hd, const CoeffMap& coeffs, const std::vector<FMat>* focus,
                              std::size_t max_violations) {
  bool vector_valued = hd.module == ModuleKind::disc_algebra;
  if (vector_valued && !hd.disc) throw std::invalid_argument("symmetry_check: group-algebra series without a discriminant form");
  std::vector<FMat> gens;
  {
    std::set<FMat, FMatLess> seen;
    for (auto& a : gl_generators(hd.genus, hd.D))
      for (const FMat& b : {a, inverse(a)})
        if (seen.insert(b).second) gens.push_back(b);
  }
  // per generator: det(conj a)^k times the rot sign
  std::vector<Q> scale;
  for (auto& a : gens) scale.push_back(det_power(a, hd.weight) * (vector_valued ? rot_sign(*hd.disc, a) : 1));
  const ModValue none;
  auto lookup = [&](const FMat& t) -> const ModValue& {
    auto it = coeffs.find(t);
    return it == coeffs.end() ? none : it->second;
  };
  SymmetryReport rep;
  auto check = [&](const FMat& t, const ModValue& v) {
    for (std::size_t ai = 0; ai < gens.size(); ++ai) {
      const FMat& a = gens[ai];
      FMat ta = hbracket(t, a);
      if (trace_real(ta) > hd.trunc) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      ModValue expected;
      if (vector_valued) {
        for (auto& [idx, val] : v.c)
          expected.add(weil_index(*hd.disc, act_right(*hd.disc, weil_components(*hd.disc, hd.genus, idx), a)), val);
      } else {
        expected = v;
      }
      expected *= scale[ai];
      const ModValue& found = lookup(ta);
      if (expected != found) {
        rep.pass = false;
        if (rep.violations.size() < max_violations) rep.violations.push_back({t, a, expected, found});
      }
    }
  };
  if (focus) {
    for (auto& t : *focus) check(t, lookup(t));
  } else {
    for (auto& [t, v] : coeffs) check(t, v);
  }
  return rep;
}

SymmetryReport symmetry_check(const SFJSeries& f, std::size_t max_violations) {
  return symmetry_check(f.header, flatten(f), nullptr, max_violations);
}

ValidationReport validate(const SFJSeries& f) {
  ValidationReport out;
  const SeriesHeader& hd = f.header;
  auto problem = [&](std::string s) {
    out.pass = false;
    out.problems.push_back(std::move(s));
  };
  std::size_t slots = 1;
  if (hd.module == ModuleKind::disc_algebra) {
    if (!hd.disc) {
      problem("group-algebra coefficients need a discriminant form");
      return out;
    }
    slots = checked_pow(hd.disc->card(), hd.genus);
  }
  for (auto& [m, phi] : f.fj) {
    if (!is_psd(m)) problem("index m is not positive semi-definite");
    if (!is_dual_member(m, hd.level, hd.D)) problem("index m is not in the dual lattice at the declared level");
    for (auto& [key, v] : phi.coeffs) {
      FMat t = block_compose({key.first, key.second, m});
      if (!is_dual_member(t, hd.level, hd.D)) problem("index t is not in the dual lattice at the declared level");
      if (trace_real(t) > hd.trunc) problem("index t exceeds the truncation");
      for (auto& [mu, val] : v.c) {
        if (mu >= slots) problem("coefficient slot out of range");
        if (hd.module == ModuleKind::rational && !val.is_rational()) problem("non-rational coefficient in a rational series");
      }
    }
  }
  out.symmetry = symmetry_check(f);
  if (!out.symmetry.pass) problem("symmetry relation violated at " + std::to_string(out.symmetry.violations.size()) + "+ pairs");
  return out;
}

DiscIndexGroup::DiscIndexGroup(const FMat& m, std::size_t cols, long D) : m_(m), cols_(cols), D_(D) {
  if (!is_pd(m)) throw std::invalid_argument("disc_index_group: index not positive definite");
  std::size_t s = m.rows();
  FieldElem sd_inv = FieldElem(1) / sqrt_disc(D), w = FieldElem::omega(D);
  QMat p(2 * s, 2 * s), bm(2 * s, 2 * s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t e = 0; e < 2; ++e) {
      FieldElem scal = e == 0 ? FieldElem(1) : w;
      std::vector<FieldElem> v(s, FieldElem(0));
      v[i] = scal * sd_inv;
      auto zc = to_z_coords(v);
      std::vector<FieldElem> mv(s, FieldElem(0));
      for (std::size_t k = 0; k < s; ++k) mv[k] = m(k, i) * scal;
      auto zm = to_z_coords(mv);
      for (std::size_t k = 0; k < 2 * s; ++k) {
        p(k, 2 * i + e) = zc[k];
        bm(k, 2 * i + e) = zm[k];
      }
    }
  }
  p_inv_ = inverse(p);
  c_ = p_inv_ * bm;
  for (auto& x : c_.data())
    if (!is_integer(x)) throw std::invalid_argument("disc_index_group: m Mat(O_F) is not inside Mat(D_F^-1)");
  c_inv_ = inverse(c_);

  SmithForm sf = smith_normal_form(to_integer(c_));
  QMat uinv = inverse(to_rational(sf.U));
  std::vector<long> d(2 * s);
  for (std::size_t i = 0; i < 2 * s; ++i) {
    d[i] = to_long(abs(sf.S(i, i)));
    if (d[i] > 1) invariants_.push_back(d[i]);
  }
  std::vector<std::vector<Q>> canon;
  std::vector<long> y(2 * s, 0);
  while (true) {
    std::vector<Q> a(2 * s);
    for (std::size_t i = 0; i < 2 * s; ++i)
      for (std::size_t j = 0; j < 2 * s; ++j) a[i] += uinv(i, j) * y[j];
    std::vector<Q> f(2 * s), ac(2 * s);
    for (std::size_t i = 0; i < 2 * s; ++i)
      for (std::size_t j = 0; j < 2 * s; ++j) f[i] += c_inv_(i, j) * a[j];
    for (auto& x : f) x = frac(x);
    for (std::size_t i = 0; i < 2 * s; ++i)
      for (std::size_t j = 0; j < 2 * s; ++j) ac[i] += c_(i, j) * f[j];
    canon.push_back(ac);
    std::size_t i = 0;
    while (i < 2 * s && ++y[i] >= d[i]) y[i++] = 0;
    if (i == 2 * s) break;
  }
  // zero class first, the rest in lexicographic order
  std::sort(canon.begin(), canon.end(), [](const std::vector<Q>& x, const std::vector<Q>& y) {
    bool xz = std::all_of(x.begin(), x.end(), [](const Q& q) { return q == 0; });
    bool yz = std::all_of(y.begin(), y.end(), [](const Q& q) { return q == 0; });
    if (xz != yz) return xz;
    return x < y;
  });
  for (auto& ac : canon) {
    std::vector<Q> zc(2 * s);
    for (std::size_t i = 0; i < 2 * s; ++i)
      for (std::size_t j = 0; j < 2 * s; ++j) zc[i] += p(i, j) * ac[j];
    col_lookup_.emplace(ac, col_reps_.size());
    col_reps_.push_back(from_z_coords(zc, D));
  }
  std::size_t total = checked_pow(col_reps_.size(), cols);
  if (total > (1u << 20)) throw std::length_error("disc_index_group: group too large");
  reps_.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    FMat r(s, cols);
    std::size_t rest = idx;
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& v = col_reps_[rest % col_reps_.size()];
      rest /= col_reps_.size();
      for (std::size_t i = 0; i < s; ++i) r(i, j) = v[i];
    }
    reps_.push_back(std::move(r));
  }
}

std::size_t DiscIndexGroup::column_index(const std::vector<Q>& zc) const {
  std::size_t n = zc.size();
  std::vector<Q> a(n), f(n), ac(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i] += p_inv_(i, j) * zc[j];
  for (auto& x : a)
    if (!is_integer(x)) throw std::invalid_argument("DiscIndexGroup: entry outside the inverse different");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f[i] += c_inv_(i, j) * a[j];
  for (auto& x : f) x = frac(x);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ac[i] += c_(i, j) * f[j];
  return col_lookup_.at(ac);
}

std::size_t DiscIndexGroup::index_of(const FMat& r) const {
  if (r.rows() != m_.rows() || r.cols() != cols_) throw std::invalid_argument("DiscIndexGroup::index_of: wrong shape");
  std::size_t idx = 0;
  for (std::size_t j = cols_; j-- > 0;) idx = idx * col_reps_.size() + column_index(to_z_coords(column_of(r, j)));
  return idx;
}

DiscIndexGroup disc_index_group(const FMat& m, std::size_t cols, long D) { return DiscIndexGroup(m, cols, D); }

std::vector<FMat> coset_points(const DiscIndexGroup& grp, std::size_t mu, const Q& bound) {
  const FMat& m = grp.index();
  long D = grp.disc();
  std::size_t s = m.rows(), cols = grp.cols();
  FMat minv = inverse(m);
  QMat a = herm_z_gram(m, D) * make_q(1, 2);
  const FMat& r0 = grp.rep(mu);
  // per column: (r_j, m^{-1}[r_j])
  std::vector<std::vector<std::pair<std::vector<FieldElem>, Q>>> per_col(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<FieldElem> c = (minv * column_matrix(column_of(r0, j))).col(0);
    for (auto& pt : enumerate_ellipsoid(a, to_z_coords(c), bound)) {
      std::vector<Q> kq(pt.k.begin(), pt.k.end());
      auto lam = from_z_coords(kq, D);
      std::vector<FieldElem> r = column_of(r0, j);
      FMat ml = m * column_matrix(lam);
      for (std::size_t i = 0; i < s; ++i) r[i] += ml(i, 0);
      per_col[j].emplace_back(std::move(r), pt.value);
    }
  }
  std::vector<FMat> out;
  FMat cur(s, cols);
  std::function<void(std::size_t, Q)> rec = [&](std::size_t j, Q left) {
    if (j == cols) {
      out.push_back(cur);
      return;
    }
    for (auto& [r, v] : per_col[j]) {
      if (v > left) continue;
      for (std::size_t i = 0; i < s; ++i) cur(i, j) = r[i];
      rec(j + 1, left - v);
    }
  };
  rec(0, bound);
  return out;
}

HermJacobiExpansion herm_theta(const DiscIndexGroup& grp, std::size_t mu, const Q& trunc) {
  HermJacobiExpansion phi;
  phi.D = grp.disc();
  phi.genus_base = grp.cols();
  phi.cogenus = grp.index().rows();
  phi.weight = static_cast<long>(grp.index().rows());
  phi.index = grp.index();
  phi.trunc = trunc;
  FMat minv = inverse(grp.index());
  for (auto& r : coset_points(grp, mu, trunc)) phi.add(hbracket(minv, r), r, ModValue::scalar(1));
  return phi;
}

std::vector<ThetaComponent> theta_decompose(const SFJSeries& f, const FMat& m_prime) {
  const SeriesHeader& hd = f.header;
  std::size_t s = m_prime.rows(), g = hd.genus;
  if (s < 1 || s + 2 > g) throw std::invalid_argument("theta_decompose: need 1 <= size(m') <= genus - 2");
  if (!is_pd(m_prime)) throw std::invalid_argument("theta_decompose: m' not positive definite");
  bool vector_valued = hd.module == ModuleKind::disc_algebra;
  if (vector_valued && !hd.disc) throw std::invalid_argument("theta_decompose: group-algebra series without a discriminant form");
  std::size_t rows = g - s;
  DiscIndexGroup grp(m_prime, rows, hd.D);
  FMat minv = inverse(m_prime);
  std::vector<ThetaComponent> comps(grp.order());
  for (std::size_t mu = 0; mu < comps.size(); ++mu) comps[mu].mu = mu;
  for (auto& [t, v] : flatten(f)) {
    IndexBlocks b = block_decompose(t, s);
    if (b.m != m_prime) continue;
    std::size_t mu = grp.index_of(b.r);
    const FMat& r0 = grp.rep(mu);
    FMat lam = minv * (b.r - r0);
    if (!is_integral_matrix(lam)) throw std::logic_error("theta_decompose: coset shift not integral");
    FMat u = unipotent(rows, -lam);
    IndexBlocks b0 = block_decompose(hbracket(t, u), s);
    if (b0.r != r0) throw std::logic_error("theta_decompose: normalization missed the representative");
    FMat nprime = b0.n - hbracket(minv, r0);
    ModValue v0 = vector_valued ? rot_inverse_apply(*hd.disc, g, u, v) : v;
    auto [it, fresh] = comps[mu].expansion.try_emplace(nprime, v0);
    if (!fresh && it->second != v0) throw std::invalid_argument("theta_decompose: input is not invariant under u_lambda");
  }
  return comps;
}

HermJacobiExpansion theta_reassemble(const std::vector<ThetaComponent>& comps, const SFJSeries& f, const FMat& m_prime,
                                     const Q& trunc_n) {
  const SeriesHeader& hd = f.header;
  std::size_t s = m_prime.rows(), g = hd.genus, rows = g - s;
  bool vector_valued = hd.module == ModuleKind::disc_algebra;
  DiscIndexGroup grp(m_prime, rows, hd.D);
  FMat minv = inverse(m_prime);
  HermJacobiExpansion out;
  out.D = hd.D;
  out.genus_base = rows;
  out.cogenus = s;
  out.weight = hd.weight;
  out.index = m_prime;
  out.trunc = trunc_n;
  for (auto& comp : comps) {
    if (comp.expansion.empty()) continue;
    const FMat& r0 = grp.rep(comp.mu);
    std::vector<std::pair<FMat, FMat>> pts;  // (r, m^{-1}[r])
    for (auto& r : coset_points(grp, comp.mu, trunc_n)) pts.emplace_back(r, hbracket(minv, r));
    for (auto& [nprime, v] : comp.expansion) {
      Q left = trunc_n - trace_real(nprime);
      for (auto& [r, q] : pts) {
        if (trace_real(q) > left) continue;
        ModValue val = v;
        if (vector_valued) val = rot_inverse_apply(*hd.disc, g, unipotent(rows, minv * (r - r0)), v);
        out.add(nprime + q, r, val);
      }
    }
  }
  return out;
}

ReassemblyReport verify_theta_reassembly(const SFJSeries& f, const FMat& m_prime) {
  ReassemblyReport rep;
  auto comps = theta_decompose(f, m_prime);
  HermJacobiExpansion back = theta_reassemble(comps, f, m_prime, f.header.trunc - trace_real(m_prime));
  SFJSeries psi = fj_slice(f.header, flatten(f), m_prime.rows());
  auto it = psi.fj.find(m_prime);
  HermJacobiExpansion empty;
  const HermJacobiExpansion& want = it == psi.fj.end() ? empty : it->second;
  for (auto& [key, v] : want.coeffs) {
    ++rep.compared;
    if (back.coeff(key.first, key.second) != v) ++rep.mismatches;
  }
  for (auto& [key, v] : back.coeffs) {
    if (want.coeffs.count(key)) continue;
    ++rep.compared;
    ++rep.mismatches;
  }
  rep.exact = rep.mismatches == 0;
  return rep;
}

namespace {

// Coordinates scaled by a common denominator N: x_i = (a + b omega) / N.
struct LatVec {
  std::vector<long> x, gx;  // (a, b) pairs of x and G x
  Q norm;
  std::size_t cls;
};

// N^2 sum conj(x_i) y_i as (a, b); conj(a + b w)(c + d w) = (a + bD)c + bd w conj(w) + (ad - bc) w
std::pair<long, long> hdot(const std::vector<long>& x, const std::vector<long>& y, long D, long wn) {
  long re = 0, om = 0;
  for (std::size_t i = 0; i < x.size(); i += 2) {
    long a = x[i], b = x[i + 1], c = y[i], d = y[i + 1];
    re += (a + b * D) * c + b * d * wn;
    om += a * d - b * c;
  }
  return {re, om};
}

SFJSeries lattice_series(const FMat& G, long D, std::size_t g, const Q& trunc, std::size_t cogenus, bool dual) {
  if (!is_hermitian(G) || !is_pd(G)) throw std::invalid_argument("herm_lattice_theta: G must be positive definite Hermitian");
  if (!is_integral_matrix(G)) throw std::invalid_argument("herm_lattice_theta: G must have entries in O_F");
  std::size_t h = G.rows();
  SeriesHeader hd;
  hd.D = D;
  hd.genus = g;
  // the e_0 component is invariant under every unimodular a, so the scalar series records the even weight
  hd.weight = static_cast<long>(dual ? h : h + h % 2);
  hd.trunc = trunc;
  QMat gz = herm_z_gram(G, D);
  QMat form = gz * make_q(1, 2), to_x = QMat::identity(2 * h);
  if (dual) {
    DiscForm df = herm_disc(G, D);
    Z lvl = 1;
    for (auto& q : df.q_values()) lvl = lcm(lvl, q.get_den());
    hd.level = to_long(lvl);
    hd.module = ModuleKind::disc_algebra;
    to_x = inverse(gz);
    form = to_x * make_q(1, 2);
    hd.disc = std::move(df);
    hd.lattice = G;
  }
  std::vector<std::vector<FieldElem>> xs;
  std::vector<LatVec> vecs;
  Z den = 1;
  for (auto& pt : enumerate_ellipsoid(form, trunc)) {
    std::vector<Q> xz(2 * h);
    for (std::size_t i = 0; i < 2 * h; ++i)
      for (std::size_t j = 0; j < 2 * h; ++j) xz[i] += to_x(i, j) * pt.k[j];
    std::size_t cls = dual ? hd.disc->index_of_vector(xz) : 0;
    xs.push_back(from_z_coords(xz, D));
    for (auto& e : xs.back()) den = lcm(lcm(den, e.a().get_den()), e.b().get_den());
    vecs.push_back({{}, {}, pt.value, cls});
  }
  const long N = to_long(den), wn = to_long(FieldDisc(D).omega_norm().get_num());
  auto scaled = [&](const std::vector<FieldElem>& v) {
    std::vector<long> out;
    for (auto& e : v) {
      out.push_back(to_long(Q(e.a() * N).get_num()));
      out.push_back(to_long(Q(e.b() * N).get_num()));
    }
    return out;
  };
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    std::vector<FieldElem> gx(h);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) gx[i] += G(i, j) * xs[k][j];
    vecs[k].x = scaled(xs[k]);
    vecs[k].gx = scaled(gx);
  }
  std::stable_sort(vecs.begin(), vecs.end(), [](const LatVec& a, const LatVec& b) { return a.norm < b.norm; });
  // t = lam^D G lam, keyed by the scaled upper triangle
  std::map<std::vector<long>, ModValue> acc;
  std::vector<const LatVec*> pick(g);
  std::vector<long> key;
  std::function<void(std::size_t, const Q&)> rec = [&](std::size_t j, const Q& left) {
    if (j == g) {
      key.clear();
      std::vector<std::size_t> mu(g);
      for (std::size_t c = 0; c < g; ++c) {
        mu[c] = pick[c]->cls;
        for (std::size_t d = c; d < g; ++d) {
          auto [re, om] = hdot(pick[c]->x, pick[d]->gx, D, wn);
          key.push_back(re);
          key.push_back(om);
        }
      }
      acc[key] += ModValue::basis(dual ? weil_index(*hd.disc, mu) : 0);
      return;
    }
    for (auto& v : vecs) {
      if (v.norm > left) break;
      pick[j] = &v;
      rec(j + 1, Q(left - v.norm));
    }
  };
  rec(0, trunc);
  const Q n2 = Q(N) * N;
  CoeffMap coeffs;
  for (auto& [k, v] : acc) {
    FMat t(g, g);
    std::size_t p = 0;
    for (std::size_t c = 0; c < g; ++c)
      for (std::size_t d = c; d < g; ++d, p += 2) {
        Q a = k[p] / n2, b = k[p + 1] / n2;
        t(c, d) = b == 0 ? FieldElem(a) : FieldElem(D, a, b);
        if (d != c) t(d, c) = conj(t(c, d));
      }
    coeffs[t] += v;
  }
  rec(0, trunc);
  return fj_slice(hd, coeffs, cogenus);
}

}  // namespace

SFJSeries herm_lattice_theta(const FMat& G, long D, std::size_t g, const Q& trunc, std::size_t cogenus) {
  return lattice_series(G, D, g, trunc, cogenus, true);
}

SFJSeries herm_lattice_theta_scalar(const FMat& G, long D, std::size_t g, const Q& trunc, std::size_t cogenus) {
  return lattice_series(G, D, g, trunc, cogenus, false);
}

}  // namespace hermikit
