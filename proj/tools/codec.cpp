#include "codec.hpp"

#include <fstream>

#include "hermikit/field.hpp"
#include "hermikit/hermitian.hpp"

namespace hermikit::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw JsonError(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(at(path, key), "missing field");
  return *it;
}

const json& array_of(const json& j, const std::string& path) {
  if (!j.is_array()) throw JsonError(path, "expected an array");
  return j;
}

std::vector<long> int_list(const json& j, const std::string& path) {
  std::vector<long> v;
  std::size_t i = 0;
  for (auto& x : array_of(j, path)) v.push_back(integer_from(x, at(path, i++)));
  return v;
}

json rational_list(const std::vector<Q>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_json(x));
  return a;
}

std::vector<Q> rational_list_from(const json& j, const std::string& path) {
  std::vector<Q> v;
  std::size_t i = 0;
  for (auto& x : array_of(j, path)) v.push_back(rational_from(x, at(path, i++)));
  return v;
}

template <class T, class F>
Matrix<T> matrix_from(const json& j, const std::string& path, F entry) {
  array_of(j, path);
  std::size_t r = j.size(), c = 0;
  for (std::size_t i = 0; i < r; ++i) {
    array_of(j[i], at(path, i));
    if (i == 0) c = j[i].size();
    if (j[i].size() != c) throw JsonError(at(path, i), "ragged matrix row");
  }
  Matrix<T> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = entry(j[i][k], at(at(path, i), k));
  return m;
}

long disc_from(const json& j, const std::string& path) {
  long D = integer_from(j, path);
  if (!is_field_discriminant(D) || D >= 0) throw JsonError(path, "not an imaginary quadratic discriminant");
  return D;
}

}  // namespace

json to_json(const Q& x) { return to_string(x); }

Q rational_from(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Q(j.get<long>());
  if (!j.is_string()) throw JsonError(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    throw JsonError(path, "malformed rational '" + j.get<std::string>() + "'");
  }
}

long integer_from(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long>();
  Q q = rational_from(j, path);
  if (!is_integer(q) || !q.get_num().fits_slong_p()) throw JsonError(path, "expected an integer");
  return q.get_num().get_si();
}

json to_json(const FieldElem& x) { return json::array({to_string(x.a()), to_string(x.b())}); }

FieldElem field_from(const json& j, long D, const std::string& path) {
  if (!j.is_array()) return FieldElem(rational_from(j, path));
  if (j.size() != 2) throw JsonError(path, "expected [a, b]");
  Q a = rational_from(j[0], at(path, 0)), b = rational_from(j[1], at(path, 1));
  if (b == 0) return FieldElem(a);
  return FieldElem(D, a, b);
}

json to_json(const QMat& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    a.push_back(row);
  }
  return a;
}

json to_json(const FMat& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    a.push_back(row);
  }
  return a;
}

QMat qmat_from(const json& j, const std::string& path) {
  return matrix_from<Q>(j, path, [](const json& x, const std::string& p) { return rational_from(x, p); });
}

FMat fmat_from(const json& j, long D, const std::string& path) {
  return matrix_from<FieldElem>(j, path, [D](const json& x, const std::string& p) { return field_from(x, D, p); });
}

json to_json(const CycNum& c) {
  json a = json::array();
  for (auto& [p, w] : c.terms()) a.push_back(json::array({to_string(p), to_string(w)}));
  return a;
}

CycNum cyc_from(const json& j, const std::string& path) {
  if (!j.is_array()) return CycNum(rational_from(j, path));
  CycNum c;
  std::size_t i = 0;
  for (auto& t : j) {
    std::string p = at(path, i++);
    if (!t.is_array() || t.size() != 2) throw JsonError(p, "expected [phase, coeff]");
    c += CycNum::phase(rational_from(t[0], at(p, 0)), rational_from(t[1], at(p, 1)));
  }
  return c;
}

json to_json(const ModValue& v, ModuleKind kind) {
  switch (kind) {
    case ModuleKind::rational:
      return to_json(v.slot(0).to_rational());
    case ModuleKind::cyc:
      return to_json(v.slot(0));
    case ModuleKind::disc_algebra: {
      json a = json::array();
      for (auto& [mu, c] : v.c) a.push_back({{"mu", mu}, {"value", to_json(c)}});
      return a;
    }
  }
  throw std::logic_error("unknown module kind");
}

ModValue modvalue_from(const json& j, ModuleKind kind, const std::string& path) {
  switch (kind) {
    case ModuleKind::rational:
      return ModValue::scalar(CycNum(rational_from(j, path)));
    case ModuleKind::cyc:
      return ModValue::scalar(cyc_from(j, path));
    case ModuleKind::disc_algebra: {
      ModValue v;
      std::size_t i = 0;
      for (auto& e : array_of(j, path)) {
        std::string p = at(path, i++);
        long mu = integer_from(member(e, "mu", p), at(p, "mu"));
        if (mu < 0) throw JsonError(at(p, "mu"), "negative basis index");
        v.add(std::size_t(mu), cyc_from(member(e, "value", p), at(p, "value")));
      }
      return v;
    }
  }
  throw std::logic_error("unknown module kind");
}

json to_json(const JacobiExpansion& phi) {
  json cs = json::array();
  for (auto& [key, c] : phi.coeffs) cs.push_back({{"n", key.first}, {"r", key.second}, {"value", to_json(c)}});
  return {{"weight", phi.weight}, {"index", to_json(phi.index.matrix())}, {"n_max", phi.n_max}, {"coeffs", cs}};
}

JacobiExpansion jacobi_from(const json& j, const std::string& path) {
  JacobiExpansion phi;
  phi.weight = int(integer_from(member(j, "weight", path), at(path, "weight")));
  try {
    phi.index = JacobiIndex(qmat_from(member(j, "index", path), at(path, "index")));
  } catch (const std::invalid_argument& e) {
    throw JsonError(at(path, "index"), e.what());
  }
  phi.n_max = integer_from(member(j, "n_max", path), at(path, "n_max"));
  std::string cp = at(path, "coeffs");
  std::size_t i = 0;
  for (auto& e : array_of(member(j, "coeffs", path), cp)) {
    std::string p = at(cp, i++);
    long n = integer_from(member(e, "n", p), at(p, "n"));
    IVec r = int_list(member(e, "r", p), at(p, "r"));
    if (r.size() != phi.index.size()) throw JsonError(at(p, "r"), "length differs from the index size");
    if (n > phi.n_max) throw JsonError(at(p, "n"), "exceeds n_max");
    phi.add(n, r, cyc_from(member(e, "value", p), at(p, "value")));
  }
  return phi;
}

json to_json(const HermJacobiExpansion& phi, ModuleKind kind) {
  json cs = json::array();
  for (auto& [key, v] : phi.coeffs)
    cs.push_back({{"n", to_json(key.first)}, {"r", to_json(key.second)}, {"value", to_json(v, kind)}});
  return {{"disc", phi.D},
          {"genus_base", phi.genus_base},
          {"cogenus", phi.cogenus},
          {"weight", phi.weight},
          {"index", to_json(phi.index)},
          {"module", to_string(kind)},
          {"trunc", to_json(phi.trunc)},
          {"coeffs", cs}};
}

HermJacobiExpansion herm_jacobi_from(const json& j, const std::string& path) {
  HermJacobiExpansion phi;
  phi.D = disc_from(member(j, "disc", path), at(path, "disc"));
  long gb = integer_from(member(j, "genus_base", path), at(path, "genus_base"));
  long h = integer_from(member(j, "cogenus", path), at(path, "cogenus"));
  if (gb < 0 || h < 0) throw JsonError(at(path, "cogenus"), "negative size");
  phi.genus_base = std::size_t(gb);
  phi.cogenus = std::size_t(h);
  phi.weight = integer_from(member(j, "weight", path), at(path, "weight"));
  phi.index = fmat_from(member(j, "index", path), phi.D, at(path, "index"));
  if (phi.index.rows() != phi.cogenus || !is_hermitian(phi.index))
    throw JsonError(at(path, "index"), "expected a Hermitian cogenus x cogenus matrix");
  ModuleKind kind;
  try {
    kind = module_kind_from_string(member(j, "module", path).get<std::string>());
  } catch (const std::exception&) {
    throw JsonError(at(path, "module"), "expected rational, cyc or disc-algebra");
  }
  phi.trunc = rational_from(member(j, "trunc", path), at(path, "trunc"));
  std::string cp = at(path, "coeffs");
  std::size_t i = 0;
  for (auto& e : array_of(member(j, "coeffs", path), cp)) {
    std::string p = at(cp, i++);
    FMat n = fmat_from(member(e, "n", p), phi.D, at(p, "n"));
    FMat r = fmat_from(member(e, "r", p), phi.D, at(p, "r"));
    if (n.rows() != phi.genus_base || !is_hermitian(n)) throw JsonError(at(p, "n"), "expected a Hermitian genus_base matrix");
    if (r.rows() != phi.cogenus || r.cols() != phi.genus_base) throw JsonError(at(p, "r"), "wrong shape");
    try {
      phi.add(n, r, modvalue_from(member(e, "value", p), kind, at(p, "value")));
    } catch (const std::invalid_argument& ex) {
      throw JsonError(p, ex.what());
    }
  }
  return phi;
}

json to_json(const SFJSeries& f) {
  const SeriesHeader& hd = f.header;
  json cs = json::array();
  for (auto& [t, v] : flatten(f)) cs.push_back({{"t", to_json(t)}, {"value", to_json(v, hd.module)}});
  json j = {{"disc", hd.D},
            {"genus", hd.genus},
            {"cogenus", f.cogenus},
            {"weight", hd.weight},
            {"level", hd.level},
            {"module", to_string(hd.module)},
            {"trunc_trace", to_json(hd.trunc)}};
  if (hd.lattice) j["lattice"] = to_json(*hd.lattice);
  j["coeffs"] = cs;
  return j;
}

RawSeries raw_series_from(const json& j, const std::string& path) {
  RawSeries s;
  SeriesHeader& hd = s.header;
  hd.D = disc_from(member(j, "disc", path), at(path, "disc"));
  long g = integer_from(member(j, "genus", path), at(path, "genus"));
  if (g < 1 || g > 8) throw JsonError(at(path, "genus"), "expected 1 <= genus <= 8");
  hd.genus = std::size_t(g);
  long h = j.contains("cogenus") ? integer_from(j["cogenus"], at(path, "cogenus")) : 0;
  if (h < 0 || h > g) throw JsonError(at(path, "cogenus"), "expected 0 <= cogenus <= genus");
  s.cogenus = std::size_t(h);
  hd.weight = integer_from(member(j, "weight", path), at(path, "weight"));
  hd.level = j.contains("level") ? integer_from(j["level"], at(path, "level")) : 1;
  if (hd.level < 1) throw JsonError(at(path, "level"), "expected a positive level");
  const json& mod = member(j, "module", path);
  try {
    hd.module = module_kind_from_string(mod.get<std::string>());
  } catch (const std::exception&) {
    throw JsonError(at(path, "module"), "expected rational, cyc or disc-algebra");
  }
  hd.trunc = rational_from(member(j, "trunc_trace", path), at(path, "trunc_trace"));
  if (hd.trunc < 0) throw JsonError(at(path, "trunc_trace"), "negative truncation");
  if (hd.module == ModuleKind::disc_algebra) {
    std::string lp = at(path, "lattice");
    FMat G = fmat_from(member(j, "lattice", path), hd.D, lp);
    try {
      hd.disc = herm_disc(G, hd.D);
    } catch (const std::exception& e) {
      throw JsonError(lp, e.what());
    }
    hd.lattice = G;
  }
  std::string cp = at(path, "coeffs");
  std::size_t i = 0;
  for (auto& e : array_of(member(j, "coeffs", path), cp)) {
    std::string p = at(cp, i++);
    FMat t = fmat_from(member(e, "t", p), hd.D, at(p, "t"));
    if (t.rows() != hd.genus || !is_hermitian(t)) throw JsonError(at(p, "t"), "expected a Hermitian genus x genus matrix");
    ModValue v = modvalue_from(member(e, "value", p), hd.module, at(p, "value"));
    if (hd.module != ModuleKind::disc_algebra && v.is_zero()) continue;
    if (s.coeffs.count(t)) throw JsonError(at(p, "t"), "duplicate index");
    if (!v.is_zero()) s.coeffs.emplace(t, v);
  }
  return s;
}

SFJSeries sfjs_from(const json& j, const std::string& path) {
  RawSeries s = raw_series_from(j, path);
  std::size_t i = 0;
  for (auto& [t, v] : s.coeffs) {
    if (!is_psd(t)) throw JsonError(at(at(path, "coeffs"), i), "index t is not positive semi-definite");
    ++i;
  }
  return fj_slice(s.header, s.coeffs, s.cogenus);
}

bool same_series(const SFJSeries& a, const SFJSeries& b) {
  const SeriesHeader &x = a.header, &y = b.header;
  if (x.D != y.D || x.genus != y.genus || x.weight != y.weight || x.level != y.level || x.module != y.module ||
      x.trunc != y.trunc || x.lattice != y.lattice || a.cogenus != b.cogenus)
    return false;
  return flatten(a) == flatten(b);
}

json to_json(const TorsionPoint& p) { return {{"alpha", rational_list(p.alpha)}, {"beta", rational_list(p.beta)}}; }

TorsionPoint torsion_point_from(const json& j, const std::string& path) {
  TorsionPoint p;
  p.alpha = rational_list_from(member(j, "alpha", path), at(path, "alpha"));
  p.beta = rational_list_from(member(j, "beta", path), at(path, "beta"));
  if (p.alpha.size() != p.beta.size()) throw JsonError(at(path, "beta"), "length differs from alpha");
  return p;
}

json to_json(const CMat& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    a.push_back(row);
  }
  return a;
}

CMat cmat_from(const json& j, const std::string& path) {
  return matrix_from<std::complex<double>>(j, path, [](const json& x, const std::string& p) {
    if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number())
      throw JsonError(p, "expected [re, im]");
    return std::complex<double>(x[0].get<double>(), x[1].get<double>());
  });
}

json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw JsonError(file, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw JsonError(file, std::string("parse error: ") + e.what());
  }
}

}  // namespace hermikit::io
