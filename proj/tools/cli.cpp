#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "codec.hpp"
#include "hermikit/bounds.hpp"
#include "hermikit/hermitian.hpp"
#include "hermikit/jacgroup.hpp"
#include "hermikit/jacobi.hpp"
#include "hermikit/reduction.hpp"
#include "hermikit/sfjs.hpp"
#include "hermikit/unitary.hpp"
#include "hermikit/weil.hpp"

namespace hermikit::cli {

namespace {

using io::json;

struct Result {
  json report;
  int code = ok;
};

// Bad option values that CLI11 cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

long checked_disc(long D) {
  if (D >= 0 || !is_field_discriminant(D)) throw UsageError("--disc: not an imaginary quadratic discriminant");
  return D;
}

std::vector<Q> parse_rationals(const std::vector<std::string>& v, const std::string& opt) {
  std::vector<Q> out;
  for (auto& s : v) {
    try {
      out.push_back(parse_rational(s));
    } catch (const std::exception&) {
      throw UsageError(opt + ": malformed rational '" + s + "'");
    }
  }
  return out;
}

Q parse_rational_opt(const std::string& s, const std::string& opt) { return parse_rationals({s}, opt).front(); }

json verdict_json(const VanishVerdict& v, bool with_rank) {
  json j = {{"forces_zero", v.forces_zero}, {"lhs", io::to_json(v.lhs)}, {"rhs", io::to_json(v.rhs)}};
  if (with_rank) j["rank_used"] = v.rank_used;
  return j;
}

// Smallest nu in [1, nu_max] forcing vanishing, with the verdict there.
template <class F>
json first_forcing(F verdict_at, long nu_max, bool with_rank) {
  for (long nu = 1; nu <= nu_max; ++nu) {
    VanishVerdict v = verdict_at(nu);
    if (v.forces_zero) {
      json j = verdict_json(v, with_rank);
      j["first_nu"] = nu;
      return j;
    }
  }
  return {{"forces_zero", false}, {"first_nu", nullptr}, {"nu_max", nu_max}};
}

JacobiIndex jacobi_index_file(const std::string& file) {
  QMat m = io::qmat_from(io::read_json_file(file), file);
  try {
    return JacobiIndex(m);
  } catch (const std::invalid_argument& e) {
    throw io::JsonError(file, e.what());
  }
}

FMat hermitian_file(const std::string& file, long D) {
  FMat m = io::fmat_from(io::read_json_file(file), D, file);
  if (!is_hermitian(m)) throw io::JsonError(file, "matrix is not Hermitian");
  return m;
}

json symmetry_json(const SymmetryReport& s, ModuleKind kind) {
  json vs = json::array();
  for (auto& v : s.violations)
    vs.push_back({{"t", io::to_json(v.t)},
                  {"a", io::to_json(v.a)},
                  {"expected", io::to_json(v.expected, kind)},
                  {"found", io::to_json(v.found, kind)}});
  return {{"pass", s.pass}, {"checked", s.checked}, {"skipped", s.skipped}, {"coverage", s.coverage()}, {"violations", vs}};
}

struct Options {
  std::string output;
  long disc = -4;
  // reduce / enumerate-m
  std::string matrix_file;
  int bound = -1;
  std::vector<long> diag;
  // bounds
  long k = 0, nu = 0, nu_max = 10000;
  std::string index_file;
  bool basis_independent = false;
  std::vector<std::string> weights, ords;
  std::vector<long> primes;
  // torsion points
  long h = 0;
  bool orbit_check = false;
  // theta
  std::string gram_file, vectors_file;
  long n_max = 0;
  bool synthetic = false;
  std::uint64_t seed = 1;
  // herm-theta / theta-decompose / validate
  std::string trunc = "0", lattice_file, input_file, mprime_file;
  long cols = 1, genus = 1, cogenus = 0;
  std::optional<long> mu;
  bool scalar = false;
  // weil
  std::vector<std::string> emit{"trans", "rot", "sinv1"};
  std::string b_file, a_file;
  bool hermitian_gram = false;
};

Result run_reduce(const Options& o) {
  long D = checked_disc(o.disc);
  FMat m = hermitian_file(o.matrix_file, D);
  ReducedCertificate c = reduce(m, D, o.bound);
  return {{{"disc", D},
           {"input", io::to_json(m)},
           {"reduced", io::to_json(c.m_red)},
           {"u", io::to_json(c.u)},
           {"search_bound", c.search_bound},
           {"entry_constant", io::to_json(c.entry_constant)},
           {"states", c.states},
           {"input_is_reduced", c.m_red == m}}};
}

Result run_enumerate_m(const Options& o) {
  long D = checked_disc(o.disc);
  auto ms = enumerate_M(o.diag, D, o.bound);
  json arr = json::array();
  for (auto& m : ms) arr.push_back(io::to_json(m));
  return {{{"disc", D}, {"diag", o.diag}, {"count", ms.size()}, {"shape", io::to_json(enumeration_shape(o.diag))}, {"matrices", arr}}};
}

Result run_bounds_vanish(const Options& o, bool nu_given) {
  if (!o.diag.empty() && !o.index_file.empty()) throw UsageError("give either --diag or --index");
  if (!o.diag.empty() && !o.basis_independent) {
    auto at = [&](long nu) { return vanish_diag(o.k, o.diag, nu); };
    return {nu_given ? verdict_json(at(o.nu), false) : first_forcing(at, o.nu_max, false)};
  }
  JacobiIndex m = o.index_file.empty() ? JacobiIndex(QMat::diagonal(std::vector<Q>(o.diag.begin(), o.diag.end())))
                                       : jacobi_index_file(o.index_file);
  auto at = [&](long nu) { return o.basis_independent ? vanish_basis_independent(o.k, m, nu) : vanish_general(o.k, m, nu); };
  return {nu_given ? verdict_json(at(o.nu), true) : first_forcing(at, o.nu_max, true)};
}

Result run_bounds_herm(const Options& o, bool nu_given) {
  long D = checked_disc(o.disc);
  FMat m = hermitian_file(o.index_file, D);
  auto at = [&](long nu) { return herm_vanish(o.k, m, nu, D); };
  return {nu_given ? verdict_json(at(o.nu), false) : first_forcing(at, o.nu_max, false)};
}

Result run_bounds_dim(const Options& o) {
  if (o.hermitian_gram) {
    long D = checked_disc(o.disc);
    FMat m = hermitian_file(o.index_file, D);
    return {{{"dim_upper", herm_dim_upper(o.k, m, D)}}};
  }
  JacobiIndex m = jacobi_index_file(o.index_file);
  return {{{"dim_upper", dim_upper_skoruppa(o.k, m)}, {"value", io::to_json(dim_upper_skoruppa_value(o.k, m))}}};
}

Result run_bounds_integral(const Options& o) {
  Q nu = parse_rational_opt(std::to_string(o.nu), "--nu");
  std::vector<Q> w = parse_rationals(o.weights, "--weights");
  Q lower = nu;
  long h = long(w.size());
  lower /= pow_q(Q(2), static_cast<unsigned long>(h + 1));
  for (long i = 0; i < h; ++i) lower /= Q(h);
  for (auto& x : w) lower *= nu / x;
  return {{{"integral", io::to_json(cut_simplex_integral(nu, w))}, {"lower", io::to_json(lower)}, {"holds", check_lower(nu, w)}}};
}

Result run_bounds_criterion(const Options& o) {
  if (!o.ords.empty()) return {{{"holds", accumulated_criterion(o.k, parse_rationals(o.ords, "--ords"))}}};
  if (o.diag.empty() || o.primes.empty()) throw UsageError("criterion needs --ords, or --diag, --nu and --primes");
  return {{{"holds", prime_tuple_criterion(o.k, o.diag, o.nu, o.primes)}}};
}

Result run_torsion_points(const Options& o) {
  if (o.h && std::size_t(o.h) != o.primes.size()) throw UsageError("--h must equal the number of --primes");
  auto pts = tp_enumerate(o.primes);
  Z expected = 1;
  for (long p : o.primes) expected *= Z(p * p - 1);
  json arr = json::array();
  for (auto& p : pts) arr.push_back(io::to_json(p));
  json rep = {{"primes", o.primes}, {"count", pts.size()}, {"expected", to_string(expected)}, {"points", arr}};
  int code = ok;
  if (o.orbit_check) {
    std::size_t orbit = pts.empty() ? 0 : tp_orbit(pts.front(), o.primes).size();
    bool transitive = orbit == pts.size();
    rep["orbit"] = {{"size", orbit}, {"transitive", transitive}};
    if (!transitive) code = validation_failure;
  }
  return {rep, code};
}

Result run_theta(const Options& o) {
  JacobiExpansion phi;
  if (o.synthetic) {
    phi = symmetrize_synthetic(jacobi_index_file(o.index_file), o.seed, o.n_max);
  } else {
    if (o.gram_file.empty() || o.vectors_file.empty()) throw UsageError("theta needs --gram and --vectors, or --synthetic");
    QMat gram = io::qmat_from(io::read_json_file(o.gram_file), o.gram_file);
    QMat vs = io::qmat_from(io::read_json_file(o.vectors_file), o.vectors_file);
    phi = lattice_theta_jacobi(gram, vs, o.n_max);
  }
  json rep = io::to_json(phi);
  auto od = ord(phi);
  rep["ord"] = od ? json(*od) : json(nullptr);
  return {rep};
}

Result run_herm_theta(const Options& o) {
  long D = checked_disc(o.disc);
  Q trunc = parse_rational_opt(o.trunc, "--trunc");
  if (!o.lattice_file.empty()) {
    FMat G = hermitian_file(o.lattice_file, D);
    if (!is_pd(G)) throw io::JsonError(o.lattice_file, "lattice Gram matrix is not positive definite");
    if (o.genus < 1 || o.cogenus < 0 || o.cogenus > o.genus) throw UsageError("need 0 <= --cogenus <= --genus, --genus >= 1");
    SFJSeries f = o.scalar ? herm_lattice_theta_scalar(G, D, std::size_t(o.genus), trunc, std::size_t(o.cogenus))
                           : herm_lattice_theta(G, D, std::size_t(o.genus), trunc, std::size_t(o.cogenus));
    return {io::to_json(f)};
  }
  FMat m = hermitian_file(o.index_file, D);
  if (!is_pd(m)) throw io::JsonError(o.index_file, "index is not positive definite");
  if (o.cols < 1) throw UsageError("--cols must be positive");
  DiscIndexGroup grp(m, std::size_t(o.cols), D);
  json comps = json::array();
  for (std::size_t mu = 0; mu < grp.order(); ++mu) {
    if (o.mu && std::size_t(*o.mu) != mu) continue;
    comps.push_back({{"mu", mu}, {"rep", io::to_json(grp.rep(mu))}, {"expansion", io::to_json(herm_theta(grp, mu, trunc), ModuleKind::rational)}});
  }
  if (o.mu && (*o.mu < 0 || std::size_t(*o.mu) >= grp.order())) throw UsageError("--mu out of range");
  return {{{"disc", D}, {"index", io::to_json(m)}, {"cols", o.cols}, {"order", grp.order()}, {"components", comps}}};
}

Result run_theta_decompose(const Options& o) {
  SFJSeries f = io::sfjs_from(io::read_json_file(o.input_file), o.input_file);
  FMat mp = hermitian_file(o.mprime_file, f.header.D);
  if (!is_pd(mp)) throw io::JsonError(o.mprime_file, "m' is not positive definite");
  if (mp.rows() < 1 || mp.rows() + 2 > f.header.genus) throw UsageError("need 1 <= size(m') <= genus - 2");
  std::vector<ThetaComponent> comps;
  try {
    comps = theta_decompose(f, mp);
  } catch (const std::invalid_argument& e) {
    return {{{"pass", false}, {"problems", {e.what()}}}, validation_failure};
  }
  DiscIndexGroup grp(mp, f.header.genus - mp.rows(), f.header.D);
  json arr = json::array();
  for (auto& c : comps) {
    json cs = json::array();
    for (auto& [n, v] : c.expansion) cs.push_back({{"n", io::to_json(n)}, {"value", io::to_json(v, f.header.module)}});
    arr.push_back({{"mu", c.mu}, {"rep", io::to_json(grp.rep(c.mu))}, {"coeffs", cs}});
  }
  ReassemblyReport rr = verify_theta_reassembly(f, mp);
  json rep = {{"pass", rr.exact},
              {"mprime", io::to_json(mp)},
              {"components", arr},
              {"reassembly", {{"exact", rr.exact}, {"compared", rr.compared}, {"mismatches", rr.mismatches}}}};
  return {rep, rr.exact ? ok : validation_failure};
}

Result run_validate(const Options& o) {
  io::RawSeries raw = io::raw_series_from(io::read_json_file(o.input_file), o.input_file);
  json problems = json::array();
  for (auto& [t, v] : raw.coeffs)
    if (!is_psd(t)) problems.push_back("index not positive semi-definite: " + io::to_json(t).dump());
  if (!problems.empty()) return {{{"pass", false}, {"problems", problems}}, validation_failure};
  SFJSeries f = fj_slice(raw.header, raw.coeffs, raw.cogenus);
  ValidationReport v = validate(f);
  for (auto& p : v.problems) problems.push_back(p);
  return {{{"pass", v.pass}, {"problems", problems}, {"coefficients", raw.coeffs.size()}, {"symmetry", symmetry_json(v.symmetry, f.header.module)}},
          v.pass ? ok : validation_failure};
}

Result run_weil(const Options& o) {
  if (o.genus < 1) throw UsageError("--genus must be positive");
  std::size_t g = std::size_t(o.genus);
  DiscForm df;
  long D = 0;
  if (o.hermitian_gram) {
    D = checked_disc(o.disc);
    FMat G = hermitian_file(o.gram_file, D);
    try {
      df = herm_disc(G, D);
    } catch (const std::invalid_argument& e) {
      throw io::JsonError(o.gram_file, e.what());
    }
  } else {
    QMat G = io::qmat_from(io::read_json_file(o.gram_file), o.gram_file);
    try {
      df = disc_from_gram(G);
    } catch (const std::invalid_argument& e) {
      throw io::JsonError(o.gram_file, e.what());
    }
  }
  FMat b(g, g);
  b(0, 0) = 1;
  if (!o.b_file.empty()) b = hermitian_file(o.b_file, D ? D : -4);
  // det(a) = -1 needs an even signature; fall back to a = 1 in genus one
  FMat a = g > 1 ? permutation_swap(g, 0, 1) : df.signature() % 2 ? FMat{{FieldElem(1)}} : FMat{{FieldElem(-1)}};
  if (!o.a_file.empty()) a = io::fmat_from(io::read_json_file(o.a_file), D ? D : -4, o.a_file);
  json mats = json::object();
  for (auto& name : o.emit) {
    WeilGenMatrix w;
    if (name == "trans") w = rho_trans(df, g, b);
    else if (name == "rot") w = rho_rot(df, g, a);
    else if (name == "sinv1") w = rho_sinv1(df, g);
    else throw UsageError("--emit: unknown generator '" + name + "'");
    mats[name] = {{"matrix", io::to_json(w.matrix)}, {"unitarity_defect", unitarity_defect(w.matrix)}};
  }
  json q = json::array();
  for (auto& x : df.q_values()) q.push_back(io::to_json(x));
  return {{{"numeric", true},
           {"card", df.card()},
           {"orders", df.orders()},
           {"signature", df.signature()},
           {"genus", g},
           {"dimension", weil_dim(df, g)},
           {"q", q},
           {"b", io::to_json(b)},
           {"a", io::to_json(a)},
           {"matrices", mats}}};
}

Result run_identities(const Options& o) {
  long D = checked_disc(o.disc);
  if (o.genus < 1 || o.genus > 4) throw UsageError("--g must lie in 1..4");
  std::size_t g = std::size_t(o.genus);
  json checks = json::array();
  bool all = true;
  for (auto& c : identity_battery(D, g)) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}});
    all = all && c.pass;
  }
  return {{{"disc", D}, {"g", g}, {"pass", all}, {"checks", checks}, {"sinv", io::to_json(make_sinv(g))}, {"sinv1", io::to_json(make_sinv1(g))}},
          all ? ok : validation_failure};
}

void write_report(const json& j, const std::string& path, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("--output: cannot write " + path);
  f << text;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations with Hermitian modular and Jacobi forms", "hermikit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output,-o", o.output, "Write the JSON report to this file");

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a Hermitian matrix under GL_h(O_F)");
  reduce_cmd->add_option("--disc", o.disc)->required();
  reduce_cmd->add_option("--matrix", o.matrix_file, "JSON matrix file")->required();
  reduce_cmd->add_option("--bound", o.bound, "Word length bound (default per size)");

  auto* enum_cmd = app.add_subcommand("enumerate-m", "Reduced PSD dual-lattice matrices with a given diagonal");
  enum_cmd->add_option("--disc", o.disc)->required();
  enum_cmd->add_option("--diag", o.diag)->required()->delimiter(',');
  enum_cmd->add_option("--bound", o.bound);

  auto* bounds = app.add_subcommand("bounds", "Vanishing and dimension bounds");
  bounds->require_subcommand(1);
  auto* b_vanish = bounds->add_subcommand("vanish", "Jacobi vanishing criterion");
  b_vanish->add_option("--k", o.k)->required();
  b_vanish->add_option("--diag", o.diag)->delimiter(',');
  b_vanish->add_option("--index", o.index_file, "JSON index file");
  auto* vanish_nu = b_vanish->add_option("--nu", o.nu, "Vanishing order; omit to search for the first forcing value");
  b_vanish->add_option("--nu-max", o.nu_max);
  b_vanish->add_flag("--basis-independent", o.basis_independent);
  auto* b_herm = bounds->add_subcommand("herm", "Hermitian vanishing criterion");
  b_herm->add_option("--disc", o.disc)->required();
  b_herm->add_option("--index", o.index_file)->required();
  b_herm->add_option("--k", o.k)->required();
  auto* herm_nu = b_herm->add_option("--nu", o.nu);
  b_herm->add_option("--nu-max", o.nu_max);
  auto* b_dim = bounds->add_subcommand("dim", "Dimension upper bound");
  b_dim->add_option("--k", o.k)->required();
  b_dim->add_option("--index", o.index_file)->required();
  auto* dim_disc = b_dim->add_option("--disc", o.disc, "Treat the index as Hermitian over this field");
  auto* b_int = bounds->add_subcommand("integral", "Cut-simplex integral and its lower bound");
  b_int->add_option("--nu", o.nu)->required();
  b_int->add_option("--weights", o.weights)->required()->delimiter(',');
  auto* b_crit = bounds->add_subcommand("criterion", "Accumulated vanishing criterion");
  b_crit->add_option("--k", o.k)->required();
  b_crit->add_option("--ords", o.ords)->delimiter(',');
  b_crit->add_option("--diag", o.diag)->delimiter(',');
  b_crit->add_option("--nu", o.nu);
  b_crit->add_option("--primes", o.primes)->delimiter(',');

  auto* tp_cmd = app.add_subcommand("torsion-points", "Torsion points of prime denominators");
  tp_cmd->add_option("--primes", o.primes)->required()->delimiter(',');
  tp_cmd->set_help_flag("--help", "Print this help message and exit");
  tp_cmd->add_option("--h", o.h, "Number of primes (checked)");
  tp_cmd->add_flag("--orbit-check", o.orbit_check);

  auto* theta_cmd = app.add_subcommand("theta", "Lattice theta Jacobi form");
  theta_cmd->add_option("--gram", o.gram_file);
  theta_cmd->add_option("--vectors", o.vectors_file);
  theta_cmd->add_option("--nmax", o.n_max)->required();
  theta_cmd->add_flag("--synthetic", o.synthetic, "Random symmetric coefficients for --index");
  theta_cmd->add_option("--index", o.index_file);
  theta_cmd->add_option("--seed", o.seed);

  auto* ht_cmd = app.add_subcommand("herm-theta", "Hermitian Jacobi theta series, or lattice theta series with --lattice");
  ht_cmd->add_option("--disc", o.disc)->required();
  ht_cmd->add_option("--index", o.index_file);
  ht_cmd->add_option("--trunc", o.trunc)->required();
  ht_cmd->add_option("--cols", o.cols);
  ht_cmd->add_option("--mu", o.mu);
  ht_cmd->add_option("--lattice", o.lattice_file);
  ht_cmd->add_option("--genus", o.genus);
  ht_cmd->add_option("--cogenus", o.cogenus);
  ht_cmd->add_flag("--scalar", o.scalar, "Only the e_0 component, as a rational series");

  auto* td_cmd = app.add_subcommand("theta-decompose", "Formal theta decomposition of a series");
  td_cmd->add_option("--input", o.input_file)->required();
  td_cmd->add_option("--mprime", o.mprime_file)->required();

  auto* val_cmd = app.add_subcommand("validate-sfjs", "Validate a symmetric formal Fourier-Jacobi series");
  val_cmd->add_option("file", o.input_file)->required();

  auto* weil_cmd = app.add_subcommand("weil", "Weil representation generator matrices");
  weil_cmd->add_option("--gram", o.gram_file)->required();
  weil_cmd->add_option("--genus", o.genus);
  weil_cmd->add_option("--emit", o.emit)->delimiter(',');
  weil_cmd->add_option("--b", o.b_file);
  weil_cmd->add_option("--a", o.a_file);
  auto* weil_disc = weil_cmd->add_option("--disc", o.disc, "Read --gram as a Hermitian matrix over this field");

  auto* id_cmd = app.add_subcommand("identities", "Unitary group identity battery");
  id_cmd->add_option("--disc", o.disc)->required();
  id_cmd->add_option("--g", o.genus)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? ok : usage_error;
  }

  try {
    Result r;
    if (reduce_cmd->parsed()) r = run_reduce(o);
    else if (enum_cmd->parsed()) r = run_enumerate_m(o);
    else if (b_vanish->parsed()) r = run_bounds_vanish(o, vanish_nu->count() > 0);
    else if (b_herm->parsed()) r = run_bounds_herm(o, herm_nu->count() > 0);
    else if (b_dim->parsed()) {
      o.hermitian_gram = dim_disc->count() > 0;
      r = run_bounds_dim(o);
    } else if (b_int->parsed()) r = run_bounds_integral(o);
    else if (b_crit->parsed()) r = run_bounds_criterion(o);
    else if (tp_cmd->parsed()) r = run_torsion_points(o);
    else if (theta_cmd->parsed()) r = run_theta(o);
    else if (ht_cmd->parsed()) r = run_herm_theta(o);
    else if (td_cmd->parsed()) r = run_theta_decompose(o);
    else if (val_cmd->parsed()) r = run_validate(o);
    else if (weil_cmd->parsed()) {
      o.hermitian_gram = weil_disc->count() > 0;
      r = run_weil(o);
    } else if (id_cmd->parsed()) r = run_identities(o);
    write_report(r.report, o.output, out);
    return r.code;
  } catch (const io::JsonError& e) {
    err << "malformed input: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    err << "input too large: " << e.what() << "\n";
  }
  return usage_error;
}

}  // namespace hermikit::cli
