#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermikit/cyclotomic.hpp"
#include "hermikit/hermitian.hpp"
#include "hermikit/linalg.hpp"
#include "hermikit/weil.hpp"

namespace hermikit {

// Shape first, then entries by (a, b).
struct FMatLess {
  bool operator()(const FMat& x, const FMat& y) const;
};

// a^D t a
FMat hbracket(const FMat& t, const FMat& a);
Q trace_real(const FMat& t);

enum class ModuleKind { rational, cyc, disc_algebra };
std::string to_string(ModuleKind k);
ModuleKind module_kind_from_string(const std::string& s);

// A coefficient. Scalars live in slot 0; group-algebra values are keyed by
// the Weil basis index of disc^g. Zero slots are never stored.
struct ModValue {
  std::map<std::size_t, CycNum> c;

  static ModValue scalar(const CycNum& v);
  static ModValue basis(std::size_t mu, const Q& coeff = 1);

  bool is_zero() const { return c.empty(); }
  bool is_scalar() const { return c.empty() || (c.size() == 1 && c.begin()->first == 0); }
  CycNum slot(std::size_t mu) const;
  void add(std::size_t mu, const CycNum& v);

  ModValue& operator+=(const ModValue& o);
  ModValue& operator*=(const Q& s);
  friend ModValue operator+(ModValue x, const ModValue& y) { return x += y; }
  friend bool operator==(const ModValue& x, const ModValue& y);
  friend bool operator!=(const ModValue& x, const ModValue& y) { return !(x == y); }
};

// rho(rot a)^{-1} v, i.e. e_mu -> rot_sign e_{mu a}, on disc^g.
ModValue rot_inverse_apply(const DiscForm& df, std::size_t g, const FMat& a, const ModValue& v);

using CoeffMap = std::map<FMat, ModValue, FMatLess>;

struct JKeyLess {
  bool operator()(const std::pair<FMat, FMat>& x, const std::pair<FMat, FMat>& y) const;
};

// Coefficients c(n, r) of a Hermitian Jacobi expansion of index m; n is
// (g - h) x (g - h), r is h x (g - h).
struct HermJacobiExpansion {
  long D = -4;
  std::size_t genus_base = 0, cogenus = 0;
  long weight = 0;
  FMat index;
  Q trunc = 0;  // trace bound on n
  std::map<std::pair<FMat, FMat>, ModValue, JKeyLess> coeffs;

  // throws unless [[n, r^D], [r, m]] is positive semi-definite
  void add(const FMat& n, const FMat& r, const ModValue& v);
  ModValue coeff(const FMat& n, const FMat& r) const;
};

// true iff every stored nonzero coefficient has t positive definite
bool cusp_support_check(const HermJacobiExpansion& phi);
HermJacobiExpansion drop_boundary(const HermJacobiExpansion& phi);

struct SeriesHeader {
  long D = -4;
  std::size_t genus = 1;
  long weight = 0;
  long level = 1;
  ModuleKind module = ModuleKind::rational;
  Q trunc = 0;  // trace bound on t
  std::optional<DiscForm> disc;  // the form whose disc^genus carries group-algebra values
  std::optional<FMat> lattice;   // Hermitian Gram matrix of the lattice behind `disc`, when known
};

struct SFJSeries {
  SeriesHeader header;
  std::size_t cogenus = 0;
  std::map<FMat, HermJacobiExpansion, FMatLess> fj;

  ModValue coeff(const FMat& t) const;
};

SFJSeries fj_slice(const SeriesHeader& header, const CoeffMap& coeffs, std::size_t h);
CoeffMap flatten(const SFJSeries& f);
SFJSeries raise_cogenus(const SFJSeries& f, std::size_t h_prime);

// Permutations, unit diagonals with det^2 = 1, and elementary e_ij(r), r in {1, omega}.
std::vector<FMat> gl_generators(std::size_t g, long D);

struct SymmetryViolation {
  FMat t, a;
  ModValue expected, found;
};

struct SymmetryReport {
  bool pass = true;
  std::size_t checked = 0, skipped = 0;  // pairs (t, a) with t[a] inside / outside the truncation
  std::vector<SymmetryViolation> violations;
  double coverage() const { return checked + skipped ? double(checked) / double(checked + skipped) : 1.0; }
};

// c(t[a]) = det(conj a)^k rho(rot a)^{-1} c(t) over the generators and their inverses.
SymmetryReport symmetry_check(const SFJSeries& f, std::size_t max_violations = 16);
// Same relation on a raw coefficient map; with `focus`, only the pairs (t, a) for t in focus.
SymmetryReport symmetry_check(const SeriesHeader& hd, const CoeffMap& coeffs, const std::vector<FMat>* focus = nullptr,
                              std::size_t max_violations = 16);

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> problems;
  SymmetryReport symmetry;
};

// Support, lattice membership, truncation, module type and symmetry.
ValidationReport validate(const SFJSeries& f);

// Mat_{s, cols}(D_F^{-1}) / m Mat_{s, cols}(O_F) for m of size s.
class DiscIndexGroup {
 public:
  DiscIndexGroup(const FMat& m, std::size_t cols, long D);

  std::size_t order() const { return reps_.size(); }
  std::size_t column_order() const { return col_reps_.size(); }
  const std::vector<long>& column_invariants() const { return invariants_; }
  const FMat& rep(std::size_t mu) const { return reps_[mu]; }
  std::size_t index_of(const FMat& r) const;
  const FMat& index() const { return m_; }
  std::size_t cols() const { return cols_; }
  long disc() const { return D_; }

 private:
  std::size_t column_index(const std::vector<Q>& zc) const;

  FMat m_;
  std::size_t cols_;
  long D_;
  QMat p_inv_, c_, c_inv_;  // inverse different basis; sublattice in that basis
  std::vector<long> invariants_;
  std::vector<std::vector<FieldElem>> col_reps_;
  std::map<std::vector<Q>, std::size_t> col_lookup_;
  std::vector<FMat> reps_;
};

DiscIndexGroup disc_index_group(const FMat& m, std::size_t cols, long D);

// All r in rep(mu) + m Mat(O_F) with trace(m^{-1}[r]) <= bound.
std::vector<FMat> coset_points(const DiscIndexGroup& grp, std::size_t mu, const Q& bound);

// Sum over r in mu + m Mat(O_F) of e(m^{-1}[r] tau + ...): coefficient 1 at (m^{-1}[r], r).
HermJacobiExpansion herm_theta(const DiscIndexGroup& grp, std::size_t mu, const Q& trunc);

struct ThetaComponent {
  std::size_t mu = 0;
  CoeffMap expansion;  // n' -> value
};

// Components f_mu with psi_m' = sum f_mu theta_{m', mu}, psi_m' the cogenus
// size(m') coefficient of f. Throws when two indices in one u_lambda orbit disagree.
std::vector<ThetaComponent> theta_decompose(const SFJSeries& f, const FMat& m_prime);
// sum f_mu theta_{m', mu} up to trace(n) <= trunc_n, twisted by rho(rot u_lambda) for group-algebra values
HermJacobiExpansion theta_reassemble(const std::vector<ThetaComponent>& comps, const SFJSeries& f, const FMat& m_prime,
                                     const Q& trunc_n);

struct ReassemblyReport {
  bool exact = true;
  std::size_t compared = 0, mismatches = 0;
};
// Decompose, reassemble up to trace(n) <= trunc - trace(m') and compare with psi_m' both ways.
ReassemblyReport verify_theta_reassembly(const SFJSeries& f, const FMat& m_prime);

// c(t) = sum_mu #{lambda in mu + L^g : lambda^D G lambda = t} e_mu over trace(t) <= trunc; weight h.
SFJSeries herm_lattice_theta(const FMat& G, long D, std::size_t g, const Q& trunc, std::size_t cogenus = 0);
// The e_0 component alone, as a rational series: lambda in L^g; weight h rounded up to even.
SFJSeries herm_lattice_theta_scalar(const FMat& G, long D, std::size_t g, const Q& trunc, std::size_t cogenus = 0);

}  // namespace hermikit
