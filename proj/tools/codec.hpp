#pragma once

#include <stdexcept>
#include <string>

#include "hermikit/jacgroup.hpp"
#include "hermikit/jacobi.hpp"
#include "hermikit/sfjs.hpp"
#include "json.hpp"

namespace hermikit::io {

using json = nlohmann::json;

// Malformed input; `field` is the JSON path of the offending value.
class JsonError : public std::runtime_error {
 public:
  JsonError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Rationals are strings "p/q"; integers are accepted on input.
json to_json(const Q& x);
Q rational_from(const json& j, const std::string& path);
long integer_from(const json& j, const std::string& path);

// FieldElem as ["a", "b"] in the basis 1, omega; a bare rational is accepted on input.
json to_json(const FieldElem& x);
FieldElem field_from(const json& j, long D, const std::string& path);

json to_json(const QMat& m);
json to_json(const FMat& m);
QMat qmat_from(const json& j, const std::string& path);
FMat fmat_from(const json& j, long D, const std::string& path);

// Cyclotomic values as [[phase, coeff], ...].
json to_json(const CycNum& c);
CycNum cyc_from(const json& j, const std::string& path);

// "rational": "p/q"; "cyc": cyc terms; "disc-algebra": [{"mu": index, "value": cyc terms}, ...]
json to_json(const ModValue& v, ModuleKind kind);
ModValue modvalue_from(const json& j, ModuleKind kind, const std::string& path);

json to_json(const JacobiExpansion& phi);
JacobiExpansion jacobi_from(const json& j, const std::string& path = "");

// Carries its own "module" field.
json to_json(const HermJacobiExpansion& phi, ModuleKind kind);
HermJacobiExpansion herm_jacobi_from(const json& j, const std::string& path = "");

// {"disc", "genus", "cogenus", "weight", "level", "module", "trunc_trace",
//  "lattice" (disc-algebra only), "coeffs": [{"t", "value"}]}
json to_json(const SFJSeries& f);
// Header and coefficient map before slicing; t is only checked to be Hermitian of the right size.
struct RawSeries {
  SeriesHeader header;
  std::size_t cogenus = 0;
  CoeffMap coeffs;
};
RawSeries raw_series_from(const json& j, const std::string& path = "");
// Throws JsonError naming the coefficient when some t is not positive semi-definite.
SFJSeries sfjs_from(const json& j, const std::string& path = "");
// Headers (without the derived discriminant form) and all coefficients agree.
bool same_series(const SFJSeries& a, const SFJSeries& b);

json to_json(const TorsionPoint& p);
TorsionPoint torsion_point_from(const json& j, const std::string& path);

// Complex matrices as rows of [re, im].
json to_json(const CMat& m);
CMat cmat_from(const json& j, const std::string& path);

json read_json_file(const std::string& file);

}  // namespace hermikit::io
