#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "hermikit/rational.hpp"

namespace hermikit {

// Discriminant of an imaginary quadratic field Q(sqrt D).
struct FieldDisc {
  long D;
  explicit FieldDisc(long d);
  // (D^2 - D)/4 = omega * conj(omega)
  Q omega_norm() const { return make_q(D * D - D, 4); }
};

bool is_field_discriminant(long D);

// a + b*omega with omega = (D + sqrt D)/2 and Im(sqrt D) > 0.
//
// D == 0 marks an element known to be rational (b == 0); it mixes freely
// with elements of any field. Elements with b != 0 always carry their D.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(int v) : a_(v) {}
  FieldElem(long v) : a_(v) {}
  FieldElem(const Q& a) : a_(a) {}
  FieldElem(long D, const Q& a, const Q& b);

  static FieldElem omega(long D) { return FieldElem(D, 0, 1); }

  const Q& a() const { return a_; }
  const Q& b() const { return b_; }
  long disc() const { return D_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  // a, b both integers: the element lies in O_F.
  bool is_integral() const { return is_integer(a_) && is_integer(b_); }

  FieldElem conj() const;
  Q trace() const;
  Q norm() const;
  FieldElem inverse() const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);

  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
  friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
  friend FieldElem operator/(FieldElem x, const FieldElem& y) { return x /= y; }

  friend bool operator==(const FieldElem& x, const FieldElem& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }
  // Lexicographic on (a, b); used for canonical containers and tie-breaks.
  friend bool operator<(const FieldElem& x, const FieldElem& y) {
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return x.b_ < y.b_;
  }

  std::complex<double> to_complex() const;

 private:
  static long join(long d1, long d2);
  long D_ = 0;
  Q a_ = 0;
  Q b_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

inline FieldElem conj(const FieldElem& x) { return x.conj(); }
inline Q trace(const FieldElem& x) { return x.trace(); }
inline Q norm(const FieldElem& x) { return x.norm(); }

// trace(x*y) in Z for y in {1, omega}
bool in_inverse_different(const FieldElem& x, long D);

// sqrt(D) = 2*omega - D
FieldElem sqrt_disc(long D);

// The units of O_F: {+-1}, plus i for D = -4 and the sixth roots of unity for D = -3.
// Ordered 1, -1, then the rest.
std::vector<FieldElem> units(long D);

}  // namespace hermikit
