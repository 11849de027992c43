#pragma once

#include <complex>
#include <map>
#include <vector>

#include "hermikit/rational.hpp"

namespace hermikit {

// Finite rational combination sum_p c_p e(p) of roots of unity, e(p) = exp(2 pi i p),
// with phases p kept in [0, 1).
class CycNum {
 public:
  using Terms = std::map<Q, Q>;

  CycNum() = default;
  CycNum(int c) { add_term(0, c); }
  CycNum(const Q& c) { add_term(0, c); }
  static CycNum phase(const Q& p, const Q& coeff = 1);

  const Terms& terms() const { return terms_; }
  bool is_trivially_zero() const { return terms_.empty(); }

  // Decided by reduction modulo the N-th cyclotomic polynomial, N the lcm of
  // the phase denominators.
  bool is_zero() const;

  // Defined when the value happens to be rational (after reduction); throws otherwise.
  Q to_rational() const;
  bool is_rational() const;

  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator*=(const Q& c);
  CycNum operator-() const;

  friend CycNum operator+(CycNum x, const CycNum& y) { return x += y; }
  friend CycNum operator-(CycNum x, const CycNum& y) { return x -= y; }
  friend CycNum operator*(CycNum x, const CycNum& y) { return x *= y; }
  friend CycNum operator*(CycNum x, const Q& c) { return x *= c; }

  // Mathematical equality (x - y is zero).
  friend bool operator==(const CycNum& x, const CycNum& y) { return (x - y).is_zero(); }
  friend bool operator!=(const CycNum& x, const CycNum& y) { return !(x == y); }

  // Canonical form: phases k/N with the remainder modulo Phi_N as coefficients.
  CycNum reduced() const;

  std::complex<double> to_complex() const;

 private:
  void add_term(const Q& p, const Q& c);
  Terms terms_;
};

// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<Z>& cyclotomic_polynomial(unsigned long n);

}  // namespace hermikit
