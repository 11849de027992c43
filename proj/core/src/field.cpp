#include "hermikit/field.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hermikit {

bool is_field_discriminant(long D) {
  if (D >= 0) return false;
  long r = ((D % 4) + 4) % 4;
  return r == 0 || r == 1;
}

FieldDisc::FieldDisc(long d) : D(d) {
  if (!is_field_discriminant(d))
    throw std::invalid_argument("not a negative discriminant = 0,1 mod 4: " + std::to_string(d));
}

FieldElem::FieldElem(long D, const Q& a, const Q& b) : D_(D), a_(a), b_(b) {
  if (D != 0 && !is_field_discriminant(D))
    throw std::invalid_argument("bad discriminant " + std::to_string(D));
  if (D == 0 && b != 0) throw std::invalid_argument("irrational element without discriminant");
}

long FieldElem::join(long d1, long d2) {
  if (d1 == 0) return d2;
  if (d2 == 0 || d1 == d2) return d1;
  throw std::invalid_argument("mixing elements of fields " + std::to_string(d1) + " and " +
                              std::to_string(d2));
}

FieldElem FieldElem::conj() const {
  if (b_ == 0) return *this;
  return FieldElem(D_, a_ + b_ * D_, -b_);
}

Q FieldElem::trace() const { return 2 * a_ + b_ * D_; }

Q FieldElem::norm() const {
  if (b_ == 0) return a_ * a_;
  return a_ * a_ + a_ * b_ * D_ + b_ * b_ * make_q(D_ * D_ - D_, 4);
}

FieldElem FieldElem::inverse() const {
  Q n = norm();
  if (n == 0) throw std::domain_error("inverse of zero");
  FieldElem c = conj();
  c.a_ /= n;
  c.b_ /= n;
  return c;
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  D_ = join(D_, o.D_);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  D_ = join(D_, o.D_);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  long D = join(D_, o.D_);
  if (b_ == 0) {
    Q a = a_;
    a_ = a * o.a_;
    b_ = a * o.b_;
  } else if (o.b_ == 0) {
    a_ *= o.a_;
    b_ *= o.a_;
  } else {
    // omega^2 = D omega - (D^2 - D)/4
    Q n = make_q(D * D - D, 4);
    Q bd = b_ * o.b_;
    Q na = a_ * o.a_ - bd * n;
    Q nb = a_ * o.b_ + b_ * o.a_ + bd * D;
    a_ = na;
    b_ = nb;
  }
  D_ = D;
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) { return *this *= o.inverse(); }

std::complex<double> FieldElem::to_complex() const {
  double re = a_.get_d();
  if (b_ == 0) return {re, 0.0};
  double b = b_.get_d();
  double half = 0.5 * static_cast<double>(D_);
  double im = 0.5 * std::sqrt(static_cast<double>(-D_));
  return {re + b * half, b * im};
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) {
  os << to_string(x.a());
  if (x.b() != 0) os << (x.b() < 0 ? " - " : " + ") << to_string(abs(x.b())) << "*w";
  return os;
}

bool in_inverse_different(const FieldElem& x, long D) {
  if (!is_integer(x.trace())) return false;
  return is_integer((x * FieldElem::omega(D)).trace());
}

FieldElem sqrt_disc(long D) { return FieldElem(D, -D, 2); }

std::vector<FieldElem> units(long D) {
  std::vector<FieldElem> out;
  // Units have norm 1; their coordinates are bounded by 2 in absolute value.
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      FieldElem x(D, a, b);
      if (x.norm() == 1) out.push_back(x);
    }
  std::stable_partition(out.begin(), out.end(), [](const FieldElem& u) { return u == FieldElem(1); });
  std::stable_partition(out.begin() + 1, out.end(), [](const FieldElem& u) { return u == FieldElem(-1); });
  return out;
}

}  // namespace hermikit
