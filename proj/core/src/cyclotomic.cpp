#include "hermikit/cyclotomic.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace hermikit {

namespace {

std::vector<Z> poly_divexact(std::vector<Z> num, const std::vector<Z>& den) {
  // den is monic
  std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) throw std::logic_error("cyclotomic division degree");
  std::vector<Z> quo(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    Z c = num[i];
    quo[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic division not exact");
  return quo;
}

std::vector<Q> poly_mod(std::vector<Q> p, const std::vector<Z>& m) {
  std::size_t dm = m.size() - 1;
  for (std::size_t i = p.size(); i-- > dm;) {
    Q c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) p[i - dm + j] -= c * Q(m[j]);
  }
  if (p.size() > dm) p.resize(dm);
  return p;
}

// Common denominator N and the polynomial of degree < N representing x.
std::vector<Q> to_poly(const CycNum::Terms& t, unsigned long& N) {
  Z n = 1;
  for (auto& [p, c] : t) n = lcm(n, p.get_den());
  N = static_cast<unsigned long>(to_long(n));
  std::vector<Q> poly(N);
  for (auto& [p, c] : t) {
    Q e = p * Q(n);
    poly[static_cast<std::size_t>(to_long(e.get_num()))] += c;
  }
  return poly;
}

}  // namespace

const std::vector<Z>& cyclotomic_polynomial(unsigned long n) {
  static std::mutex mu;
  static std::unordered_map<unsigned long, std::vector<Z>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  if (n == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
  // x^n - 1 divided by Phi_d for all proper divisors d
  std::vector<Z> p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (unsigned long d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divexact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  // unordered_map references stay valid across rehashing
  return cache.emplace(n, std::move(p)).first->second;
}

CycNum CycNum::phase(const Q& p, const Q& coeff) {
  CycNum r;
  r.add_term(p, coeff);
  return r;
}

void CycNum::add_term(const Q& p, const Q& c) {
  if (c == 0) return;
  Q ph = frac(p);
  auto [it, fresh] = terms_.emplace(ph, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool CycNum::is_zero() const {
  if (terms_.empty()) return true;
  if (terms_.size() == 1) return false;
  unsigned long N;
  auto poly = to_poly(terms_, N);
  auto rem = poly_mod(std::move(poly), cyclotomic_polynomial(N));
  for (auto& c : rem)
    if (c != 0) return false;
  return true;
}

CycNum CycNum::reduced() const {
  if (terms_.empty()) return {};
  unsigned long N;
  auto poly = to_poly(terms_, N);
  auto rem = poly_mod(std::move(poly), cyclotomic_polynomial(N));
  CycNum r;
  for (std::size_t k = 0; k < rem.size(); ++k)
    if (rem[k] != 0) r.add_term(make_q(static_cast<long>(k), static_cast<long>(N)), rem[k]);
  return r;
}

bool CycNum::is_rational() const {
  CycNum r = reduced();
  return r.terms_.empty() || (r.terms_.size() == 1 && r.terms_.begin()->first == 0);
}

Q CycNum::to_rational() const {
  CycNum r = reduced();
  if (r.terms_.empty()) return 0;
  if (r.terms_.size() == 1 && r.terms_.begin()->first == 0) return r.terms_.begin()->second;
  throw std::domain_error("cyclotomic value is not rational");
}

CycNum& CycNum::operator+=(const CycNum& o) {
  for (auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  for (auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  CycNum r;
  for (auto& [p, c] : terms_)
    for (auto& [q, d] : o.terms_) r.add_term(p + q, c * d);
  *this = std::move(r);
  return *this;
}

CycNum& CycNum::operator*=(const Q& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& [p, v] : r.terms_) v = -v;
  return r;
}

std::complex<double> CycNum::to_complex() const {
  std::complex<double> s = 0;
  for (auto& [p, c] : terms_) s += c.get_d() * std::polar(1.0, 2 * std::numbers::pi * p.get_d());
  return s;
}

}  // namespace hermikit
