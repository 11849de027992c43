#include "hermikit/rational.hpp"

#include <stdexcept>

namespace hermikit {

std::string to_string(const Q& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Z& x) { return x.get_str(); }

Q parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto check = [&](const std::string& part, bool allow_sign) {
    if (part.empty()) throw std::invalid_argument("malformed rational: " + s);
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) throw std::invalid_argument("malformed rational: " + s);
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("malformed rational: " + s);
  };
  std::string num = s.substr(0, slash);
  check(num, true);
  if (num[0] == '+') num = num.substr(1);
  Q r;
  if (slash == std::string::npos) {
    r = Q(Z(num));
  } else {
    std::string den = s.substr(slash + 1);
    check(den, false);
    Z d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    r = Q(Z(num), d);
    r.canonicalize();
  }
  return r;
}

Z floor_q(const Q& x) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Z ceil_q(const Q& x) {
  Z r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Q frac(const Q& x) { return x - Q(floor_q(x)); }

Z lcm(const Z& a, const Z& b) {
  Z r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Z gcd(const Z& a, const Z& b) {
  Z r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Q pow_q(const Q& base, unsigned long e) {
  Q r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= base;
  return r;
}

long to_long(const Z& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in long: " + x.get_str());
  return x.get_si();
}

}  // namespace hermikit
