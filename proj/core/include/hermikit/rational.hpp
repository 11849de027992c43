#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace hermikit {

using Q = mpq_class;
using Z = mpz_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Q& x);
std::string to_string(const Z& x);

// Accepts "p", "p/q", "-p/q". Throws std::invalid_argument on garbage.
Q parse_rational(const std::string& s);

inline Q make_q(long num, long den = 1) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

Z floor_q(const Q& x);
Z ceil_q(const Q& x);

// Representative of x mod 1 in [0, 1).
Q frac(const Q& x);

inline bool is_integer(const Q& x) { return x.get_den() == 1; }

Z lcm(const Z& a, const Z& b);
Z gcd(const Z& a, const Z& b);

// Integer power with the convention 0^0 = 1.
Q pow_q(const Q& base, unsigned long e);

long to_long(const Z& x);

}  // namespace hermikit
