#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qmld {

/// Exact rational number. All arithmetic in this library is exact; no
/// floating point appears anywhere in inputs, internals, or outputs.
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument on
/// malformed input or a zero denominator.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw std::invalid_argument("bad rational literal: " + s);
  }
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Floor of an exact rational as an integer.
inline Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline long lcm_long(long a, long b) {
  Int g = gcd(Int(a), Int(b));
  Int l = Int(a) / g * Int(b);
  return l.get_si();
}

}  // namespace qmld
