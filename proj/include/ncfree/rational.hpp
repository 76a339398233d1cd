#pragma once

// Exact arithmetic used throughout: GMP integers and rationals.
// Rationals are serialized as "p/q" in lowest terms with q > 0 ("p" when q == 1).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncfree {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int int_pow(long base, unsigned long e) { return int_pow(Int(base), e); }

// n(n-1)...(n-m+1)
inline Int falling_factorial(long n, int m) {
  Int r = 1;
  for (int t = 0; t < m; ++t) r *= Int(n - t);
  return r;
}

inline Int catalan(int k) {
  if (k < 0) throw std::invalid_argument("catalan: negative index");
  Int num;
  mpz_bin_uiui(num.get_mpz_t(), 2 * (unsigned long)k, (unsigned long)k);
  return num / Int(k + 1);
}

inline Int bell(int k) {
  // Bell triangle
  if (k < 0) throw std::invalid_argument("bell: negative index");
  std::vector<Int> row{1};
  for (int i = 1; i <= k; ++i) {
    std::vector<Int> next(i + 1);
    next[0] = row.back();
    for (int j = 1; j <= i; ++j) next[j] = next[j - 1] + row[j - 1];
    row = std::move(next);
  }
  return row[0];
}

inline std::string rat_to_string(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  if (q.get_den() <= 0) throw std::invalid_argument("bad rational: " + s);
  return q;
}

}  // namespace ncfree
