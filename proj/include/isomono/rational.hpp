#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace isomono {

using Q = mpq_class;
using Z = mpz_class;

struct algebra_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Q& q) { return q.get_str(); }

inline Q parse_rational(const std::string& s) {
  Q q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw parse_error("bad rational: '" + s + "'");
  if (q.get_den() == 0) throw parse_error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// exact square root of a nonnegative rational, if it exists
inline std::optional<Q> sqrt_exact(const Q& q) {
  if (sgn(q) < 0) return std::nullopt;
  Z n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  Z rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Q r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace isomono
