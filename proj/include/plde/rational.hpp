#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace plde {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (syntax, unknown names, inconsistent shapes).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A required hypothesis or precondition does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Valid input that this implementation deliberately does not handle.
class Unsupported : public Error {
 public:
  using Error::Error;
};

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw InputError("not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Unsupported("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Unsupported("64-bit overflow in lattice arithmetic");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Unsupported("64-bit overflow in lattice arithmetic");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Unsupported("64-bit overflow in lattice arithmetic");
  return r;
}

/// Reduced-row-echelon solve of `rows * x = rhs` over Q.
///
/// On success returns a particular solution and a basis of the homogeneous
/// solution space; returns false when the system is inconsistent.
struct AffineSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;
};

inline bool solve_affine(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
                         std::size_t unknowns, AffineSolution& out) {
  const std::size_t m = rows.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && rows[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(rows[piv], rows[r]);
    std::swap(rhs[piv], rhs[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < unknowns; ++j) rows[i][j] -= f * rows[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (rhs[i] != 0) return false;

  out.particular.assign(unknowns, Rational(0));
  for (std::size_t i = 0; i < r; ++i) out.particular[pivot_col[i]] = rhs[i];

  out.kernel.clear();
  std::vector<bool> is_pivot(unknowns, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t free = 0; free < unknowns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(unknowns, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivot_col[i]] = -rows[i][free];
    out.kernel.push_back(std::move(v));
  }
  return true;
}

}  // namespace plde
