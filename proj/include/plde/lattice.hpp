#pragma once

// Submodules of Z^r in row Hermite normal form, cosets, unimodular matrices.

#include <plde/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace plde {

using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;

inline std::int64_t dot(const IntVec& a, const IntVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

inline IntVec operator+(IntVec a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = checked_add(a[i], b[i]);
  return a;
}

inline IntVec operator-(IntVec a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = checked_sub(a[i], b[i]);
  return a;
}

inline IntVec operator-(IntVec a) {
  for (auto& x : a) x = -x;
  return a;
}

inline IntVec scaled(IntVec a, std::int64_t s) {
  for (auto& x : a) x = checked_mul(x, s);
  return a;
}

inline std::int64_t gcd_of(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, std::abs(x));
  return g;
}

inline std::string format_vec(const IntVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline IntMat transpose(const IntMat& a, std::size_t cols) {
  IntMat t(cols, IntVec(a.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

inline IntMat identity_matrix(std::size_t r) {
  IntMat m(r, IntVec(r, 0));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

namespace detail {

/// Reduces `a` (rows, `cols` columns) to row Hermite normal form in place and
/// applies every row operation to `u` as well, so U_before*A_before relates to
/// the result by the same unimodular transform. Returns the rank.
inline std::size_t hermite_reduce(IntMat& a, std::size_t cols, IntMat* u = nullptr) {
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    if (u) std::swap((*u)[i], (*u)[j]);
  };
  auto axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // row_dst -= q*row_src
    if (q == 0) return;
    for (std::size_t c = 0; c < cols; ++c) a[dst][c] = checked_sub(a[dst][c], checked_mul(q, a[src][c]));
    if (u)
      for (std::size_t c = 0; c < (*u)[dst].size(); ++c)
        (*u)[dst][c] = checked_sub((*u)[dst][c], checked_mul(q, (*u)[src][c]));
  };
  auto negate = [&](std::size_t i) {
    for (auto& x : a[i]) x = -x;
    if (u)
      for (auto& x : (*u)[i]) x = -x;
  };

  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    while (true) {
      std::size_t best = a.size();
      for (std::size_t i = row; i < a.size(); ++i)
        if (a[i][c] != 0 && (best == a.size() || std::abs(a[i][c]) < std::abs(a[best][c]))) best = i;
      if (best == a.size()) break;
      swap_rows(row, best);
      bool done = true;
      for (std::size_t i = row + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        axpy(i, row, a[i][c] / a[row][c]);
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[row][c] == 0) continue;
    if (a[row][c] < 0) negate(row);
    for (std::size_t i = 0; i < row; ++i) axpy(i, row, floor_div(a[i][c], a[row][c]));
    pivots.push_back(c);
    ++row;
  }
  return row;
}

inline std::optional<IntMat> integer_inverse(const IntMat& m) {
  const std::size_t r = m.size();
  std::vector<std::vector<Rational>> a(r, std::vector<Rational>(2 * r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) a[i][j] = static_cast<long>(m[i][j]);
    a[i][r + i] = 1;
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t p = c;
    while (p < r && a[p][c] == 0) ++p;
    if (p == r) return std::nullopt;
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * r; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMat inv(r, IntVec(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const Rational& x = a[i][r + j];
      if (!is_integer(x)) return std::nullopt;
      inv[i][j] = to_int64(x.get_num());
    }
  return inv;
}

}  // namespace detail

/// A submodule of Z^r, stored by its row Hermite normal form basis.
class IntLattice {
 public:
  IntLattice() = default;

  static IntLattice zero(std::size_t r) {
    IntLattice l;
    l.ambient_ = r;
    return l;
  }

  static IntLattice full(std::size_t r) { return from_rows(r, identity_matrix(r)); }

  /// Canonical basis of the Z-span of `rows` (dependent rows allowed).
  static IntLattice from_rows(std::size_t r, IntMat rows) {
    for (const auto& row : rows)
      if (row.size() != r) throw InputError("lattice generator has wrong length");
    std::size_t rank = detail::hermite_reduce(rows, r);
    rows.resize(rank);
    IntLattice l;
    l.ambient_ = r;
    l.basis_ = std::move(rows);
    return l;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const IntMat& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }

  /// Canonical representative of v modulo the lattice.
  IntVec reduce(IntVec v) const {
    for (const auto& row : basis_) {
      std::size_t c = 0;
      while (row[c] == 0) ++c;
      std::int64_t q = floor_div(v[c], row[c]);
      if (q) v = v - scaled(row, q);
    }
    return v;
  }

  bool contains(const IntVec& v) const {
    if (v.size() != ambient_) throw InputError("vector has wrong length for lattice");
    auto red = reduce(v);
    return std::all_of(red.begin(), red.end(), [](auto x) { return x == 0; });
  }

  /// this ⊆ other
  bool is_sublattice_of(const IntLattice& other) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const IntVec& v) { return other.contains(v); });
  }

  friend bool operator==(const IntLattice& a, const IntLattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const IntLattice& a, const IntLattice& b) { return !(a == b); }
  friend bool operator<(const IntLattice& a, const IntLattice& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a.basis_ < b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  IntMat basis_;
};

/// Generator syntax used on the command line: "1,-1", "1,0;0,1", "0" for {0}.
inline std::string format_lattice(const IntLattice& l) {
  if (l.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < l.rank(); ++i) s += (i ? ";" : "") + format_vec(l.basis()[i]);
  return s;
}

inline IntVec parse_int_vec(const std::string& text) {
  IntVec v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long x = std::stoll(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::logic_error&) {
      throw InputError("not an integer: '" + item + "'");
    }
  }
  if (v.empty()) throw InputError("empty integer vector");
  return v;
}

inline IntLattice parse_lattice(const std::string& text, std::size_t r) {
  std::string t = text;
  if (t == "0" || t == "{0}") return IntLattice::zero(r);
  IntMat rows;
  std::stringstream ss(t);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_int_vec(row));
  for (const auto& v : rows)
    if (v.size() != r) throw InputError("module generator '" + format_vec(v) + "' has wrong length");
  return IntLattice::from_rows(r, rows);
}

/// {x in Z^r : rows * x = 0}; always saturated.
inline IntLattice integer_kernel(const IntMat& rows, std::size_t r) {
  if (rows.empty()) return IntLattice::full(r);
  IntMat a = transpose(rows, r);  // r x m
  IntMat u = identity_matrix(r);
  std::size_t rank = detail::hermite_reduce(a, rows.size(), &u);
  IntMat kernel(u.begin() + static_cast<std::ptrdiff_t>(rank), u.end());
  return IntLattice::from_rows(r, kernel);
}

inline IntLattice orthogonal_complement(const IntLattice& w) { return integer_kernel(w.basis(), w.ambient()); }

/// L ⊗ Q ∩ Z^r.
inline IntLattice saturation(const IntLattice& l) { return orthogonal_complement(orthogonal_complement(l)); }

inline bool is_saturated(const IntLattice& l) { return saturation(l) == l; }

inline IntLattice lattice_sum(const IntLattice& a, const IntLattice& b) {
  IntMat rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return IntLattice::from_rows(a.ambient(), rows);
}

/// Integer matrix with determinant ±1 together with its inverse.
class UnimodularMatrix {
 public:
  UnimodularMatrix() = default;
  explicit UnimodularMatrix(IntMat m) : m_(std::move(m)) {
    for (const auto& row : m_)
      if (row.size() != m_.size()) throw InputError("matrix is not square");
    auto inv = detail::integer_inverse(m_);
    if (!inv) throw InputError("matrix is not unimodular (|det| != 1)");
    inv_ = std::move(*inv);
  }

  static UnimodularMatrix identity(std::size_t r) { return UnimodularMatrix(identity_matrix(r)); }

  std::size_t size() const { return m_.size(); }
  const IntMat& matrix() const { return m_; }
  const IntMat& inverse_matrix() const { return inv_; }
  UnimodularMatrix inverse() const { return UnimodularMatrix(inv_); }

  IntVec apply(const IntVec& v) const { return mul(m_, v); }
  IntVec apply_inverse(const IntVec& v) const { return mul(inv_, v); }

  std::int64_t determinant() const {
    // ±1 by construction; sign from a rational elimination
    const std::size_t r = m_.size();
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) a[i][j] = static_cast<long>(m_[i][j]);
    Rational det = 1;
    for (std::size_t c = 0; c < r; ++c) {
      std::size_t p = c;
      while (a[p][c] == 0) ++p;
      if (p != c) {
        std::swap(a[p], a[c]);
        det = -det;
      }
      det *= a[c][c];
      for (std::size_t i = c + 1; i < r; ++i) {
        Rational f = a[i][c] / a[c][c];
        for (std::size_t j = c; j < r; ++j) a[i][j] -= f * a[c][j];
      }
    }
    return det > 0 ? 1 : -1;
  }

  friend bool operator==(const UnimodularMatrix& a, const UnimodularMatrix& b) { return a.m_ == b.m_; }

  static IntVec mul(const IntMat& m, const IntVec& v) {
    IntVec out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
    return out;
  }

 private:
  IntMat m_, inv_;
};

inline IntMat matmul(const IntMat& a, const IntMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat c(n, IntVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) c[i][j] = checked_add(c[i][j], checked_mul(a[i][l], b[l][j]));
  return c;
}

/// A square matrix with |det| = 1 whose first rows are `rows`.
///
/// The rows must be a basis of a saturated sublattice of Z^r.
inline UnimodularMatrix unimodular_completion(const IntMat& rows, std::size_t r) {
  const std::size_t t = rows.size();
  if (t > r) throw HypothesisError("more rows than the ambient dimension");
  for (const auto& row : rows)
    if (row.size() != r) throw InputError("row has wrong length");
  if (t == 0) return UnimodularMatrix::identity(r);
  // V * rows^T = H with V unimodular, so rows = H^T * (V^-1)^T
  IntMat a = transpose(rows, r);
  IntMat v = identity_matrix(r);
  std::size_t rank = detail::hermite_reduce(a, t, &v);
  if (rank != t) throw HypothesisError("rows are linearly dependent");
  IntMat ht(t, IntVec(t));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) ht[i][j] = a[j][i];
  auto ht_inv = detail::integer_inverse(ht);
  if (!ht_inv) throw HypothesisError("rows do not span a saturated lattice; saturate first");
  auto v_inv = detail::integer_inverse(v);
  IntMat m0 = transpose(*v_inv, r);
  IntMat block = identity_matrix(r);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) block[i][j] = ht[i][j];
  IntMat m = matmul(block, m0);
  for (std::size_t i = 0; i < t; ++i)
    if (m[i] != rows[i]) throw std::logic_error("unimodular completion lost the prescribed rows");
  return UnimodularMatrix(m);
}

/// c + L, or the empty set.
class ShiftCoset {
 public:
  ShiftCoset() = default;  // empty
  ShiftCoset(IntVec base, IntLattice lattice) : lattice_(std::move(lattice)), nonempty_(true) {
    base_ = lattice_.reduce(std::move(base));
  }

  static ShiftCoset empty() { return {}; }

  bool is_empty() const { return !nonempty_; }
  const IntVec& base() const { return base_; }
  const IntLattice& lattice() const { return lattice_; }

  bool contains(const IntVec& v) const { return nonempty_ && lattice_.contains(v - base_); }

  friend bool operator==(const ShiftCoset& a, const ShiftCoset& b) {
    if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
    return a.lattice_ == b.lattice_ && a.base_ == b.base_;
  }

 private:
  IntVec base_;
  IntLattice lattice_;
  bool nonempty_ = false;
};

inline ShiftCoset coset_normalize(const IntVec& base, const IntLattice& l) { return ShiftCoset(base, l); }

inline std::string format_coset(const ShiftCoset& c) {
  if (c.is_empty()) return "empty";
  return "(" + format_vec(c.base()) + ") + " + (c.lattice().is_zero() ? "{0}" : "<" + format_lattice(c.lattice()) + ">");
}

}  // namespace plde
