#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfhom/checked.hpp"
#include "surfhom/error.hpp"
#include "surfhom/int_matrix.hpp"

namespace surfhom {

/// Coefficient ring selector: 0 means Z, a prime p means Z/p.
class Modulus {
 public:
  constexpr Modulus() = default;

  static constexpr Modulus integers() { return Modulus(); }
  static Modulus prime(std::int64_t p) {
    if (!is_prime(p)) throw ValidationError("modulus " + std::to_string(p) + " is not prime");
    Modulus m;
    m.p_ = p;
    return m;
  }
  /// 0 or a prime.
  static Modulus of(std::int64_t p) { return p == 0 ? integers() : prime(p); }

  std::int64_t value() const { return p_; }
  bool is_integers() const { return p_ == 0; }

  friend bool operator==(Modulus a, Modulus b) { return a.p_ == b.p_; }

  static bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d <= p / d; ++d)
      if (p % d == 0) return false;
    return true;
  }

 private:
  std::int64_t p_ = 0;
};

/// U * A * V = D with U, V unimodular; V_inv is the inverse of V.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix V_inv;
  /// Diagonal of D, length min(rows, cols); nonzero entries first, each dividing the next.
  std::vector<std::int64_t> invariant_factors;

  std::size_t rank() const {
    std::size_t r = 0;
    for (auto d : invariant_factors)
      if (d != 0) ++r;
    return r;
  }
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst += q * row_src
inline void add_row(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) = checked::add(m(dst, j), checked::mul(q, m(src, j)));
}

// col_dst += q * col_src
inline void add_col(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) = checked::add(m(i, dst), checked::mul(q, m(i, src)));
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  // Fermat; p is prime and small enough that (p-1)^2 fits.
  std::int64_t r = 1, b = checked::mod(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % p);
    b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
    e >>= 1;
  }
  return r;
}

/// Row echelon form mod p with T * A = R (all entries in [0, p)).
struct ModEchelon {
  IntMatrix R;
  IntMatrix T;
  std::vector<std::size_t> pivot_cols;  // pivot column of row i, for i < rank
  std::size_t rank = 0;
};

inline ModEchelon echelon_mod(const IntMatrix& A, std::int64_t p) {
  ModEchelon e{A, IntMatrix::identity(A.rows()), {}, 0};
  IntMatrix& R = e.R;
  IntMatrix& T = e.T;
  for (std::size_t i = 0; i < R.rows(); ++i)
    for (std::size_t j = 0; j < R.cols(); ++j) R(i, j) = checked::mod(R(i, j), p);
  auto mulmod = [p](std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
  };
  auto row_axpy = [&](IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) = checked::mod(m(dst, j) + mulmod(q, m(src, j)), p);
  };
  auto row_scale = [&](IntMatrix& m, std::size_t r, std::int64_t q) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = mulmod(q, m(r, j));
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < R.cols() && r < R.rows(); ++c) {
    std::size_t piv = r;
    while (piv < R.rows() && R(piv, c) == 0) ++piv;
    if (piv == R.rows()) continue;
    swap_rows(R, r, piv);
    swap_rows(T, r, piv);
    std::int64_t inv = inv_mod(R(r, c), p);
    row_scale(R, r, inv);
    row_scale(T, r, inv);
    for (std::size_t i = 0; i < R.rows(); ++i) {
      if (i == r || R(i, c) == 0) continue;
      std::int64_t q = p - R(i, c);
      row_axpy(R, i, r, q);
      row_axpy(T, i, r, q);
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rank = r;
  return e;
}

}  // namespace detail

/// Smith normal form. Pivot rule: smallest nonzero absolute value in the trailing block, ties broken by lowest (row, col).
inline SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithForm s{IntMatrix::identity(m), A, IntMatrix::identity(n), IntMatrix::identity(n), {}};
  IntMatrix& D = s.D;
  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      std::int64_t best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          std::int64_t v = D(i, j);
          if (v == 0) continue;
          std::int64_t av = checked::abs(v);
          if (pi == m || av < best) {
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (pi == m) break;  // trailing block is zero
      detail::swap_rows(D, t, pi);
      detail::swap_rows(s.U, t, pi);
      detail::swap_cols(D, t, pj);
      detail::swap_cols(s.V, t, pj);
      detail::swap_rows(s.V_inv, t, pj);

      const std::int64_t p = D(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        std::int64_t q = checked::floor_div(D(i, t), p);
        detail::add_row(D, i, t, checked::neg(q));
        detail::add_row(s.U, i, t, checked::neg(q));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        std::int64_t q = checked::floor_div(D(t, j), p);
        detail::add_col(D, j, t, checked::neg(q));
        detail::add_col(s.V, j, t, checked::neg(q));
        detail::add_row(s.V_inv, t, j, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any offending row into row t and repeat.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % p != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      detail::add_row(D, t, bad, 1);
      detail::add_row(s.U, t, bad, 1);
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) D(t, j) = checked::neg(D(t, j));
      for (std::size_t j = 0; j < m; ++j) s.U(t, j) = checked::neg(s.U(t, j));
    }
  }
  s.invariant_factors.resize(k);
  for (std::size_t t = 0; t < k; ++t) s.invariant_factors[t] = D(t, t);
  return s;
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped.
inline IntMatrix hermite_normal_form(const IntMatrix& A) {
  IntMatrix H = A;
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
    for (;;) {
      std::size_t piv = H.rows();
      for (std::size_t i = r; i < H.rows(); ++i)
        if (H(i, c) != 0 && (piv == H.rows() || checked::abs(H(i, c)) < checked::abs(H(piv, c)))) piv = i;
      if (piv == H.rows()) break;
      detail::swap_rows(H, r, piv);
      bool done = true;
      for (std::size_t i = r + 1; i < H.rows(); ++i) {
        if (H(i, c) == 0) continue;
        detail::add_row(H, i, r, checked::neg(checked::floor_div(H(i, c), H(r, c))));
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= H.rows() || H(r, c) == 0) continue;
    if (H(r, c) < 0)
      for (std::size_t j = 0; j < H.cols(); ++j) H(r, j) = checked::neg(H(r, j));
    for (std::size_t i = 0; i < r; ++i) detail::add_row(H, i, r, checked::neg(checked::floor_div(H(i, c), H(r, c))));
    ++r;
  }
  IntMatrix out(r, H.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < H.cols(); ++j) out(i, j) = H(i, j);
  return out;
}

/// Rank over Q (modulus 0) or over Z/p.
inline std::size_t rank(const IntMatrix& M, Modulus mod = {}) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  if (mod.is_integers()) return smith_normal_form(M).rank();
  return detail::echelon_mod(M, mod.value()).rank;
}

struct SpanResult {
  bool member = false;
  /// witness * M = v (over Z, or entrywise mod p with entries in [0, p)).
  IntVector witness;
};

/// Row-span membership of v over Z or Z/p.
inline SpanResult in_span(const IntMatrix& M, const IntVector& v, Modulus mod = {}) {
  if (v.size() != M.cols()) throw ValidationError("in_span: vector length does not match column count");
  const std::size_t k = M.rows();
  bool zero = true;
  for (auto x : v)
    if (x != 0 && (mod.is_integers() || checked::mod(x, mod.value()) != 0)) zero = false;
  if (zero) return {true, IntVector(k, 0)};
  if (k == 0) return {false, {}};

  if (mod.is_integers()) {
    SmithForm s = smith_normal_form(M);
    IntVector w = vec_mul(v, s.V);  // y * D = v * V
    IntVector y(k, 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::int64_t d = i < s.invariant_factors.size() ? s.invariant_factors[i] : 0;
      if (d == 0) {
        if (w[i] != 0) return {false, {}};
      } else {
        if (w[i] % d != 0) return {false, {}};
        y[i] = w[i] / d;
      }
    }
    return {true, vec_mul(y, s.U)};
  }

  const std::int64_t p = mod.value();
  detail::ModEchelon e = detail::echelon_mod(M, p);
  IntVector rest(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) rest[j] = checked::mod(v[j], p);
  IntVector coeff(k, 0);  // coefficients on rows of R
  for (std::size_t i = 0; i < e.rank; ++i) {
    std::size_t c = e.pivot_cols[i];
    std::int64_t q = rest[c];
    if (q == 0) continue;
    coeff[i] = q;
    for (std::size_t j = 0; j < v.size(); ++j)
      rest[j] = checked::mod(rest[j] - static_cast<std::int64_t>(static_cast<__int128>(q) * e.R(i, j) % p), p);
  }
  for (auto x : rest)
    if (x != 0) return {false, {}};
  IntVector witness = vec_mul(coeff, e.T);
  for (auto& x : witness) x = checked::mod(x, p);
  return {true, witness};
}

/// Rows extend to a basis of Z^cols (all invariant factors 1), or are independent over Z/p.
inline bool is_partial_basis(const IntMatrix& M, Modulus mod = {}) {
  if (M.rows() == 0) return true;
  if (M.rows() > M.cols()) return false;
  if (!mod.is_integers()) return detail::echelon_mod(M, mod.value()).rank == M.rows();
  SmithForm s = smith_normal_form(M);
  for (auto d : s.invariant_factors)
    if (d != 1) return false;
  return true;
}

/// Index of the row lattice in Z^cols; nullopt when the rank is deficient (infinite index).
inline std::optional<std::int64_t> subgroup_index(const IntMatrix& M) {
  if (M.cols() == 0) return 1;
  if (M.rows() == 0) return std::nullopt;
  SmithForm s = smith_normal_form(M);
  if (s.rank() < M.cols()) return std::nullopt;
  std::int64_t idx = 1;
  for (auto d : s.invariant_factors) idx = checked::mul(idx, d);
  return idx;
}

/// Exact determinant by fraction-free (Bareiss) elimination with 128-bit intermediates.
inline std::int64_t det_int(const IntMatrix& M) {
  if (!M.is_square()) throw ValidationError("det_int: matrix is not square");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  std::vector<__int128> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = M(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> __int128& { return a[i * n + j]; };
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && at(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 x, y;
        if (__builtin_mul_overflow(at(k, k), at(i, j), &x) || __builtin_mul_overflow(at(i, k), at(k, j), &y))
          throw OverflowError("det_int: intermediate exceeds 128 bits");
        at(i, j) = (x - y) / prev;
        checked::narrow(at(i, j));
      }
    prev = at(k, k);
  }
  return checked::narrow(sign * at(n - 1, n - 1));
}

/// Rows that, stacked under M, give a square matrix of determinant +-1.
inline IntMatrix complete_to_unimodular(const IntMatrix& M) {
  if (!is_partial_basis(M)) throw ValidationError("complete_to_unimodular: rows are not a partial basis");
  const std::size_t n = M.cols(), k = M.rows();
  if (k == 0) return IntMatrix::identity(n);
  SmithForm s = smith_normal_form(M);
  // M = U^-1 [I_k | 0] V^-1, so the last n-k rows of V^-1 complete it.
  IntMatrix out(n - k, n);
  for (std::size_t i = k; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i - k, j) = s.V_inv(i, j);
  return out;
}

}  // namespace surfhom
