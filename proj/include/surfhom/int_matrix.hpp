#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfhom/checked.hpp"
#include "surfhom/error.hpp"

namespace surfhom {

using IntVector = std::vector<std::int64_t>;

/// Dense row-major integer matrix. A matrix may have zero rows (an empty system of vectors in Z^cols).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<IntVector> rows) : IntMatrix(from_rows(std::vector<IntVector>(rows))) {}

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0) {
    if (rows.empty()) return IntMatrix(0, cols_if_empty);
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ValidationError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_rows(std::initializer_list<IntVector> rows) { return from_rows(std::vector<IntVector>(rows)); }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  std::vector<IntVector> to_rows() const {
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= rows_) throw ValidationError("row index out of range");
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
    }
    return m;
  }

  /// Rows of *this followed by rows of other.
  IntMatrix vstack(const IntMatrix& other) const {
    if (rows_ == 0) return other.rows_ == 0 ? IntMatrix(0, std::max(cols_, other.cols_)) : other;
    if (other.rows_ == 0) return *this;
    if (other.cols_ != cols_) throw ValidationError("vstack column mismatch");
    IntMatrix m(rows_ + other.rows_, cols_);
    std::copy(a_.begin(), a_.end(), m.a_.begin());
    std::copy(other.a_.begin(), other.a_.end(), m.a_.begin() + static_cast<std::ptrdiff_t>(a_.size()));
    return m;
  }

  IntMatrix with_row(const IntVector& r) const { return vstack(from_rows({r})); }

  bool is_zero() const {
    for (auto x : a_)
      if (x != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix product dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        std::int64_t aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) = checked::add(c(i, j), checked::mul(aik, b(k, j)));
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << "]";
    }
    return os << "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> a_;
};

/// Row vector times matrix.
inline IntVector vec_mul(const IntVector& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw ValidationError("vector-matrix dimension mismatch");
  IntVector out(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = checked::add(out[j], checked::mul(v[i], m(i, j)));
  }
  return out;
}

inline std::int64_t dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw ValidationError("dot product dimension mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked::add(s, checked::mul(a[i], b[i]));
  return s;
}

inline void to_json(nlohmann::json& j, const IntMatrix& m) { j = m.to_rows(); }

inline void from_json(const nlohmann::json& j, IntMatrix& m) {
  if (!j.is_array()) throw ValidationError("matrix JSON must be an array of rows");
  m = IntMatrix::from_rows(j.get<std::vector<IntVector>>());
}

}  // namespace surfhom
