#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "arithbar/dvr.hpp"

namespace arithbar {

/// A cochain or other coordinate vector over the ring of the matrix it is used with.
using Vector = std::vector<Residue>;

/// Dense row-major matrix over R/pi^m.
class DvrMatrix {
 public:
  DvrMatrix(const Ring& ring, std::size_t rows, std::size_t cols);

  static DvrMatrix identity(const Ring& ring, std::size_t n);
  /// Entries read with Ring::encode. Throws ShapeMismatch on ragged input.
  static DvrMatrix from_rows(const Ring& ring, const std::vector<std::vector<std::int64_t>>& rows);
  /// n x 1 matrix holding v.
  static DvrMatrix column(const Ring& ring, std::span<const Residue> v);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Residue raw(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  void set_raw(std::size_t i, std::size_t j, Residue v) noexcept { data_[i * cols_ + j] = v; }
  DvrElement at(std::size_t i, std::size_t j) const { return DvrElement(ring_, raw(i, j)); }
  void set(std::size_t i, std::size_t j, const DvrElement& x);

  std::span<const Residue> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector col(std::size_t j) const;

  bool is_zero() const noexcept;
  /// Minimum entry valuation; Censored(m) for the zero matrix (and for empty ones).
  Valuation min_valuation() const;

  DvrMatrix transpose() const;
  /// Matrix-vector product.
  Vector apply(std::span<const Residue> v) const;

  // Elementary operations, used by the elimination routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, Residue factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, Residue factor);
  void scale_row(std::size_t i, Residue factor);
  void scale_col(std::size_t j, Residue factor);

  bool operator==(const DvrMatrix& o) const noexcept = default;

  friend DvrMatrix operator*(const DvrMatrix& a, const DvrMatrix& b);
  friend DvrMatrix operator+(const DvrMatrix& a, const DvrMatrix& b);
  friend DvrMatrix operator-(const DvrMatrix& a, const DvrMatrix& b);
  /// Scalar multiple.
  friend DvrMatrix operator*(const DvrElement& s, const DvrMatrix& a);

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

std::ostream& operator<<(std::ostream& os, const DvrMatrix& m);

/// Entrywise reduction to R/pi^k. Throws PrecisionExceeded when k > m.
DvrMatrix reduce_mod(const DvrMatrix& m, int k);
/// Same representatives read in a ring of equal family and higher precision.
DvrMatrix lift_to(const DvrMatrix& m, const Ring& larger);

/// Determinant by minimal-valuation elimination. Throws ShapeMismatch if not square.
DvrElement determinant(const DvrMatrix& m);
/// Inverse of a matrix with unit determinant. Throws NotAUnit otherwise.
DvrMatrix inverse(const DvrMatrix& m);
bool is_invertible(const DvrMatrix& m);

/// Rank over the residue field F_p of a set of vectors whose entries are
/// already reduced mod p.
std::size_t residue_rank(std::vector<Vector> vectors, std::uint64_t p);
/// Rank of m mod pi over the residue field.
std::size_t residue_rank(const DvrMatrix& m);

}  // namespace arithbar
