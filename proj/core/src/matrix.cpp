#include "arithbar/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "arithbar/error.hpp"

namespace arithbar {

namespace {

void require_same_ring(const DvrMatrix& a, const DvrMatrix& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorCode::RingMismatch, a.ring().name() + " vs " + b.ring().name());
}

std::string shape(const DvrMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

DvrMatrix::DvrMatrix(const Ring& ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

DvrMatrix DvrMatrix::identity(const Ring& ring, std::size_t n) {
  DvrMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set_raw(i, i, 1 % ring.modulus());
  return m;
}

DvrMatrix DvrMatrix::from_rows(const Ring& ring, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  DvrMatrix m(ring, rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < ncols; ++j) m.set_raw(i, j, ring.encode(rows[i][j]));
  }
  return m;
}

DvrMatrix DvrMatrix::column(const Ring& ring, std::span<const Residue> v) {
  DvrMatrix m(ring, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.set_raw(i, 0, v[i] % ring.modulus());
  return m;
}

void DvrMatrix::set(std::size_t i, std::size_t j, const DvrElement& x) {
  if (!(x.ring() == ring_)) throw Error(ErrorCode::RingMismatch, x.ring().name() + " vs " + ring_.name());
  set_raw(i, j, x.residue());
}

Vector DvrMatrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = raw(i, j);
  return v;
}

bool DvrMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

Valuation DvrMatrix::min_valuation() const {
  int best = ring_.precision();
  for (Residue x : data_) best = std::min(best, ring_.valuation(x));
  if (best >= ring_.precision()) return Valuation::censored(ring_.precision());
  return Valuation::exact(best);
}

DvrMatrix DvrMatrix::transpose() const {
  DvrMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set_raw(j, i, raw(i, j));
  return t;
}

Vector DvrMatrix::apply(std::span<const Residue> v) const {
  if (v.size() != cols_)
    throw Error(ErrorCode::ShapeMismatch, "vector of length " + std::to_string(v.size()) +
                                              " applied to " + shape(*this) + " matrix");
  Vector out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    Residue acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = ring_.add(acc, ring_.mul(raw(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

void DvrMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
}

void DvrMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(data_[i * cols_ + a], data_[i * cols_ + b]);
}

void DvrMatrix::add_row_multiple(std::size_t dst, std::size_t src, Residue factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Residue s = raw(src, j);
    if (s != 0) set_raw(dst, j, ring_.add(raw(dst, j), ring_.mul(factor, s)));
  }
}

void DvrMatrix::add_col_multiple(std::size_t dst, std::size_t src, Residue factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Residue s = raw(i, src);
    if (s != 0) set_raw(i, dst, ring_.add(raw(i, dst), ring_.mul(factor, s)));
  }
}

void DvrMatrix::scale_row(std::size_t i, Residue factor) {
  for (std::size_t j = 0; j < cols_; ++j) set_raw(i, j, ring_.mul(raw(i, j), factor));
}

void DvrMatrix::scale_col(std::size_t j, Residue factor) {
  for (std::size_t i = 0; i < rows_; ++i) set_raw(i, j, ring_.mul(raw(i, j), factor));
}

DvrMatrix operator*(const DvrMatrix& a, const DvrMatrix& b) {
  require_same_ring(a, b);
  if (a.cols() != b.rows())
    throw Error(ErrorCode::ShapeMismatch, "cannot multiply " + shape(a) + " by " + shape(b));
  const Ring& r = a.ring();
  DvrMatrix c(r, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Residue x = a.raw(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.set_raw(i, j, r.add(c.raw(i, j), r.mul(x, b.raw(k, j))));
    }
  return c;
}

DvrMatrix operator+(const DvrMatrix& a, const DvrMatrix& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::ShapeMismatch, "cannot add " + shape(a) + " and " + shape(b));
  DvrMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set_raw(i, j, a.ring().add(a.raw(i, j), b.raw(i, j)));
  return c;
}

DvrMatrix operator-(const DvrMatrix& a, const DvrMatrix& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::ShapeMismatch, "cannot subtract " + shape(a) + " and " + shape(b));
  DvrMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set_raw(i, j, a.ring().sub(a.raw(i, j), b.raw(i, j)));
  return c;
}

DvrMatrix operator*(const DvrElement& s, const DvrMatrix& a) {
  if (!(s.ring() == a.ring())) throw Error(ErrorCode::RingMismatch, "scalar from another ring");
  DvrMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) c.scale_row(i, s.residue());
  return c;
}

std::ostream& operator<<(std::ostream& os, const DvrMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m.raw(i, j);
    os << "]";
  }
  return os << "]";
}

DvrMatrix reduce_mod(const DvrMatrix& m, int k) {
  if (k > m.ring().precision())
    throw Error(ErrorCode::PrecisionExceeded,
                "cannot reduce to pi^" + std::to_string(k) + " from " + m.ring().name());
  const Ring target = m.ring().with_precision(k);
  DvrMatrix out(target, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set_raw(i, j, m.raw(i, j) % target.modulus());
  return out;
}

DvrMatrix lift_to(const DvrMatrix& m, const Ring& larger) {
  const Ring& r = m.ring();
  if (larger.kind() != r.kind() || larger.prime() != r.prime() || larger.precision() < r.precision())
    throw Error(ErrorCode::RingMismatch, "cannot lift " + r.name() + " to " + larger.name());
  DvrMatrix out(larger, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set_raw(i, j, m.raw(i, j));
  return out;
}

DvrElement determinant(const DvrMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "determinant of " + shape(m) + " matrix");
  const Ring& r = m.ring();
  const std::size_t n = m.rows();
  DvrMatrix a = m;
  Residue det = 1 % r.modulus();
  for (std::size_t t = 0; t < n; ++t) {
    // Full pivoting on minimal valuation keeps every quotient integral.
    std::size_t pi = t, pj = t;
    int best = r.precision();
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const int v = r.valuation(a.raw(i, j));
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best >= r.precision()) return DvrElement::zero(r);
    if (pi != t) {
      a.swap_rows(pi, t);
      det = r.neg(det);
    }
    if (pj != t) {
      a.swap_cols(pj, t);
      det = r.neg(det);
    }
    const Residue pivot = a.raw(t, t);
    const Residue pivot_unit_inv = r.inverse(r.shift_down(pivot, best));
    for (std::size_t i = t + 1; i < n; ++i) {
      const Residue e = a.raw(i, t);
      if (e == 0) continue;
      // e / pivot = pi^(v(e) - best) * unit(e) * unit(pivot)^-1
      const Residue q = r.mul(r.shift_down(e, best), pivot_unit_inv);
      a.add_row_multiple(i, t, r.neg(q));
    }
    det = r.mul(det, pivot);
  }
  return DvrElement(r, det);
}

DvrMatrix inverse(const DvrMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "inverse of " + shape(m) + " matrix");
  const Ring& r = m.ring();
  const std::size_t n = m.rows();
  DvrMatrix a = m;
  DvrMatrix inv = DvrMatrix::identity(r, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t i = c; i < n; ++i)
      if (r.is_unit(a.raw(i, c))) {
        pivot = i;
        break;
      }
    if (pivot == n) throw Error(ErrorCode::NotAUnit, "matrix is not invertible over " + r.name());
    a.swap_rows(pivot, c);
    inv.swap_rows(pivot, c);
    const Residue s = r.inverse(a.raw(c, c));
    a.scale_row(c, s);
    inv.scale_row(c, s);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a.raw(i, c) == 0) continue;
      const Residue f = r.neg(a.raw(i, c));
      a.add_row_multiple(i, c, f);
      inv.add_row_multiple(i, c, f);
    }
  }
  return inv;
}

bool is_invertible(const DvrMatrix& m) {
  return m.rows() == m.cols() && determinant(m).is_unit();
}

std::size_t residue_rank(std::vector<Vector> vectors, std::uint64_t p) {
  const Ring field = Ring::p_adic(p, 1);
  std::size_t rank = 0;
  if (vectors.empty()) return 0;
  const std::size_t len = vectors.front().size();
  for (std::size_t c = 0; c < len && rank < vectors.size(); ++c) {
    std::size_t pivot = vectors.size();
    for (std::size_t i = rank; i < vectors.size(); ++i)
      if (vectors[i][c] % p != 0) {
        pivot = i;
        break;
      }
    if (pivot == vectors.size()) continue;
    std::swap(vectors[pivot], vectors[rank]);
    const Residue s = field.inverse(vectors[rank][c] % p);
    for (std::size_t i = rank + 1; i < vectors.size(); ++i) {
      const Residue e = vectors[i][c] % p;
      if (e == 0) continue;
      const Residue f = field.neg(field.mul(e, s));
      for (std::size_t j = c; j < len; ++j)
        vectors[i][j] = field.add(vectors[i][j] % p, field.mul(f, vectors[rank][j] % p));
    }
    ++rank;
  }
  return rank;
}

std::size_t residue_rank(const DvrMatrix& m) {
  std::vector<Vector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
  return residue_rank(std::move(rows), m.ring().prime());
}

}  // namespace arithbar
