#include "arithbar/snf.hpp"

#include <algorithm>

namespace arithbar {

SnfResult smith_normal_form(const DvrMatrix& m) {
  const Ring& r = m.ring();
  const std::size_t rows = m.rows(), cols = m.cols();
  SnfResult out{DvrMatrix::identity(r, rows), DvrMatrix::identity(r, cols), m,
                DvrMatrix::identity(r, rows), DvrMatrix::identity(r, cols), {}, 0};
  DvrMatrix& D = out.D;
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    std::size_t pi = t, pj = t;
    int best = r.precision();
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const int v = r.valuation(D.raw(i, j));
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best >= r.precision()) break;

    if (pi != t) {
      D.swap_rows(pi, t);
      out.U.swap_rows(pi, t);
      out.U_inverse.swap_cols(pi, t);
    }
    if (pj != t) {
      D.swap_cols(pj, t);
      out.V.swap_cols(pj, t);
      out.V_inverse.swap_rows(pj, t);
    }

    const Residue unit_inv = r.inverse(r.shift_down(D.raw(t, t), best));
    for (std::size_t i = t + 1; i < rows; ++i) {
      const Residue e = D.raw(i, t);
      if (e == 0) continue;
      const Residue f = r.neg(r.mul(r.shift_down(e, best), unit_inv));
      D.add_row_multiple(i, t, f);
      out.U.add_row_multiple(i, t, f);
      out.U_inverse.add_col_multiple(t, i, r.neg(f));
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      const Residue e = D.raw(t, j);
      if (e == 0) continue;
      const Residue f = r.neg(r.mul(r.shift_down(e, best), unit_inv));
      D.add_col_multiple(j, t, f);
      out.V.add_col_multiple(j, t, f);
      out.V_inverse.add_row_multiple(t, j, r.neg(f));
    }
    out.exponents.push_back(Valuation::exact(best));
    ++out.rank;
  }
  while (out.exponents.size() < diag) out.exponents.push_back(Valuation::censored(r.precision()));
  return out;
}

namespace {

// Advance a sorted index combination of size k drawn from [0, n); false when exhausted.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

}  // namespace

DeterminantalProfile determinantal_valuations(const DvrMatrix& m) {
  const Ring& ring = m.ring();
  const std::size_t n = std::min(m.rows(), m.cols());
  DeterminantalProfile out;
  int previous = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    int best = ring.precision();
    auto rs = first_combination(r);
    do {
      auto cs = first_combination(r);
      do {
        DvrMatrix minor(ring, r, r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) minor.set_raw(i, j, m.raw(rs[i], cs[j]));
        best = std::min(best, ring.valuation(determinant(minor).residue()));
        // s_r >= s_(r-1): nothing smaller can turn up.
        if (best == previous) break;
      } while (next_combination(cs, m.cols()));
      if (best == previous) break;
    } while (next_combination(rs, m.rows()));
    if (best >= ring.precision()) {
      out.s.push_back(Valuation::censored(ring.precision()));
      previous = ring.precision();
    } else {
      out.s.push_back(Valuation::exact(best));
      previous = best;
    }
  }
  return out;
}

CokernelStructure cokernel_structure(const SnfResult& snf, std::size_t target_dim) {
  CokernelStructure out;
  out.free_rank = target_dim - snf.rank;
  for (const Valuation& a : snf.exponents)
    if (a.is_censored() || a.value() >= 1) out.torsion_exponents.push_back(a);
  return out;
}

CokernelStructure cokernel_structure(const DvrMatrix& m) {
  return cokernel_structure(smith_normal_form(m), m.rows());
}

}  // namespace arithbar
