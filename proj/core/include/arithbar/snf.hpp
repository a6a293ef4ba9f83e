#pragma once

#include <cstddef>
#include <vector>

#include "arithbar/dvr.hpp"
#include "arithbar/matrix.hpp"

namespace arithbar {

/// Smith normal form U * M * V = D over R/pi^m.
///
/// D is diagonal with entries pi^{a_j} * (unit); the units are not normalized
/// away. `exponents` has min(rows, cols) entries: the valuations of the
/// nonzero diagonal entries in nondecreasing order, followed by Censored(m)
/// for every diagonal position that is zero mod pi^m.
struct SnfResult {
  DvrMatrix U;
  DvrMatrix V;
  DvrMatrix D;
  DvrMatrix U_inverse;
  DvrMatrix V_inverse;
  std::vector<Valuation> exponents;
  /// Number of diagonal entries not congruent to zero mod pi^m.
  std::size_t rank = 0;

  std::size_t censored_count() const noexcept { return exponents.size() - rank; }
  bool precision_limited() const noexcept { return censored_count() > 0; }
};

/// Pivots on the entry of minimal valuation in the remaining block, ties
/// broken by the lexicographically smallest (row, col). Deterministic.
SnfResult smith_normal_form(const DvrMatrix& m);

/// s_r = minimum valuation over all r x r minors, r = 1..min(rows, cols);
/// Censored(m) when every r x r minor vanishes mod pi^m. Enumerates minors,
/// so cost grows combinatorially with the matrix size.
struct DeterminantalProfile {
  std::vector<Valuation> s;
};

DeterminantalProfile determinantal_valuations(const DvrMatrix& m);

/// coker(M) for M : R^cols -> R^rows.
struct CokernelStructure {
  /// rows - rank: directions not detected as torsion at working precision.
  std::size_t free_rank = 0;
  /// Exponents >= 1, uncensored ones first (nondecreasing), then Censored(m)
  /// entries for diagonal positions that vanished mod pi^m.
  std::vector<Valuation> torsion_exponents;
};

CokernelStructure cokernel_structure(const DvrMatrix& m);
CokernelStructure cokernel_structure(const SnfResult& snf, std::size_t target_dim);

}  // namespace arithbar
