#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arithbar/matrix.hpp"
#include "arithbar/snf.hpp"

namespace arithbar {

/// Integral idempotents attached to a coboundary through its Smith form:
/// kernel = V E0 V^-1, saturation = U^-1 E1 U, free = I - saturation, where
/// E1 keeps the first `rank` coordinates and E0 the remaining ones.
struct ProjectorTriple {
  DvrMatrix kernel;
  DvrMatrix saturation;
  DvrMatrix free;
  /// Some exponents were censored, so the saturation is only known up to
  /// pi^m ambiguity.
  bool precision_limited = false;
};

ProjectorTriple projectors(const SnfResult& snf);

/// Uncensored exponents >= 1 of sat(im d)/im d, computed from a second Smith
/// form of the nonzero rows of U*d. Used to cross-check the cokernel torsion.
std::vector<Valuation> saturation_quotient(const DvrMatrix& delta, const SnfResult& snf);

/// For k <= m: the reduction of each projector mod pi^k acts on reduced
/// standard basis vectors as the reduction of the full-precision action, and
/// stays idempotent. Throws PrecisionExceeded when k > m.
bool reduction_commutes_check(const ProjectorTriple& p, int k);

/// w lies in im(delta): coordinates i >= rank of U*w vanish and coordinate i
/// < rank has valuation >= a_i.
bool in_image(const SnfResult& snf, std::span<const Residue> w);
/// w lies in sat(im delta): coordinates i >= rank of U*w vanish.
bool in_saturation(const SnfResult& snf, std::span<const Residue> w);

struct CohomologySummary {
  std::size_t h0_rank = 0;
  std::vector<Vector> h0_basis;
  std::size_t h1_free_rank = 0;
  /// Uncensored exponents >= 1, then Censored(m) entries.
  std::vector<Valuation> h1_torsion;
  std::vector<Vector> h1_free_basis;
  bool precision_limited = false;
};

CohomologySummary compute_cohomology(const DvrMatrix& delta);
CohomologySummary compute_cohomology(const SnfResult& snf);

}  // namespace arithbar
