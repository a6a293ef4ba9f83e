#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arithbar/matrix.hpp"
#include "arithbar/snf.hpp"

namespace arithbar {

/// Generators of ker(delta mod pi^k) over R/pi^k, as representatives in
/// [0, p^k). Computed by elimination over R/pi^k alone. k in [1, m].
std::vector<Vector> kernel_generators(const DvrMatrix& delta, int k);

/// Rank over F of the digit connecting map H^0(F/pi^k) -> H^1(F/pi):
/// lift each kernel generator mod pi^k by its representative, apply delta mod
/// pi^(k+1), divide by pi^k, reduce mod pi and count the new dimensions modulo
/// im(delta mod pi). d_0 = 0. Throws PrecisionExceeded when k + 1 > m.
std::size_t digit_rank(const DvrMatrix& delta, int k);

/// Same recipe with a caller-supplied spanning set of ker(delta mod pi^k),
/// entries in [0, p^k).
std::size_t digit_rank_with_kernel(const DvrMatrix& delta, int k, std::span<const Vector> kernel_span);

struct DigitProfile {
  /// d[k] for k = 0..m-1.
  std::vector<std::size_t> d;
  /// Rank of delta mod pi (exponents equal to zero).
  std::size_t residue_rank = 0;
  /// min(rows, cols) - residue_rank - d[m-1]: diagonal positions not resolved below m.
  std::size_t censored = 0;
  /// Last two entries agree and nothing is censored.
  bool stabilized = false;
};

DigitProfile digit_profile(const DvrMatrix& delta);

struct DigitExponents {
  /// l repeated d_l - d_(l-1) times, nondecreasing.
  std::vector<int> exponents;
  bool precision_limited = false;
};

DigitExponents exponents_from_digits(const DigitProfile& profile);

/// dim ker(delta mod pi) - dim(ker(delta mod pi^m) reduced mod pi): the number
/// of classes mod pi that fail to lift to full precision, i.e. the number of
/// torsion summands with 1 <= a_j <= m - 1.
std::size_t bockstein_rank(const DvrMatrix& delta);

struct LiftingResult {
  /// alpha extends to a kernel vector mod pi^m.
  bool liftable = false;
  /// Largest k <= m with alpha in the reduction of ker(delta mod pi^k);
  /// Censored(m) when it lifts all the way.
  Valuation max_level = Valuation::exact(1);
  /// The first obstruction (to lifting mod pi^2) vanishes.
  bool bockstein_vanishes = false;
};

/// alpha: a kernel vector of delta mod pi, entries in [0, p). Throws
/// NotACocycle when delta * alpha != 0 mod pi.
LiftingResult lifting_check(std::span<const Residue> alpha, const DvrMatrix& delta);

struct Barcode {
  /// Bar lengths in [1, m-1], nondecreasing.
  std::vector<int> finite_bars;
  /// Free rank of H^1 at working precision.
  std::size_t infinite_bars = 0;
  /// Infinite bars that are only known to have length >= m (a subset of
  /// infinite_bars).
  std::size_t censored_bars = 0;

  bool operator==(const Barcode&) const = default;
};

Barcode barcode_from_snf(const SnfResult& snf, std::size_t target_dim);

struct StabilityResult {
  /// Minimum valuation of delta - delta'; Censored(m) when equal.
  Valuation congruence_level = Valuation::exact(0);
  /// Finite bars shorter than the congruence level agree (all bars when
  /// the matrices are equal).
  bool truncated_equal = false;
  Barcode lhs;
  Barcode rhs;
};

/// Throws ShapeMismatch or RingMismatch.
StabilityResult stability_check(const DvrMatrix& delta, const DvrMatrix& other);

}  // namespace arithbar
