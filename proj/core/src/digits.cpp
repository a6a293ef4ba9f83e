#include "arithbar/digits.hpp"

#include <algorithm>

#include "arithbar/error.hpp"

namespace arithbar {

namespace {

// Entries mod pi, as residue-field coordinates in [0, p).
Vector reduce_to_field(std::span<const Residue> v, std::uint64_t p) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] % p;
  return out;
}

std::vector<Vector> field_columns(const DvrMatrix& m) {
  std::vector<Vector> out;
  const std::uint64_t p = m.ring().prime();
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(reduce_to_field(m.col(j), p));
  return out;
}

}  // namespace

std::vector<Vector> kernel_generators(const DvrMatrix& delta, int k) {
  const DvrMatrix reduced = reduce_mod(delta, k);
  const Ring& ring = reduced.ring();
  const SnfResult snf = smith_normal_form(reduced);
  std::vector<Vector> out;
  for (std::size_t j = 0; j < reduced.cols(); ++j) {
    Vector g = snf.V.col(j);
    if (j < snf.rank) {
      const int a = snf.exponents[j].value();
      if (a == 0) continue;
      const Residue scale = ring.pi_power(k - a);
      for (Residue& x : g) x = ring.mul(x, scale);
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::size_t digit_rank_with_kernel(const DvrMatrix& delta, int k, std::span<const Vector> kernel_span) {
  if (k < 0) throw Error(ErrorCode::ValidationError, "digit index must be nonnegative");
  if (k + 1 > delta.ring().precision())
    throw Error(ErrorCode::PrecisionExceeded,
                "digit " + std::to_string(k) + " needs precision " + std::to_string(k + 1));
  if (k == 0) return 0;
  const std::uint64_t p = delta.ring().prime();
  const DvrMatrix lifted = reduce_mod(delta, k + 1);
  const Ring& ring = lifted.ring();

  std::vector<Vector> span = field_columns(lifted);
  const std::size_t base = residue_rank(span, p);
  for (const Vector& x : kernel_span) {
    if (x.size() != lifted.cols()) throw Error(ErrorCode::ShapeMismatch, "kernel vector has the wrong length");
    Vector image = lifted.apply(x);
    for (Residue& y : image) {
      if (ring.valuation(y) < k)
        throw Error(ErrorCode::ValidationError, "vector is not in the kernel mod pi^" + std::to_string(k));
      y = ring.shift_down(y, k) % p;
    }
    span.push_back(std::move(image));
  }
  return residue_rank(std::move(span), p) - base;
}

std::size_t digit_rank(const DvrMatrix& delta, int k) {
  if (k + 1 > delta.ring().precision())
    throw Error(ErrorCode::PrecisionExceeded,
                "digit " + std::to_string(k) + " needs precision " + std::to_string(k + 1));
  if (k <= 0) return digit_rank_with_kernel(delta, k, {});
  const auto kernel = kernel_generators(delta, k);
  return digit_rank_with_kernel(delta, k, kernel);
}

DigitProfile digit_profile(const DvrMatrix& delta) {
  const int m = delta.ring().precision();
  DigitProfile out;
  for (int k = 0; k < m; ++k) out.d.push_back(digit_rank(delta, k));
  out.residue_rank = residue_rank(delta);
  const std::size_t diag = std::min(delta.rows(), delta.cols());
  out.censored = diag - out.residue_rank - out.d.back();
  out.stabilized = out.censored == 0 && (m < 2 || out.d[m - 1] == out.d[m - 2]);
  return out;
}

DigitExponents exponents_from_digits(const DigitProfile& profile) {
  DigitExponents out;
  for (std::size_t l = 1; l < profile.d.size(); ++l)
    for (std::size_t c = profile.d[l - 1]; c < profile.d[l]; ++c) out.exponents.push_back(static_cast<int>(l));
  out.precision_limited = !profile.stabilized;
  return out;
}

std::size_t bockstein_rank(const DvrMatrix& delta) {
  const std::uint64_t p = delta.ring().prime();
  const std::size_t kernel_mod_pi = delta.cols() - residue_rank(delta);
  std::vector<Vector> reduced;
  for (const Vector& g : kernel_generators(delta, delta.ring().precision())) reduced.push_back(reduce_to_field(g, p));
  return kernel_mod_pi - residue_rank(std::move(reduced), p);
}

LiftingResult lifting_check(std::span<const Residue> alpha, const DvrMatrix& delta) {
  const std::uint64_t p = delta.ring().prime();
  const int m = delta.ring().precision();
  if (alpha.size() != delta.cols()) throw Error(ErrorCode::ShapeMismatch, "alpha has the wrong length");
  const Vector a = reduce_to_field(alpha, p);
  for (Residue y : reduce_mod(delta, 1).apply(a))
    if (y != 0) throw Error(ErrorCode::NotACocycle, "alpha is not in the kernel mod pi");

  int level = 1;
  for (int k = 2; k <= m; ++k) {
    std::vector<Vector> span;
    for (const Vector& g : kernel_generators(delta, k)) span.push_back(reduce_to_field(g, p));
    const std::size_t before = residue_rank(span, p);
    span.push_back(a);
    if (residue_rank(std::move(span), p) != before) break;
    level = k;
  }
  LiftingResult out;
  out.liftable = level == m;
  out.max_level = out.liftable ? Valuation::censored(m) : Valuation::exact(level);
  out.bockstein_vanishes = level >= 2 || m == 1;
  return out;
}

Barcode barcode_from_snf(const SnfResult& snf, std::size_t target_dim) {
  Barcode out;
  for (const Valuation& a : snf.exponents) {
    if (a.is_censored())
      ++out.censored_bars;
    else if (a.value() >= 1)
      out.finite_bars.push_back(a.value());
  }
  std::sort(out.finite_bars.begin(), out.finite_bars.end());
  out.infinite_bars = target_dim - snf.rank;
  return out;
}

StabilityResult stability_check(const DvrMatrix& delta, const DvrMatrix& other) {
  if (!(delta.ring() == other.ring())) throw Error(ErrorCode::RingMismatch, "matrices live over different rings");
  if (delta.rows() != other.rows() || delta.cols() != other.cols())
    throw Error(ErrorCode::ShapeMismatch, "matrices have different shapes");
  StabilityResult out;
  out.congruence_level = (delta - other).min_valuation();
  out.lhs = barcode_from_snf(smith_normal_form(delta), delta.rows());
  out.rhs = barcode_from_snf(smith_normal_form(other), other.rows());
  if (out.congruence_level.is_censored()) {
    out.truncated_equal = out.lhs == out.rhs;
  } else {
    const int level = out.congruence_level.value();
    auto below = [level](const std::vector<int>& bars) {
      std::vector<int> kept;
      for (int b : bars)
        if (b < level) kept.push_back(b);
      return kept;
    };
    out.truncated_equal = below(out.lhs.finite_bars) == below(out.rhs.finite_bars);
  }
  return out;
}

}  // namespace arithbar
