#pragma once

// Truncated discrete valuation rings R/pi^m.
//
// Two families are supported: the p-adic integers Z_p truncated to Z/p^m, and
// the power series ring F_p[[t]] truncated to F_p[t]/t^m. Both are stored as a
// single canonical representative in [0, p^m): for Z/p^m it is the least
// nonnegative residue, for F_p[t]/t^m it is the base-p encoding
// sum c_i p^i of the coefficient vector (c_0, ..., c_{m-1}). In both cases the
// valuation is the number of trailing zero base-p digits.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace arithbar {

using Residue = std::uint64_t;

enum class RingKind { PAdic, PowerSeries };

/// Largest modulus p^m accepted by Ring; products are formed in 128 bits.
inline constexpr Residue kMaxModulus = Residue{1} << 62;

class Ring {
 public:
  /// Z/p^m. Throws InvalidRing if p is not prime, m < 1 or p^m > kMaxModulus.
  static Ring p_adic(std::uint64_t p, int precision);
  /// F_p[t]/t^m with the same constraints.
  static Ring power_series(std::uint64_t p, int precision);

  RingKind kind() const noexcept { return kind_; }
  std::uint64_t prime() const noexcept { return p_; }
  int precision() const noexcept { return precision_; }
  Residue modulus() const noexcept { return modulus_; }
  /// Residue field size q (= p for both supported families).
  std::uint64_t residue_field_size() const noexcept { return p_; }

  /// Same family at a different precision k >= 1.
  Ring with_precision(int k) const;

  bool operator==(const Ring& other) const noexcept = default;

  // Raw arithmetic on canonical representatives. Inputs must already be reduced.
  Residue add(Residue a, Residue b) const noexcept;
  Residue sub(Residue a, Residue b) const noexcept;
  Residue neg(Residue a) const noexcept;
  Residue mul(Residue a, Residue b) const noexcept;

  /// pi^a, or 0 when a >= m.
  Residue pi_power(int a) const noexcept;
  /// Number of trailing zero digits; m for the zero element.
  int valuation(Residue a) const noexcept;
  bool is_unit(Residue a) const noexcept { return a % p_ != 0; }
  /// i-th base-p digit of the representative.
  Residue digit(Residue a, int i) const noexcept;

  /// Inverse of a unit. Extended Euclid against p^m for Z/p^m, Newton
  /// iteration for power series. Throws NotAUnit.
  Residue inverse(Residue a) const;
  /// Inverse of a unit by Newton/Hensel lifting x <- x(1 + (1 - a x)).
  Residue inverse_newton(Residue a) const;

  /// Exact division of a by pi^k when valuation(a) >= k; the result is the
  /// representative shifted down by k digits (determined mod pi^(m-k)).
  Residue shift_down(Residue a, int k) const noexcept;

  /// Image of an integer under the ring homomorphism Z -> R/pi^m.
  Residue embed_integer(std::int64_t n) const noexcept;
  /// Integer read as a representative: n mod p^m for Z/p^m, the base-p digit
  /// encoding of |n| (negated for n < 0) for power series.
  Residue encode(std::int64_t n) const noexcept;
  /// Reduce an arbitrary-size decimal integer literal (optional leading '-').
  /// Throws ParseError on malformed input.
  Residue encode_decimal(const std::string& literal) const;

  std::string name() const;

 private:
  Ring(RingKind kind, std::uint64_t p, int precision);

  RingKind kind_;
  std::uint64_t p_;
  int precision_;
  Residue modulus_;
};

std::ostream& operator<<(std::ostream& os, const Ring& ring);

bool is_prime(std::uint64_t n) noexcept;

/// A valuation at working precision m: either an exact value < m or
/// Censored(m), meaning "at least m".
class Valuation {
 public:
  static constexpr Valuation exact(int v) noexcept { return Valuation(v, false); }
  static constexpr Valuation censored(int precision) noexcept { return Valuation(precision, true); }

  constexpr bool is_censored() const noexcept { return censored_; }
  /// Exact value, or the precision bound when censored.
  constexpr int value() const noexcept { return value_; }

  friend constexpr auto operator<=>(const Valuation&, const Valuation&) = default;

 private:
  constexpr Valuation(int v, bool censored) noexcept : value_(v), censored_(censored) {}

  int value_;
  bool censored_;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);
std::string to_string(const Valuation& v);

/// An element of R/pi^m. Trivially copyable; carries its ring by value.
class DvrElement {
 public:
  DvrElement(const Ring& ring, Residue representative);

  static DvrElement zero(const Ring& ring) { return DvrElement(ring, 0); }
  static DvrElement one(const Ring& ring) { return DvrElement(ring, 1 % ring.modulus()); }
  static DvrElement from_integer(const Ring& ring, std::int64_t n);
  static DvrElement uniformizer_power(const Ring& ring, int a);

  const Ring& ring() const noexcept { return ring_; }
  Residue residue() const noexcept { return value_; }

  bool is_zero() const noexcept { return value_ == 0; }
  bool is_unit() const noexcept { return ring_.is_unit(value_); }

  /// Same representative read in a ring of the same family with precision >= m.
  DvrElement lift_to(const Ring& larger) const;
  /// Reduction to precision k <= m.
  DvrElement reduce_to(int k) const;

  DvrElement operator-() const;
  DvrElement& operator+=(const DvrElement& o);
  DvrElement& operator-=(const DvrElement& o);
  DvrElement& operator*=(const DvrElement& o);
  friend DvrElement operator+(DvrElement a, const DvrElement& b) { return a += b; }
  friend DvrElement operator-(DvrElement a, const DvrElement& b) { return a -= b; }
  friend DvrElement operator*(DvrElement a, const DvrElement& b) { return a *= b; }
  bool operator==(const DvrElement& o) const noexcept = default;

 private:
  Ring ring_;
  Residue value_;
};

std::ostream& operator<<(std::ostream& os, const DvrElement& x);

struct UnitDecomposition {
  int exponent;
  DvrElement unit;

  DvrElement reassemble() const;
};

/// Largest k < m with pi^k | x, or Censored(m) when x == 0.
Valuation valuation(const DvrElement& x);
/// x = pi^n u. Throws ZeroElement for x == 0.
UnitDecomposition unit_decompose(const DvrElement& x);
/// Throws NotAUnit when valuation(u) > 0.
DvrElement invert_unit(const DvrElement& u);

struct RationalLift {
  std::int64_t kappa;
  DvrElement unit;
};

/// numerator/denominator = p^kappa * unit with unit a unit of R/pi^m; kappa may
/// be negative. Throws ZeroNumerator for a zero numerator and ValidationError
/// for a zero denominator.
RationalLift lift_rational(std::int64_t numerator, std::int64_t denominator, const Ring& ring);

}  // namespace arithbar
