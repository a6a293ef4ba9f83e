#include "arithbar/dvr.hpp"

#include <ostream>
#include <sstream>
#include <vector>

#include "arithbar/error.hpp"

namespace arithbar {

namespace {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

std::vector<Residue> to_digits(Residue a, std::uint64_t p, int m) {
  std::vector<Residue> d(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    d[static_cast<std::size_t>(i)] = a % p;
    a /= p;
  }
  return d;
}

Residue from_digits(const std::vector<Residue>& d, std::uint64_t p) {
  Residue a = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
  return a;
}

// Inverse of a modulo n for gcd(a, n) == 1, by extended Euclid.
Residue euclid_inverse(Residue a, Residue n) {
  i128 r0 = static_cast<i128>(n), r1 = static_cast<i128>(a);
  i128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    i128 q = r0 / r1;
    i128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw Error(ErrorCode::NotAUnit, "element is not invertible");
  i128 inv = s0 % static_cast<i128>(n);
  if (inv < 0) inv += static_cast<i128>(n);
  return static_cast<Residue>(inv);
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

Ring::Ring(RingKind kind, std::uint64_t p, int precision)
    : kind_(kind), p_(p), precision_(precision), modulus_(1) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidRing, "p = " + std::to_string(p) + " is not prime");
  if (precision < 1) throw Error(ErrorCode::InvalidRing, "precision must be at least 1");
  for (int i = 0; i < precision; ++i) {
    if (modulus_ > kMaxModulus / p)
      throw Error(ErrorCode::InvalidRing, "p^m exceeds the supported modulus 2^62");
    modulus_ *= p;
  }
}

Ring Ring::p_adic(std::uint64_t p, int precision) { return Ring(RingKind::PAdic, p, precision); }

Ring Ring::power_series(std::uint64_t p, int precision) {
  return Ring(RingKind::PowerSeries, p, precision);
}

Ring Ring::with_precision(int k) const { return Ring(kind_, p_, k); }

Residue Ring::add(Residue a, Residue b) const noexcept {
  if (kind_ == RingKind::PAdic) {
    Residue s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  Residue out = 0, place = 1;
  for (int i = 0; i < precision_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

Residue Ring::neg(Residue a) const noexcept {
  if (kind_ == RingKind::PAdic) return a == 0 ? 0 : modulus_ - a;
  Residue out = 0, place = 1;
  for (int i = 0; i < precision_; ++i) {
    Residue d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

Residue Ring::sub(Residue a, Residue b) const noexcept {
  if (kind_ == RingKind::PAdic) return a >= b ? a - b : a + (modulus_ - b);
  return add(a, neg(b));
}

Residue Ring::mul(Residue a, Residue b) const noexcept {
  if (kind_ == RingKind::PAdic)
    return static_cast<Residue>((static_cast<u128>(a) * b) % modulus_);
  const auto da = to_digits(a, p_, precision_);
  const auto db = to_digits(b, p_, precision_);
  std::vector<Residue> dc(da.size(), 0);
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (da[i] == 0) continue;
    for (std::size_t j = 0; i + j < dc.size(); ++j)
      dc[i + j] = static_cast<Residue>((dc[i + j] + static_cast<u128>(da[i]) * db[j]) % p_);
  }
  return from_digits(dc, p_);
}

Residue Ring::pi_power(int a) const noexcept {
  if (a >= precision_) return 0;
  Residue x = 1;
  for (int i = 0; i < a; ++i) x *= p_;
  return x;
}

int Ring::valuation(Residue a) const noexcept {
  if (a == 0) return precision_;
  int v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

Residue Ring::digit(Residue a, int i) const noexcept {
  for (int k = 0; k < i; ++k) a /= p_;
  return a % p_;
}

Residue Ring::inverse(Residue a) const {
  if (!is_unit(a)) throw Error(ErrorCode::NotAUnit, "element has positive valuation");
  if (kind_ == RingKind::PAdic) return euclid_inverse(a, modulus_);
  return inverse_newton(a);
}

Residue Ring::inverse_newton(Residue a) const {
  if (!is_unit(a)) throw Error(ErrorCode::NotAUnit, "element has positive valuation");
  // Seed with the inverse of the constant digit in F_p, then double the
  // number of correct digits per step.
  Residue x = euclid_inverse(a % p_, p_);
  for (;;) {
    const Residue err = sub(1 % modulus_, mul(a, x));
    if (err == 0) return x;
    x = mul(x, add(1 % modulus_, err));
  }
}

Residue Ring::shift_down(Residue a, int k) const noexcept {
  for (int i = 0; i < k; ++i) a /= p_;
  return a;
}

Residue Ring::embed_integer(std::int64_t n) const noexcept {
  if (kind_ == RingKind::PAdic) return encode(n);
  // Z -> F_p[[t]] factors through F_p.
  i128 r = static_cast<i128>(n) % static_cast<i128>(p_);
  if (r < 0) r += p_;
  return static_cast<Residue>(r) % modulus_;
}

Residue Ring::encode(std::int64_t n) const noexcept {
  if (kind_ == RingKind::PAdic) {
    i128 r = static_cast<i128>(n) % static_cast<i128>(modulus_);
    if (r < 0) r += modulus_;
    return static_cast<Residue>(r);
  }
  const u128 mag = n < 0 ? static_cast<u128>(-(static_cast<i128>(n))) : static_cast<u128>(n);
  const Residue enc = static_cast<Residue>(mag % modulus_);
  return n < 0 ? neg(enc) : enc;
}

Residue Ring::encode_decimal(const std::string& literal) const {
  std::size_t i = 0;
  bool negative = false;
  if (i < literal.size() && (literal[i] == '-' || literal[i] == '+')) {
    negative = literal[i] == '-';
    ++i;
  }
  if (i == literal.size()) throw Error(ErrorCode::ParseError, "empty integer literal '" + literal + "'");
  // For power series this is truncation of the base-p digit encoding.
  Residue r = 0;
  for (; i < literal.size(); ++i) {
    const char c = literal[i];
    if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "bad integer literal '" + literal + "'");
    r = static_cast<Residue>((static_cast<u128>(r) * 10 + static_cast<unsigned>(c - '0')) % modulus_);
  }
  return negative ? neg(r) : r;
}

std::string Ring::name() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Ring& ring) {
  if (ring.kind() == RingKind::PAdic)
    return os << "Z/" << ring.prime() << "^" << ring.precision();
  return os << "F_" << ring.prime() << "[t]/t^" << ring.precision();
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.is_censored()) return os << ">=" << v.value();
  return os << v.value();
}

std::string to_string(const Valuation& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

DvrElement::DvrElement(const Ring& ring, Residue representative)
    : ring_(ring), value_(representative % ring.modulus()) {}

DvrElement DvrElement::from_integer(const Ring& ring, std::int64_t n) {
  return DvrElement(ring, ring.embed_integer(n));
}

DvrElement DvrElement::uniformizer_power(const Ring& ring, int a) {
  return DvrElement(ring, ring.pi_power(a));
}

DvrElement DvrElement::lift_to(const Ring& larger) const {
  if (larger.kind() != ring_.kind() || larger.prime() != ring_.prime() ||
      larger.precision() < ring_.precision())
    throw Error(ErrorCode::RingMismatch, "cannot lift " + ring_.name() + " to " + larger.name());
  return DvrElement(larger, value_);
}

DvrElement DvrElement::reduce_to(int k) const {
  if (k > ring_.precision())
    throw Error(ErrorCode::PrecisionExceeded, "cannot reduce to a higher precision");
  const Ring target = ring_.with_precision(k);
  return DvrElement(target, value_ % target.modulus());
}

namespace {
void require_same_ring(const Ring& a, const Ring& b) {
  if (!(a == b)) throw Error(ErrorCode::RingMismatch, a.name() + " vs " + b.name());
}
}  // namespace

DvrElement DvrElement::operator-() const { return DvrElement(ring_, ring_.neg(value_)); }

DvrElement& DvrElement::operator+=(const DvrElement& o) {
  require_same_ring(ring_, o.ring_);
  value_ = ring_.add(value_, o.value_);
  return *this;
}

DvrElement& DvrElement::operator-=(const DvrElement& o) {
  require_same_ring(ring_, o.ring_);
  value_ = ring_.sub(value_, o.value_);
  return *this;
}

DvrElement& DvrElement::operator*=(const DvrElement& o) {
  require_same_ring(ring_, o.ring_);
  value_ = ring_.mul(value_, o.value_);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const DvrElement& x) { return os << x.residue(); }

DvrElement UnitDecomposition::reassemble() const {
  return DvrElement::uniformizer_power(unit.ring(), exponent) * unit;
}

Valuation valuation(const DvrElement& x) {
  const Ring& r = x.ring();
  if (x.is_zero()) return Valuation::censored(r.precision());
  return Valuation::exact(r.valuation(x.residue()));
}

UnitDecomposition unit_decompose(const DvrElement& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroElement, "zero has no unit decomposition");
  const Ring& r = x.ring();
  const int n = r.valuation(x.residue());
  // The shifted representative has a nonzero constant digit, so it is a unit;
  // it is determined mod pi^(m-n) and we keep the zero-padded choice.
  return {n, DvrElement(r, r.shift_down(x.residue(), n))};
}

DvrElement invert_unit(const DvrElement& u) {
  return DvrElement(u.ring(), u.ring().inverse(u.residue()));
}

RationalLift lift_rational(std::int64_t numerator, std::int64_t denominator, const Ring& ring) {
  if (denominator == 0) throw Error(ErrorCode::ValidationError, "zero denominator");
  if (numerator == 0) throw Error(ErrorCode::ZeroNumerator, "zero has no unit decomposition");
  const auto p = static_cast<std::int64_t>(ring.prime());
  std::int64_t kappa = 0;
  while (numerator % p == 0) {
    numerator /= p;
    ++kappa;
  }
  while (denominator % p == 0) {
    denominator /= p;
    --kappa;
  }
  const Residue num = ring.encode(numerator);
  const Residue den = ring.encode(denominator);
  return {kappa, DvrElement(ring, ring.mul(num, ring.inverse(den)))};
}

}  // namespace arithbar
