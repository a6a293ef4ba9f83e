#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace arithbar::testing {

DvrElement laplace_determinant(const DvrMatrix& m) {
  const Ring& ring = m.ring();
  const std::size_t n = m.rows();
  if (n == 0) return DvrElement::one(ring);
  if (n == 1) return m.at(0, 0);
  DvrElement total = DvrElement::zero(ring);
  for (std::size_t j = 0; j < n; ++j) {
    if (m.raw(0, j) == 0) continue;
    DvrMatrix sub(ring, n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) sub.set_raw(i - 1, cc++, m.raw(i, c));
    const DvrElement term = m.at(0, j) * laplace_determinant(sub);
    total = j % 2 == 0 ? total + term : total - term;
  }
  return total;
}

namespace {

bool advance(std::vector<std::size_t>& c, std::size_t n) {
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

// Odometer over (R/pi^k)^n, digits in [0, bound).
bool advance_vector(Vector& x, Residue bound) {
  for (Residue& d : x) {
    if (++d < bound) return true;
    d = 0;
  }
  return false;
}

}  // namespace

Valuation minor_valuation(const DvrMatrix& m, std::size_t r) {
  const Ring& ring = m.ring();
  int best = ring.precision();
  std::vector<std::size_t> rows(r);
  for (std::size_t i = 0; i < r; ++i) rows[i] = i;
  do {
    std::vector<std::size_t> cols(r);
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    do {
      DvrMatrix sub(ring, r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub.set_raw(i, j, m.raw(rows[i], cols[j]));
      best = std::min(best, ring.valuation(laplace_determinant(sub).residue()));
    } while (advance(cols, m.cols()));
  } while (advance(rows, m.rows()));
  return best >= ring.precision() ? Valuation::censored(ring.precision()) : Valuation::exact(best);
}

std::uint64_t integer_power(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::uint64_t kernel_search_space(const DvrMatrix& delta, int k, std::uint64_t limit) {
  const std::uint64_t q = integer_power(delta.ring().prime(), static_cast<unsigned>(k));
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < delta.cols(); ++i) {
    if (total > limit / q) return std::numeric_limits<std::uint64_t>::max();
    total *= q;
  }
  return total;
}

std::vector<Vector> enumerate_kernel(const DvrMatrix& delta, int k) {
  const DvrMatrix reduced = reduce_mod(delta, k);
  const Residue bound = reduced.ring().modulus();
  std::vector<Vector> out;
  Vector x(delta.cols(), 0);
  do {
    const Vector y = reduced.apply(x);
    if (std::all_of(y.begin(), y.end(), [](Residue v) { return v == 0; })) out.push_back(x);
  } while (advance_vector(x, bound));
  return out;
}

std::uint64_t brute_force_cokernel_order(const DvrMatrix& m, int e) {
  const DvrMatrix reduced = reduce_mod(m, e);
  const Residue bound = reduced.ring().modulus();
  std::set<Vector> image;
  Vector x(m.cols(), 0);
  do {
    image.insert(reduced.apply(x));
  } while (advance_vector(x, bound));
  return integer_power(bound, static_cast<unsigned>(m.rows())) / image.size();
}

DvrElement random_unit(std::mt19937_64& rng, const Ring& ring) {
  for (;;) {
    const Residue r = rng() % ring.modulus();
    if (ring.is_unit(r)) return DvrElement(ring, r);
  }
}

DvrMatrix random_unimodular(std::mt19937_64& rng, const Ring& ring, std::size_t n) {
  DvrMatrix u = DvrMatrix::identity(ring, n);
  if (n == 0) return u;
  for (std::size_t i = 0; i < n; ++i) u.scale_row(i, random_unit(rng, ring).residue());
  for (std::size_t step = 0; step < 3 * n; ++step) {
    const std::size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    if (rng() % 4 == 0)
      u.swap_rows(a, b);
    else
      u.add_row_multiple(a, b, rng() % ring.modulus());
  }
  return u;
}

DvrMatrix planted_matrix(std::mt19937_64& rng, const Ring& ring, std::size_t rows, std::size_t cols,
                         const std::vector<int>& exponents) {
  DvrMatrix d(ring, rows, cols);
  for (std::size_t i = 0; i < exponents.size() && i < std::min(rows, cols); ++i)
    d.set_raw(i, i, ring.mul(ring.pi_power(exponents[i]), random_unit(rng, ring).residue()));
  return random_unimodular(rng, ring, rows) * d * random_unimodular(rng, ring, cols);
}

DvrMatrix random_matrix(std::mt19937_64& rng, const Ring& ring, std::size_t rows, std::size_t cols,
                        MatrixStyle style) {
  const int m = ring.precision();
  if (style == MatrixStyle::Planted) {
    std::vector<int> exps;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) {
      // Mostly small exponents, some zero diagonal entries.
      const auto roll = rng() % 10;
      exps.push_back(roll < 7 ? static_cast<int>(rng() % 5) : roll < 9 ? static_cast<int>(rng() % m) : m);
    }
    return planted_matrix(rng, ring, rows, cols, exps);
  }
  DvrMatrix out(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (style == MatrixStyle::Sparse && rng() % 10 < 7) continue;
      // Bias towards non-units so that torsion actually shows up.
      const int shift = static_cast<int>(rng() % 4);
      out.set_raw(i, j, ring.mul(rng() % ring.modulus(), ring.pi_power(shift)));
    }
  return out;
}

std::vector<CorpusEntry> random_corpus(std::uint64_t seed, std::size_t count, int precision, std::size_t max_dim) {
  std::mt19937_64 rng(seed);
  const std::uint64_t primes[] = {2, 3, 5};
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Ring ring = Ring::p_adic(primes[i % 3], precision);
    const auto style = static_cast<MatrixStyle>((i / 3) % 3);
    const std::size_t rows = 1 + rng() % max_dim, cols = 1 + rng() % max_dim;
    out.push_back({random_matrix(rng, ring, rows, cols, style), style});
  }
  return out;
}

}  // namespace arithbar::testing
