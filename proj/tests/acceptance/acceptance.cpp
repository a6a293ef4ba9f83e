// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arithbar/cohomology.hpp"
#include "arithbar/consensus.hpp"
#include "arithbar/digits.hpp"
#include "arithbar/error.hpp"
#include "arithbar/holonomy.hpp"
#include "arithbar/sheaf.hpp"
#include "arithbar/snf.hpp"
#include "oracles.hpp"

using namespace arithbar;
namespace t = arithbar::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects the first few failure messages of one criterion.
struct Checker {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (messages.size() < 5) messages.push_back(what);
  }
};

std::size_t snf_digit_count(const SnfResult& s, int k) {
  return static_cast<std::size_t>(std::count_if(s.exponents.begin(), s.exponents.end(), [k](const Valuation& a) {
    return !a.is_censored() && a.value() >= 1 && a.value() <= k;
  }));
}

std::string str(const DvrMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

std::vector<int> bars_below(const Barcode& b, int level) {
  std::vector<int> out;
  for (int a : b.finite_bars)
    if (a < level) out.push_back(a);
  return out;
}

// --- 1 ---------------------------------------------------------------------

Checker triangle() {
  Checker c;
  const auto start = Clock::now();
  const Ring r = Ring::p_adic(3, 8);
  // Edges v2 -> v1 (weight 1 - p on the head), v3 -> v2, v1 -> v3.
  Graph g;
  for (const char* v : {"v1", "v2", "v3"}) g.add_vertex(v);
  g.add_edge("e12", 1, 0);
  g.add_edge("e23", 2, 1);
  g.add_edge("e31", 0, 2);
  const DvrElement h = DvrElement::from_integer(r, 1 - 3);
  const NetworkSheaf s = NetworkSheaf::rank_one(g, r, {h, DvrElement::one(r), DvrElement::one(r)});
  const DvrMatrix delta = build_coboundary(s);
  const SnfResult snf = smith_normal_form(delta);
  c.expect(snf.exponents == std::vector<Valuation>{Valuation::exact(0), Valuation::exact(0), Valuation::exact(1)},
           "smith exponents");
  const Barcode b = barcode_from_snf(snf, delta.rows());
  c.expect(b == Barcode{{1}, 0, 0}, "barcode");
  const DigitProfile d = digit_profile(delta);
  c.expect(d.d.size() == 8 && d.d[0] == 0 && std::all_of(d.d.begin() + 1, d.d.end(), [](std::size_t x) { return x == 1; }),
           "digit profile");
  c.expect(bockstein_rank(delta) == 1, "bockstein rank");
  const CycleBasis basis = fundamental_cycle_basis(g);
  const DvrElement hol = cycle_holonomy_rank1(s, basis.cycles.at(0));
  c.expect(hol == h || hol == invert_unit(h), "holonomy is 1 - p up to orientation");
  c.expect(valuation(hol - DvrElement::one(r)) == Valuation::exact(1), "val(h - 1) = 1");
  const double secs = seconds_since(start);
  c.expect(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  return c;
}

// --- 2 ---------------------------------------------------------------------

Checker theta() {
  Checker c;
  // Holonomies 1 + p^2 and 1 + p^3 on two cycles and a constant third one,
  // realized as three vertex-disjoint digons so the bars stay separate.
  const Ring r = Ring::p_adic(3, 8);
  Graph g;
  std::vector<DvrElement> w;
  for (std::int64_t hol : {10, 28, 1}) {
    const std::string tag = std::to_string(hol);
    const std::size_t a = g.add_vertex("a" + tag), b = g.add_vertex("b" + tag);
    g.add_edge("x" + tag, a, b);
    g.add_edge("y" + tag, a, b);
    w.push_back(DvrElement::from_integer(r, hol));
    w.push_back(DvrElement::one(r));
  }
  const NetworkSheaf s = NetworkSheaf::rank_one(g, r, w);
  const DvrMatrix delta = build_coboundary(s);
  const Barcode b = barcode_from_snf(smith_normal_form(delta), delta.rows());
  c.expect(b.finite_bars == std::vector<int>{2, 3}, "finite bars {2, 3}");
  c.expect(b.infinite_bars == 1, "one infinite bar");
  const DigitProfile d = digit_profile(delta);
  c.expect(std::vector<std::size_t>(d.d.begin() + 1, d.d.begin() + 5) == std::vector<std::size_t>{0, 1, 2, 2},
           "digit ranks d1..d4");
  const BlockwiseResult block = blockwise_barcode(s, fundamental_cycle_basis(g));
  c.expect(block.barcode && *block.barcode == b, "holonomy route agrees");
  return c;
}

// --- 3 ---------------------------------------------------------------------

Checker two_term() {
  Checker c;
  const Ring r = Ring::p_adic(2, 10);
  for (int a = 0; a <= 5; ++a)
    for (int k = 0; k <= 7; ++k) {
      DvrMatrix m(r, 1, 1);
      m.set_raw(0, 0, r.pi_power(a));
      const std::size_t expected = (1 <= a && a <= k) ? 1 : 0;
      c.expect(digit_rank(m, k) == expected, "a=" + std::to_string(a) + " k=" + std::to_string(k));
    }
  return c;
}

// --- 4 ---------------------------------------------------------------------

const std::vector<t::CorpusEntry>& corpus() {
  static const std::vector<t::CorpusEntry> c = t::random_corpus(20240, 540, 12, 8);
  return c;
}

Checker dictionary() {
  Checker c;
  const auto start = Clock::now();
  std::size_t oracle_runs = 0;
  for (const auto& e : corpus()) {
    const SnfResult s = smith_normal_form(e.matrix);
    for (int k = 0; k < 12; ++k) {
      const std::size_t expected = snf_digit_count(s, k);
      c.expect(digit_rank(e.matrix, k) == expected, "elimination route, k=" + std::to_string(k) + " " + str(e.matrix));
      if (k >= 1 && t::kernel_search_space(e.matrix, k) <= (1u << 16)) {
        const auto kernel = t::enumerate_kernel(e.matrix, k);
        c.expect(digit_rank_with_kernel(e.matrix, k, kernel) == expected,
                 "enumeration route, k=" + std::to_string(k) + " " + str(e.matrix));
        ++oracle_runs;
      }
    }
  }
  c.expect(oracle_runs >= 100, "enumeration oracle ran only " + std::to_string(oracle_runs) + " times");
  const double secs = seconds_since(start);
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  return c;
}

// --- 5 ---------------------------------------------------------------------

Checker projector_laws() {
  Checker c;
  for (const auto& e : corpus()) {
    const DvrMatrix& delta = e.matrix;
    const SnfResult snf = smith_normal_form(delta);
    const ProjectorTriple p = projectors(snf);
    const std::string tag = " " + str(delta);
    c.expect(p.kernel * p.kernel == p.kernel, "kernel projector idempotent" + tag);
    c.expect(p.saturation * p.saturation == p.saturation, "saturation projector idempotent" + tag);
    c.expect(p.free * p.free == p.free, "free projector idempotent" + tag);
    c.expect(p.saturation * delta == delta, "P_sat delta = delta" + tag);
    c.expect((delta * p.kernel).is_zero(), "delta P_ker = 0" + tag);
    for (int k = 1; k <= delta.ring().precision(); ++k)
      c.expect(reduction_commutes_check(p, k), "reduction mod pi^" + std::to_string(k) + tag);
    std::vector<Valuation> torsion;
    for (const Valuation& a : cokernel_structure(snf, delta.rows()).torsion_exponents)
      if (!a.is_censored()) torsion.push_back(a);
    c.expect(saturation_quotient(delta, snf) == torsion, "saturation quotient" + tag);
  }
  return c;
}

// --- 6 ---------------------------------------------------------------------

Checker stability() {
  Checker c;
  std::mt19937_64 rng(606);
  const auto base = t::random_corpus(6060, 200, 10, 5);
  for (const auto& e : base) {
    const Ring& r = e.matrix.ring();
    const int level = 1 + static_cast<int>(rng() % (r.precision() - 1));
    DvrMatrix other = e.matrix;
    for (std::size_t i = 0; i < other.rows(); ++i)
      for (std::size_t j = 0; j < other.cols(); ++j)
        other.set_raw(i, j, r.add(other.raw(i, j), r.mul(rng() % r.modulus(), r.pi_power(level))));
    const Barcode lhs = barcode_from_snf(smith_normal_form(e.matrix), e.matrix.rows());
    const Barcode rhs = barcode_from_snf(smith_normal_form(other), other.rows());
    const std::string tag = " level " + std::to_string(level) + " " + str(e.matrix);
    c.expect(bars_below(lhs, level) == bars_below(rhs, level), "bars below the level" + tag);
    const StabilityResult s = stability_check(e.matrix, other);
    c.expect(s.truncated_equal && s.congruence_level >= Valuation::exact(level), "stability_check" + tag);
    const auto sa = determinantal_valuations(e.matrix).s, sb = determinantal_valuations(other).s;
    for (std::size_t i = 0; i < sa.size(); ++i)
      c.expect(std::min(sa[i].value(), level) == std::min(sb[i].value(), level),
               "determinantal profile at r=" + std::to_string(i + 1) + tag);
  }
  // [p^3] against [0]: the bound is sharp.
  const Ring r = Ring::p_adic(3, 8);
  const DvrMatrix cubed = DvrMatrix::from_rows(r, {{27}}), zero = DvrMatrix::from_rows(r, {{0}});
  const StabilityResult edge = stability_check(cubed, zero);
  c.expect(edge.congruence_level == Valuation::exact(3) && edge.truncated_equal, "[p^3] vs [0] below level 3");
  c.expect(edge.lhs.finite_bars == std::vector<int>{3} && edge.rhs.censored_bars == 1, "[p^3] vs [0] differ at 3");
  const auto s1 = determinantal_valuations(cubed).s[0], s2 = determinantal_valuations(zero).s[0];
  c.expect(std::min(s1.value(), 3) == std::min(s2.value(), 3), "[p^3] vs [0] truncated profile");
  c.expect(std::min(s1.value(), 4) != std::min(s2.value(), 4), "[p^3] vs [0] differ above the level");
  return c;
}

// --- 7 ---------------------------------------------------------------------

// Rank-1 sheaf on C_n with random unit weights, last weight adjusted so the
// fundamental cycle has holonomy `target`.
NetworkSheaf plant_cycle(std::mt19937_64& rng, const Ring& r, std::size_t n, const DvrElement& target) {
  std::vector<DvrElement> w;
  for (std::size_t e = 0; e < n; ++e) w.push_back(t::random_unit(rng, r));
  const Graph g = Graph::cycle(n);
  const Cycle cyc = fundamental_cycle_basis(g).cycles.at(0);
  const DvrElement h = cycle_holonomy_rank1(NetworkSheaf::rank_one(g, r, w), cyc);
  std::vector<DvrElement> fwd = w, bwd = w;
  fwd.back() = w.back() * target * invert_unit(h);
  bwd.back() = w.back() * h * invert_unit(target);
  NetworkSheaf s = NetworkSheaf::rank_one(g, r, fwd);
  if (cycle_holonomy_rank1(s, cyc) == target) return s;
  return NetworkSheaf::rank_one(g, r, bwd);
}

Checker cycle_barcode() {
  Checker c;
  std::mt19937_64 rng(707);
  const std::uint64_t primes[] = {2, 3, 5};
  std::size_t cases[3] = {0, 0, 0};
  for (int trial = 0; trial < 200; ++trial) {
    const int kind = trial % 3;
    // Every unit h has val(h - 1) >= 1 over Z/2^m, so the empty case needs p odd.
    const std::uint64_t p = kind == 0 ? primes[1 + rng() % 2] : primes[rng() % 3];
    const Ring r = Ring::p_adic(p, 10);
    const std::size_t n = 1 + rng() % 8;
    DvrElement target = DvrElement::one(r);
    int planted = 0;
    if (kind == 0) {
      do target = t::random_unit(rng, r);
      while (!(target - DvrElement::one(r)).is_unit());
    } else if (kind == 1) {
      planted = 1 + static_cast<int>(rng() % 9);
      target = DvrElement::one(r) + DvrElement::uniformizer_power(r, planted) * t::random_unit(rng, r);
    }
    const NetworkSheaf s = plant_cycle(rng, r, n, target);
    const DvrMatrix delta = build_coboundary(s);
    const DvrElement h = cycle_holonomy_rank1(s, fundamental_cycle_basis(s.graph()).cycles.at(0));
    const std::string tag = " n=" + std::to_string(n) + " p=" + std::to_string(p) + " trial " + std::to_string(trial);
    c.expect(h == target, "planted holonomy" + tag);
    const Valuation vh = valuation(h - DvrElement::one(r));
    c.expect(valuation(determinant(delta)) == vh, "val(det delta) = val(h - 1)" + tag);
    const CycleBar bar = bar_from_holonomy(h);
    const Barcode full = barcode_from_snf(smith_normal_form(delta), delta.rows());
    switch (bar.kind) {
      case CycleBarKind::Empty:
        c.expect(kind == 0 && full == Barcode{{}, 0, 0}, "empty case" + tag);
        break;
      case CycleBarKind::Finite:
        c.expect(kind == 1 && bar.length == planted && full == Barcode{{planted}, 0, 0}, "finite case" + tag);
        break;
      case CycleBarKind::Infinite:
        c.expect(kind == 2 && full == Barcode{{}, 1, 1}, "infinite case" + tag);
        break;
    }
    ++cases[static_cast<int>(bar.kind)];
  }
  c.expect(cases[0] > 0 && cases[1] > 0 && cases[2] > 0, "all three cases exercised");
  return c;
}

// --- 8 ---------------------------------------------------------------------

Checker order_formula() {
  Checker c;
  std::mt19937_64 rng(808);
  for (std::uint64_t p : {2u, 3u}) {
    const Ring r = Ring::p_adic(p, 6);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 3, cols = rows + rng() % 2;
      std::vector<int> planted;
      for (std::size_t i = 0; i < rows; ++i) planted.push_back(static_cast<int>(rng() % 4));
      const DvrMatrix m = t::planted_matrix(rng, r, rows, cols, planted);
      const SnfResult snf = smith_normal_form(m);
      int total = 0, top = 0;
      for (const Valuation& a : snf.exponents) {
        total += a.value();
        top = std::max(top, a.value());
      }
      std::vector<Valuation> want;
      for (int a : planted) want.push_back(Valuation::exact(a));
      std::sort(want.begin(), want.end());
      c.expect(snf.exponents == want, "planted exponents recovered " + str(m));
      const std::uint64_t counted = t::brute_force_cokernel_order(m, std::max(top, 1));
      c.expect(counted == t::integer_power(p, static_cast<unsigned>(total)),
               "|coker| = " + std::to_string(counted) + " for " + str(m));
    }
  }
  return c;
}

// --- 9 ---------------------------------------------------------------------

Checker near_identity() {
  Checker c;
  std::mt19937_64 rng(909);
  const Ring r = Ring::p_adic(2, 16);
  const int k = 5;
  const DvrMatrix id = DvrMatrix::identity(r, 3);
  const DvrElement scale = DvrElement::uniformizer_power(r, k);
  for (int trial = 0; trial < 20; ++trial) {
    const DvrMatrix a = t::planted_matrix(rng, r, 3, 3, {0, 0, 1});
    // A split across the three edges of C_3.
    DvrMatrix a1(r, 3, 3), a2(r, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        a1.set_raw(i, j, rng() % r.modulus());
        a2.set_raw(i, j, rng() % r.modulus());
      }
    const std::vector<DvrMatrix> transforms{id + scale * a1, id + scale * a2, id + scale * (a - a1 - a2)};
    const NetworkSheaf s = build_vector_sheaf(Graph::cycle(3), r, transforms, 3);
    const DvrMatrix h = matrix_holonomy(s, fundamental_cycle_basis(s.graph()).cycles.at(0));
    c.expect(cycle_torsion_block(h) ==
                 std::vector<Valuation>{Valuation::exact(5), Valuation::exact(5), Valuation::exact(6)},
             "exponents of H - I, trial " + std::to_string(trial));
  }
  return c;
}

// --- 10 --------------------------------------------------------------------

Checker consensus() {
  Checker c;
  const int m = 12;
  Graph g;
  for (int v = 0; v < 5; ++v) g.add_vertex("v" + std::to_string(v));
  g.add_edge("a0", 0, 1);
  g.add_edge("a1", 1, 2);
  g.add_edge("a2", 2, 0);
  g.add_edge("b0", 0, 3);
  g.add_edge("b1", 3, 4);
  g.add_edge("b2", 4, 0);
  // Cycle a: 10 * (1/2) * 1 = 5 = 1 + 2^2; cycle b: (17/2) * 2 * 1 = 17 = 1 + 2^4.
  const ClockNetwork net{g, {{10, 1}, {1, 2}, {1, 1}, {17, 2}, {2, 1}, {1, 1}}};
  const ClockSheaf clock = build_clock_sheaf(net, m);
  const DetectionReport at3 = detection_report(clock, 3), at5 = detection_report(clock, 5);
  c.expect(at3.cycles.size() == 2, "two cycles");
  if (at3.cycles.size() != 2) return c;
  c.expect(at3.cycles[0].bar == Valuation::exact(2) && at3.cycles[1].bar == Valuation::exact(4), "valuations {2, 4}");
  c.expect(at3.cycles[0].detectable && !at3.cycles[1].detectable, "b = 3 flags only the a = 2 cycle");
  c.expect(at5.cycles[0].detectable && at5.cycles[1].detectable, "b = 5 flags both");
  for (int b = 1; b < m; ++b) {
    const DetectionReport lo = detection_report(clock, b), hi = detection_report(clock, b + 1);
    for (std::size_t i = 0; i < lo.cycles.size(); ++i)
      c.expect(!lo.cycles[i].detectable || hi.cycles[i].detectable, "monotone at b = " + std::to_string(b));
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Checker()> run;
  };
  const std::vector<Criterion> criteria{
      {"triangle: exponents, barcode, digits, Bockstein, holonomy", triangle},
      {"three cycles: bars {2,3} + infinite, digit ranks (0,1,2,2)", theta},
      {"two-term digit ranks, a <= 5, k <= 7, m = 10", two_term},
      {"digit/Smith dictionary on 540 random coboundaries + enumeration oracle", dictionary},
      {"projector laws and saturation quotient on the random corpus", projector_laws},
      {"stability under congruent perturbation, 200 pairs + [p^3] vs [0]", stability},
      {"cycle barcode trichotomy and val(det) = val(h - 1), 200 trials", cycle_barcode},
      {"torsion order formula by brute-force counting", order_formula},
      {"near-identity holonomy exponents (5,5,6)", near_identity},
      {"clock detection thresholds for valuations {2,4}", consensus},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Checker c;
    try {
      c = criteria[i].run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = c.failures == 0;
    failed += !ok;
    std::printf("[%s] %2zu. %s  (%zu checks, %.2f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name, c.checks,
                seconds_since(start));
    for (const std::string& msg : c.messages) std::printf("         %s\n", msg.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
