#include "arithbar/analyze.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "arithbar/cohomology.hpp"
#include "arithbar/error.hpp"
#include "json.hpp"

namespace arithbar {

namespace {

using nlohmann::ordered_json;

std::string join_valuations(const std::vector<Valuation>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

ordered_json valuation_json(const Valuation& v) {
  if (v.is_censored()) return ">=" + std::to_string(v.value());
  return v.value();
}

ordered_json valuations_json(const std::vector<Valuation>& v) {
  ordered_json out = ordered_json::array();
  for (const Valuation& x : v) out.push_back(valuation_json(x));
  return out;
}

ordered_json barcode_json(const Barcode& b) {
  return {{"finite", b.finite_bars}, {"infinite", b.infinite_bars}, {"censored", b.censored_bars}};
}

std::string bar_text(const CycleBar& bar) {
  switch (bar.kind) {
    case CycleBarKind::Empty:
      return "none";
    case CycleBarKind::Finite:
      return std::to_string(bar.length);
    case CycleBarKind::Infinite:
      return "infinite (>=" + std::to_string(bar.length) + ")";
  }
  return "";
}

ordered_json bar_json(const CycleBar& bar) {
  switch (bar.kind) {
    case CycleBarKind::Empty:
      return {{"kind", "empty"}};
    case CycleBarKind::Finite:
      return {{"kind", "finite"}, {"length", bar.length}};
    case CycleBarKind::Infinite:
      return {{"kind", "infinite"}, {"at_least", bar.length}};
  }
  return nullptr;
}

std::vector<std::string> cycle_path(const Graph& g, const Cycle& c) {
  std::vector<std::string> out;
  for (const CycleStep& s : c) out.push_back((s.forward ? "" : "-") + g.edge(s.edge).id);
  return out;
}

}  // namespace

std::string describe(const Barcode& b) {
  std::ostringstream os;
  os << "finite [";
  for (std::size_t i = 0; i < b.finite_bars.size(); ++i) os << (i ? " " : "") << b.finite_bars[i];
  os << "]  infinite " << b.infinite_bars << "  censored " << b.censored_bars;
  return os.str();
}

std::string to_string(BlockFailure f) {
  switch (f) {
    case BlockFailure::None:
      return "none";
    case BlockFailure::SharedEdge:
      return "shared-edge";
    case BlockFailure::SharedComponent:
      return "shared-component";
  }
  return "";
}

HolonomyTable holonomy_table(const NetworkSheaf& sheaf) {
  const Graph& g = sheaf.graph();
  const CycleBasis basis = fundamental_cycle_basis(g);
  HolonomyTable out;
  for (std::size_t i = 0; i < basis.cycles.size(); ++i) {
    HolonomyRow row;
    row.cycle = i;
    row.defining_edge = g.edge(basis.defining_edges[i]).id;
    row.path = cycle_path(g, basis.cycles[i]);
    try {
      if (sheaf.is_rank_one()) {
        row.scalar = cycle_holonomy_rank1(sheaf, basis.cycles[i]);
        row.bar = bar_from_holonomy(*row.scalar);
      } else {
        row.exponents = cycle_torsion_block(matrix_holonomy(sheaf, basis.cycles[i]));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonUnitWeight && e.code() != ErrorCode::SingularRestriction &&
          e.code() != ErrorCode::RankMismatch)
        throw;
      out.rows.clear();
      out.note = std::string("holonomy unavailable: ") + e.what();
      return out;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

void compare_routes(const DvrMatrix& delta, const SnfResult& snf, const DigitProfile& digits, std::size_t bockstein,
                    std::vector<std::string>& disagreements) {
  const int m = delta.ring().precision();
  std::vector<int> bars;
  std::size_t units = 0;
  for (const Valuation& a : snf.exponents) {
    if (a.is_censored()) continue;
    if (a.value() == 0)
      ++units;
    else
      bars.push_back(a.value());
  }
  std::sort(bars.begin(), bars.end());

  for (int k = 0; k < m && k < static_cast<int>(digits.d.size()); ++k) {
    const auto expected = static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(), [k](int a) { return a <= k; }));
    if (digits.d[k] != expected)
      disagreements.push_back("digit rank d_" + std::to_string(k) + " = " + std::to_string(digits.d[k]) +
                              ", Smith exponents give " + std::to_string(expected));
  }
  if (digits.d.size() != static_cast<std::size_t>(m)) disagreements.push_back("digit profile has the wrong length");
  if (digits.residue_rank != units)
    disagreements.push_back("rank mod pi = " + std::to_string(digits.residue_rank) + ", Smith unit count " +
                            std::to_string(units));
  if (digits.censored != snf.censored_count())
    disagreements.push_back("digit route leaves " + std::to_string(digits.censored) + " censored, Smith route " +
                            std::to_string(snf.censored_count()));
  if (bockstein != bars.size())
    disagreements.push_back("Bockstein rank " + std::to_string(bockstein) + ", torsion count " +
                            std::to_string(bars.size()));
  if (exponents_from_digits(digits).exponents != bars)
    disagreements.push_back("exponents recovered from digits differ from Smith exponents");
  std::vector<int> sat;
  for (const Valuation& a : saturation_quotient(delta, snf)) sat.push_back(a.value());
  std::sort(sat.begin(), sat.end());
  if (sat != bars) disagreements.push_back("saturation quotient differs from cokernel torsion");
}

BarcodeReport run_analyze(const NetworkSheaf& sheaf, const AnalyzeOptions& options) {
  BarcodeReport r;
  r.ring = sheaf.ring();
  r.cochain_dim0 = sheaf.cochain_dim0();
  r.cochain_dim1 = sheaf.cochain_dim1();
  const DvrMatrix delta = build_coboundary(sheaf);
  const SnfResult snf = smith_normal_form(delta);
  r.snf_exponents = snf.exponents;
  r.barcode = barcode_from_snf(snf, r.cochain_dim1);
  r.digits = digit_profile(delta);
  if (options.inject_disagreement) r.digits.d.back() += 1;
  r.bockstein = bockstein_rank(delta);
  compare_routes(delta, snf, r.digits, r.bockstein, r.disagreements);

  r.holonomy = holonomy_table(sheaf);
  if (sheaf.is_rank_one()) {
    try {
      const BlockwiseResult block = blockwise_barcode(sheaf, fundamental_cycle_basis(sheaf.graph()));
      r.blockwise = block.barcode;
      r.blockwise_failure = block.failure;
      if (block.barcode && !(*block.barcode == r.barcode))
        r.disagreements.push_back("holonomy route barcode (" + describe(*block.barcode) + ") differs from Smith route (" +
                                  describe(r.barcode) + ")");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonUnitWeight) throw;
    }
  }
  return r;
}

std::string format_text(const BarcodeReport& r) {
  std::ostringstream os;
  os << "ring: " << r.ring << "\n";
  os << "cochains: C0 = " << r.cochain_dim0 << ", C1 = " << r.cochain_dim1 << "\n";
  os << "smith exponents: " << join_valuations(r.snf_exponents) << "\n";
  os << "barcode: " << describe(r.barcode) << "\n";
  os << "digit ranks:";
  for (std::size_t d : r.digits.d) os << " " << d;
  os << (r.digits.stabilized ? "  (stabilized)" : "  (not stabilized)") << "\n";
  os << "bockstein rank: " << r.bockstein << "\n";
  os << "holonomy:";
  if (r.holonomy.rows.empty()) os << (r.holonomy.note.empty() ? " no cycles" : " " + r.holonomy.note);
  os << "\n";
  for (const HolonomyRow& row : r.holonomy.rows) {
    os << "  cycle " << row.cycle << " via " << row.defining_edge << ":";
    for (const std::string& s : row.path) os << " " << s;
    if (row.scalar) os << "  h = " << *row.scalar << "  bar " << bar_text(*row.bar);
    if (!row.exponents.empty()) os << "  H - I exponents " << join_valuations(row.exponents);
    os << "\n";
  }
  if (r.blockwise)
    os << "blockwise barcode: " << describe(*r.blockwise) << "\n";
  else if (r.blockwise_failure != BlockFailure::None)
    os << "blockwise barcode: declined (" << to_string(r.blockwise_failure) << ")\n";
  if (r.agreement()) {
    os << "routes: agree\n";
  } else {
    os << "routes: DISAGREE\n";
    for (const std::string& d : r.disagreements) os << "  " << d << "\n";
  }
  return os.str();
}

std::string format_json(const BarcodeReport& r) {
  ordered_json root;
  root["ring"] = {{"kind", r.ring.kind() == RingKind::PAdic ? "p-adic" : "power-series"},
                  {"p", r.ring.prime()},
                  {"precision", r.ring.precision()}};
  root["cochains"] = {{"C0", r.cochain_dim0}, {"C1", r.cochain_dim1}};
  root["snf_exponents"] = valuations_json(r.snf_exponents);
  root["barcode"] = barcode_json(r.barcode);
  root["digits"] = {{"d", r.digits.d},
                    {"residue_rank", r.digits.residue_rank},
                    {"censored", r.digits.censored},
                    {"stabilized", r.digits.stabilized}};
  root["bockstein_rank"] = r.bockstein;
  ordered_json cycles = ordered_json::array();
  for (const HolonomyRow& row : r.holonomy.rows) {
    ordered_json c = {{"cycle", row.cycle}, {"defining_edge", row.defining_edge}, {"path", row.path}};
    if (row.scalar) {
      c["h"] = row.scalar->residue();
      c["bar"] = bar_json(*row.bar);
    }
    if (!row.exponents.empty()) c["exponents"] = valuations_json(row.exponents);
    cycles.push_back(std::move(c));
  }
  root["holonomy"] = {{"cycles", std::move(cycles)}, {"note", r.holonomy.note}};
  if (r.blockwise)
    root["blockwise"] = {{"barcode", barcode_json(*r.blockwise)}};
  else if (r.blockwise_failure != BlockFailure::None)
    root["blockwise"] = {{"declined", to_string(r.blockwise_failure)}};
  else
    root["blockwise"] = nullptr;
  root["agreement"] = r.agreement();
  root["disagreements"] = r.disagreements;
  return root.dump(2) + "\n";
}

SelftestResult run_selftest(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  SelftestResult out;
  const std::uint64_t primes[] = {2, 3, 5};
  for (std::size_t t = 0; t < trials; ++t) {
    const Ring ring = Ring::p_adic(primes[rng() % 3], 12);
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    DvrMatrix m(ring, rows, cols);
    const unsigned style = t % 3;
    if (style == 2) {
      // Planted: elementary operations applied to a diagonal of prime powers.
      for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        m.set_raw(i, i, ring.pi_power(static_cast<int>(rng() % 14)));
      for (int step = 0; step < 12; ++step) {
        const Residue f = rng() % ring.modulus();
        if (rows > 1 && rng() % 2) {
          const std::size_t a = rng() % rows, b = (a + 1 + rng() % (rows - 1)) % rows;
          m.add_row_multiple(a, b, f);
        } else if (cols > 1) {
          const std::size_t a = rng() % cols, b = (a + 1 + rng() % (cols - 1)) % cols;
          m.add_col_multiple(a, b, f);
        }
      }
    } else {
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (style == 0 || rng() % 4 == 0) m.set_raw(i, j, ring.mul(rng() % ring.modulus(), ring.pi_power(rng() % 4)));
    }
    std::vector<std::string> failures;
    compare_routes(m, smith_normal_form(m), digit_profile(m), bockstein_rank(m), failures);
    for (const std::string& f : failures) out.failures.push_back("trial " + std::to_string(t) + ": " + f);
    ++out.trials;
  }
  return out;
}

}  // namespace arithbar
