#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithbar/digits.hpp"
#include "arithbar/holonomy.hpp"
#include "arithbar/sheaf.hpp"
#include "arithbar/snf.hpp"

namespace arithbar {

struct AnalyzeOptions {
  /// Test hook: corrupt the digit route so the route comparison must fail.
  bool inject_disagreement = false;
};

struct HolonomyRow {
  std::size_t cycle = 0;
  std::string defining_edge;
  /// Edge ids along the cycle, "-" prefixed when traversed backwards.
  std::vector<std::string> path;
  /// Rank 1: the scalar holonomy and its bar.
  std::optional<DvrElement> scalar;
  std::optional<CycleBar> bar;
  /// Rank d: Smith exponents of H - I.
  std::vector<Valuation> exponents;
};

struct HolonomyTable {
  std::vector<HolonomyRow> rows;
  /// Why the table is empty or partial, when it is.
  std::string note;
};

/// Per-cycle holonomy; the note explains when restrictions are not
/// invertible or stalks are not uniform.
HolonomyTable holonomy_table(const NetworkSheaf& sheaf);

struct BarcodeReport {
  Ring ring = Ring::p_adic(2, 1);
  std::size_t cochain_dim0 = 0;
  std::size_t cochain_dim1 = 0;
  std::vector<Valuation> snf_exponents;
  Barcode barcode;
  DigitProfile digits;
  std::size_t bockstein = 0;
  HolonomyTable holonomy;
  /// Present when the rank-1 holonomy route applies.
  std::optional<Barcode> blockwise;
  BlockFailure blockwise_failure = BlockFailure::None;
  /// One line per failed comparison between routes.
  std::vector<std::string> disagreements;

  bool agreement() const noexcept { return disagreements.empty(); }
};

BarcodeReport run_analyze(const NetworkSheaf& sheaf, const AnalyzeOptions& options = {});

/// Compares the Smith route on delta with the digit route, the Bockstein
/// rank and the saturation quotient; appends a line per mismatch.
void compare_routes(const DvrMatrix& delta, const SnfResult& snf, const DigitProfile& digits, std::size_t bockstein,
                    std::vector<std::string>& disagreements);

std::string format_text(const BarcodeReport& report);
std::string format_json(const BarcodeReport& report);

std::string describe(const Barcode& b);
std::string to_string(BlockFailure f);

struct SelftestResult {
  std::size_t trials = 0;
  std::vector<std::string> failures;
};

/// Random dual-route comparisons (Smith exponents vs digit ranks) on dense
/// and sparse matrices over Z/p^m, reproducible from the seed.
SelftestResult run_selftest(std::uint64_t seed, std::size_t trials);

}  // namespace arithbar
