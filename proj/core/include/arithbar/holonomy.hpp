#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "arithbar/digits.hpp"
#include "arithbar/dvr.hpp"
#include "arithbar/matrix.hpp"
#include "arithbar/sheaf.hpp"

namespace arithbar {

struct CycleStep {
  std::size_t edge;
  /// Traversed from tail to head.
  bool forward;

  bool operator==(const CycleStep&) const = default;
};

using Cycle = std::vector<CycleStep>;

struct CycleBasis {
  std::vector<std::size_t> tree_edges;
  /// Non-tree edge defining each fundamental cycle, in index order.
  std::vector<std::size_t> defining_edges;
  /// Each cycle starts at the tail of its defining edge, crosses it, and
  /// returns along the spanning forest.
  std::vector<Cycle> cycles;
};

/// BFS forest rooted at the lowest-index vertex of each component, incident
/// edges explored in index order. Self-loops and parallel edges give cycles.
CycleBasis fundamental_cycle_basis(const Graph& graph);

/// Product of m_e = tail^-1 * head along the cycle, m_e^-1 on reversed steps.
/// Throws NotRankOne or NonUnitWeight.
DvrElement cycle_holonomy_rank1(const NetworkSheaf& sheaf, const Cycle& cycle);

enum class CycleBarKind {
  /// val(h - 1) = 0: no bar.
  Empty,
  /// val(h - 1) = a in [1, m): one bar of length a.
  Finite,
  /// h = 1 at working precision: free H^0 and H^1, an infinite bar that is
  /// indistinguishable from a bar of length >= m.
  Infinite,
};

struct CycleBar {
  CycleBarKind kind;
  /// Bar length for Finite, 0 for Empty, m for Infinite.
  int length;
};

/// Throws NotAUnit unless h is a unit.
CycleBar bar_from_holonomy(const DvrElement& h);

/// Ordered product T_k ... T_1 of the relative transforms
/// T_e = head^-1 * tail, inverted on reversed steps. Throws SingularRestriction.
DvrMatrix matrix_holonomy(const NetworkSheaf& sheaf, const Cycle& cycle);

/// Smith exponents of H - I (full list, censored entries last).
std::vector<Valuation> cycle_torsion_block(const DvrMatrix& holonomy);

enum class BlockFailure {
  None,
  /// Two fundamental cycles use the same edge.
  SharedEdge,
  /// Two fundamental cycles lie in the same connected component; even
  /// edge-disjoint cycles are coupled through the vertex stalks there.
  SharedComponent,
};

struct BlockwiseResult {
  std::optional<Barcode> barcode;
  BlockFailure failure = BlockFailure::None;
};

/// Barcode as the union of per-cycle bars when every connected component
/// carries at most one fundamental cycle; otherwise no barcode and the
/// reason. Throws NotRankOne or NonUnitWeight.
BlockwiseResult blockwise_barcode(const NetworkSheaf& sheaf, const CycleBasis& basis);

}  // namespace arithbar
