#include "arithbar/holonomy.hpp"

#include <algorithm>
#include <queue>

#include "arithbar/error.hpp"
#include "arithbar/snf.hpp"

namespace arithbar {

namespace {

constexpr auto kNone = static_cast<std::size_t>(-1);

}  // namespace

CycleBasis fundamental_cycle_basis(const Graph& g) {
  const std::size_t nv = g.vertex_count();
  std::vector<std::size_t> parent_edge(nv, kNone), depth(nv, 0);
  std::vector<bool> seen(nv, false), in_tree(g.edge_count(), false);
  CycleBasis out;

  for (std::size_t root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<std::size_t> q;
    q.push(root);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t e : g.incident_edges(v)) {
        const Edge& ed = g.edge(e);
        const std::size_t w = ed.tail == v ? ed.head : ed.tail;
        if (seen[w]) continue;
        seen[w] = true;
        parent_edge[w] = e;
        depth[w] = depth[v] + 1;
        in_tree[e] = true;
        q.push(w);
      }
    }
  }

  auto parent = [&](std::size_t v) {
    const Edge& ed = g.edge(parent_edge[v]);
    return ed.tail == v ? ed.head : ed.tail;
  };

  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (in_tree[e]) {
      out.tree_edges.push_back(e);
      continue;
    }
    const Edge& ed = g.edge(e);
    Cycle c{{e, true}};
    // Walk from the head back to the tail through the forest: climb from
    // both ends to the common ancestor, then descend towards the tail.
    std::size_t a = ed.head, b = ed.tail;
    Cycle down;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        const std::size_t pe = parent_edge[a];
        c.push_back({pe, g.edge(pe).tail == a});
        a = parent(a);
      } else {
        const std::size_t pe = parent_edge[b];
        down.push_back({pe, g.edge(pe).head == b});
        b = parent(b);
      }
    }
    c.insert(c.end(), down.rbegin(), down.rend());
    out.defining_edges.push_back(e);
    out.cycles.push_back(std::move(c));
  }
  return out;
}

DvrElement cycle_holonomy_rank1(const NetworkSheaf& sheaf, const Cycle& cycle) {
  if (!sheaf.is_rank_one()) throw Error(ErrorCode::NotRankOne, "holonomy scalar needs rank-1 stalks");
  DvrElement h = DvrElement::one(sheaf.ring());
  for (const CycleStep& s : cycle) {
    const DvrElement tail = sheaf.tail_restriction(s.edge).at(0, 0);
    const DvrElement head = sheaf.head_restriction(s.edge).at(0, 0);
    if (!tail.is_unit() || !head.is_unit())
      throw Error(ErrorCode::NonUnitWeight, "edge '" + sheaf.graph().edge(s.edge).id + "' has a non-unit weight");
    h *= s.forward ? invert_unit(tail) * head : invert_unit(head) * tail;
  }
  return h;
}

CycleBar bar_from_holonomy(const DvrElement& h) {
  if (!h.is_unit()) throw Error(ErrorCode::NotAUnit, "holonomy must be a unit");
  const Valuation v = valuation(h - DvrElement::one(h.ring()));
  if (v.is_censored()) return {CycleBarKind::Infinite, v.value()};
  if (v.value() == 0) return {CycleBarKind::Empty, 0};
  return {CycleBarKind::Finite, v.value()};
}

DvrMatrix matrix_holonomy(const NetworkSheaf& sheaf, const Cycle& cycle) {
  const Graph& g = sheaf.graph();
  if (cycle.empty()) throw Error(ErrorCode::InvalidGraph, "empty cycle");
  const std::size_t d = sheaf.edge_rank(cycle.front().edge);
  DvrMatrix h = DvrMatrix::identity(sheaf.ring(), d);
  for (const CycleStep& s : cycle) {
    const DvrMatrix& tail = sheaf.tail_restriction(s.edge);
    const DvrMatrix& head = sheaf.head_restriction(s.edge);
    if (tail.rows() != d || tail.cols() != d || head.cols() != d)
      throw Error(ErrorCode::RankMismatch, "matrix holonomy needs equal square stalks along the cycle");
    if (!is_invertible(tail) || !is_invertible(head))
      throw Error(ErrorCode::SingularRestriction, "edge '" + g.edge(s.edge).id + "' has a singular restriction");
    const DvrMatrix t = s.forward ? inverse(head) * tail : inverse(tail) * head;
    h = t * h;
  }
  return h;
}

std::vector<Valuation> cycle_torsion_block(const DvrMatrix& holonomy) {
  if (holonomy.rows() != holonomy.cols()) throw Error(ErrorCode::ShapeMismatch, "holonomy must be square");
  return smith_normal_form(holonomy - DvrMatrix::identity(holonomy.ring(), holonomy.rows())).exponents;
}

BlockwiseResult blockwise_barcode(const NetworkSheaf& sheaf, const CycleBasis& basis) {
  if (!sheaf.is_rank_one()) throw Error(ErrorCode::NotRankOne, "blockwise barcode needs rank-1 stalks");
  const Graph& g = sheaf.graph();
  // A non-unit weight on a tree edge contributes torsion no cycle sees.
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (!sheaf.ring().is_unit(sheaf.tail_restriction(e).raw(0, 0)) ||
        !sheaf.ring().is_unit(sheaf.head_restriction(e).raw(0, 0)))
      throw Error(ErrorCode::NonUnitWeight, "edge '" + g.edge(e).id + "' has a non-unit weight");
  std::vector<int> edge_use(g.edge_count(), 0);
  for (const Cycle& c : basis.cycles)
    for (const CycleStep& s : c)
      if (++edge_use[s.edge] > 1) return {std::nullopt, BlockFailure::SharedEdge};

  const auto labels = g.component_labels();
  std::vector<bool> has_cycle(g.component_count(), false);
  for (std::size_t e : basis.defining_edges) {
    const std::size_t comp = labels[g.edge(e).tail];
    if (has_cycle[comp]) return {std::nullopt, BlockFailure::SharedComponent};
    has_cycle[comp] = true;
  }

  Barcode out;
  for (const Cycle& c : basis.cycles) {
    const CycleBar bar = bar_from_holonomy(cycle_holonomy_rank1(sheaf, c));
    if (bar.kind == CycleBarKind::Finite) {
      out.finite_bars.push_back(bar.length);
    } else if (bar.kind == CycleBarKind::Infinite) {
      ++out.infinite_bars;
      ++out.censored_bars;
    }
  }
  std::sort(out.finite_bars.begin(), out.finite_bars.end());
  return {out, BlockFailure::None};
}

}  // namespace arithbar
