#include "arithbar/consensus.hpp"

#include <algorithm>
#include <queue>

#include "arithbar/error.hpp"

namespace arithbar {

bool ClockSheaf::rate_scale_consistent() const {
  return std::all_of(residual_exponents.begin(), residual_exponents.end(), [](std::int64_t c) { return c == 0; });
}

ClockSheaf build_clock_sheaf(const ClockNetwork& network, int precision) {
  const Graph& g = network.graph;
  if (network.ratios.size() != g.edge_count())
    throw Error(ErrorCode::ValidationError, "one rate ratio per edge required");
  const Ring ring = Ring::p_adic(2, precision);

  std::vector<std::int64_t> kappa;
  std::vector<DvrElement> units;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Ratio& w = network.ratios[e];
    if (w.numerator <= 0 || w.denominator <= 0)
      throw Error(ErrorCode::ValidationError, "rate ratio on edge '" + g.edge(e).id + "' must be positive");
    const RationalLift lift = lift_rational(w.numerator, w.denominator, ring);
    kappa.push_back(lift.kappa);
    units.push_back(lift.unit);
  }

  CycleBasis basis = fundamental_cycle_basis(g);
  std::vector<bool> tree(g.edge_count(), false);
  for (std::size_t e : basis.tree_edges) tree[e] = true;

  // Gauged weight on e is 2^(kappa_e + s_head - s_tail) * u_e; zero it on the forest.
  std::vector<std::int64_t> s(g.vertex_count(), 0);
  std::vector<bool> seen(g.vertex_count(), false);
  for (std::size_t root = 0; root < g.vertex_count(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<std::size_t> q;
    q.push(root);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t e : g.incident_edges(v)) {
        if (!tree[e]) continue;
        const Edge& ed = g.edge(e);
        const std::size_t w = ed.tail == v ? ed.head : ed.tail;
        if (seen[w]) continue;
        seen[w] = true;
        s[w] = w == ed.head ? s[v] - kappa[e] : s[v] + kappa[e];
        q.push(w);
      }
    }
  }

  NetworkSheaf sheaf(g, ring, std::vector<std::size_t>(g.vertex_count(), 1),
                     std::vector<std::size_t>(g.edge_count(), 1));
  std::vector<std::int64_t> residual_by_edge(g.edge_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const std::int64_t c = kappa[e] + s[ed.head] - s[ed.tail];
    residual_by_edge[e] = c;
    DvrMatrix tail(ring, 1, 1), head(ring, 1, 1);
    tail.set(0, 0, DvrElement::one(ring));
    head.set(0, 0, units[e]);
    const int shift = static_cast<int>(std::min<std::int64_t>(c < 0 ? -c : c, precision));
    if (c > 0) head.set(0, 0, DvrElement::uniformizer_power(ring, shift) * units[e]);
    if (c < 0) tail.set(0, 0, DvrElement::uniformizer_power(ring, shift));
    sheaf.set_tail_restriction(e, std::move(tail));
    sheaf.set_head_restriction(e, std::move(head));
  }

  ClockSheaf out{std::move(sheaf), std::move(basis), std::move(kappa), std::move(units), std::move(s), {}};
  for (std::size_t e : out.basis.defining_edges) out.residual_exponents.push_back(residual_by_edge[e]);
  return out;
}

DetectionReport detection_report(const ClockSheaf& clock, int bits) {
  const Ring& ring = clock.sheaf.ring();
  if (bits < 1 || bits > ring.precision())
    throw Error(ErrorCode::ValidationError,
                "bit budget must lie in [1, " + std::to_string(ring.precision()) + "]");
  DetectionReport out;
  out.bits = bits;
  int longest = 0;
  for (std::size_t i = 0; i < clock.basis.cycles.size(); ++i) {
    DvrElement h = DvrElement::one(ring);
    for (const CycleStep& step : clock.basis.cycles[i])
      h *= step.forward ? clock.units[step.edge] : invert_unit(clock.units[step.edge]);
    CycleDetection c;
    c.cycle = i;
    c.defining_edge = clock.sheaf.graph().edge(clock.basis.defining_edges[i]).id;
    c.bar = valuation(h - DvrElement::one(ring));
    c.residual_exponent = clock.residual_exponents[i];
    // h != 1 mod 2^b  <=>  val(h - 1) < b.
    c.detectable = c.residual_exponent != 0 || (!c.bar.is_censored() && c.bar.value() < bits);
    if (c.residual_exponent == 0 && !c.bar.is_censored()) longest = std::max(longest, c.bar.value());
    out.cycles.push_back(std::move(c));
  }
  out.recommended_bits = 1 + longest;
  return out;
}

DetectionReport detection_report(const ClockNetwork& network, int bits, int precision) {
  return detection_report(build_clock_sheaf(network, precision), bits);
}

NetworkSheaf build_vector_sheaf(const Graph& graph, const Ring& ring, const std::vector<DvrMatrix>& transforms,
                                std::size_t d) {
  if (transforms.size() != graph.edge_count())
    throw Error(ErrorCode::RankMismatch, "one transform per edge required");
  NetworkSheaf sheaf(graph, ring, std::vector<std::size_t>(graph.vertex_count(), d),
                     std::vector<std::size_t>(graph.edge_count(), d));
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const DvrMatrix& t = transforms[e];
    if (t.rows() != d || t.cols() != d)
      throw Error(ErrorCode::RankMismatch, "transform on edge '" + graph.edge(e).id + "' is not " +
                                               std::to_string(d) + "x" + std::to_string(d));
    if (!is_invertible(t))
      throw Error(ErrorCode::SingularTransform, "transform on edge '" + graph.edge(e).id + "' is not invertible");
    sheaf.set_tail_restriction(e, t);
    sheaf.set_head_restriction(e, DvrMatrix::identity(ring, d));
  }
  return sheaf;
}

std::vector<CycleAnisotropy> anisotropy_report(const NetworkSheaf& sheaf) {
  const CycleBasis basis = fundamental_cycle_basis(sheaf.graph());
  std::vector<CycleAnisotropy> out;
  for (std::size_t i = 0; i < basis.cycles.size(); ++i) {
    CycleAnisotropy a;
    a.cycle = i;
    a.exponents = cycle_torsion_block(matrix_holonomy(sheaf, basis.cycles[i]));
    for (const Valuation& v : a.exponents)
      if (!v.is_censored() && v.value() >= 1) a.bars.push_back(v.value());
    if (!a.bars.empty())
      a.spread = *std::max_element(a.bars.begin(), a.bars.end()) - *std::min_element(a.bars.begin(), a.bars.end());
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace arithbar
