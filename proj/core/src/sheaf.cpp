#include "arithbar/sheaf.hpp"

#include <numeric>
#include <queue>

#include "arithbar/error.hpp"

namespace arithbar {

std::size_t Graph::add_vertex(std::string id) {
  vertex_ids_.push_back(std::move(id));
  incidence_.emplace_back();
  return vertex_ids_.size() - 1;
}

std::size_t Graph::add_edge(std::string id, std::size_t tail, std::size_t head) {
  if (tail >= vertex_count() || head >= vertex_count())
    throw Error(ErrorCode::InvalidGraph, "edge '" + id + "' has a dangling endpoint");
  edges_.push_back({std::move(id), tail, head});
  const std::size_t e = edges_.size() - 1;
  incidence_[tail].push_back(e);
  if (head != tail) incidence_[head].push_back(e);
  return e;
}

std::optional<std::size_t> Graph::find_vertex(const std::string& id) const {
  for (std::size_t v = 0; v < vertex_ids_.size(); ++v)
    if (vertex_ids_[v] == id) return v;
  return std::nullopt;
}

std::optional<std::size_t> Graph::find_edge(const std::string& id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].id == id) return e;
  return std::nullopt;
}

std::vector<std::size_t> Graph::component_labels() const {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(vertex_count(), unset);
  std::size_t next = 0;
  for (std::size_t root = 0; root < vertex_count(); ++root) {
    if (label[root] != unset) continue;
    std::queue<std::size_t> q;
    q.push(root);
    label[root] = next;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t e : incidence_[v]) {
        const std::size_t w = edges_[e].tail == v ? edges_[e].head : edges_[e].tail;
        if (label[w] == unset) {
          label[w] = next;
          q.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t Graph::component_count() const {
  const auto labels = component_labels();
  std::size_t count = 0;
  for (std::size_t l : labels) count = std::max(count, l + 1);
  return count;
}

std::size_t Graph::first_betti_number() const {
  return edge_count() + component_count() - vertex_count();
}

Graph Graph::cycle(std::size_t n) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) g.add_edge("e" + std::to_string(i), i, (i + 1) % n);
  return g;
}

Graph Graph::path(std::size_t n) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge("e" + std::to_string(i), i, i + 1);
  return g;
}

NetworkSheaf::NetworkSheaf(Graph graph, const Ring& ring, std::vector<std::size_t> vertex_ranks,
                           std::vector<std::size_t> edge_ranks)
    : graph_(std::move(graph)),
      ring_(ring),
      vertex_ranks_(std::move(vertex_ranks)),
      edge_ranks_(std::move(edge_ranks)) {
  if (vertex_ranks_.size() != graph_.vertex_count() || edge_ranks_.size() != graph_.edge_count())
    throw Error(ErrorCode::RankMismatch, "stalk rank lists do not match the graph");
  vertex_offsets_.assign(vertex_ranks_.size() + 1, 0);
  std::partial_sum(vertex_ranks_.begin(), vertex_ranks_.end(), vertex_offsets_.begin() + 1);
  edge_offsets_.assign(edge_ranks_.size() + 1, 0);
  std::partial_sum(edge_ranks_.begin(), edge_ranks_.end(), edge_offsets_.begin() + 1);
  for (std::size_t e = 0; e < graph_.edge_count(); ++e) {
    const Edge& ed = graph_.edge(e);
    tail_.emplace_back(ring_, edge_ranks_[e], vertex_ranks_[ed.tail]);
    head_.emplace_back(ring_, edge_ranks_[e], vertex_ranks_[ed.head]);
  }
}

NetworkSheaf NetworkSheaf::constant(Graph graph, const Ring& ring, std::size_t d) {
  const std::size_t nv = graph.vertex_count(), ne = graph.edge_count();
  NetworkSheaf s(std::move(graph), ring, std::vector<std::size_t>(nv, d), std::vector<std::size_t>(ne, d));
  for (std::size_t e = 0; e < ne; ++e) {
    s.set_tail_restriction(e, DvrMatrix::identity(ring, d));
    s.set_head_restriction(e, DvrMatrix::identity(ring, d));
  }
  return s;
}

NetworkSheaf NetworkSheaf::rank_one(Graph graph, const Ring& ring, const std::vector<DvrElement>& weights) {
  const std::size_t nv = graph.vertex_count(), ne = graph.edge_count();
  if (weights.size() != ne) throw Error(ErrorCode::RankMismatch, "one weight per edge required");
  NetworkSheaf s(std::move(graph), ring, std::vector<std::size_t>(nv, 1), std::vector<std::size_t>(ne, 1));
  for (std::size_t e = 0; e < ne; ++e) {
    s.set_tail_restriction(e, DvrMatrix::identity(ring, 1));
    DvrMatrix w(ring, 1, 1);
    w.set(0, 0, weights[e]);
    s.set_head_restriction(e, std::move(w));
  }
  return s;
}

void NetworkSheaf::check_shape(const DvrMatrix& m, std::size_t e, std::size_t v) const {
  if (!(m.ring() == ring_))
    throw Error(ErrorCode::RingMismatch, "restriction over " + m.ring().name() + ", sheaf over " + ring_.name());
  if (m.rows() != edge_ranks_[e] || m.cols() != vertex_ranks_[v])
    throw Error(ErrorCode::RankMismatch,
                "restriction for (" + graph_.vertex_id(v) + ", " + graph_.edge(e).id + ") has shape " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                    std::to_string(edge_ranks_[e]) + "x" + std::to_string(vertex_ranks_[v]));
}

void NetworkSheaf::set_tail_restriction(std::size_t e, DvrMatrix m) {
  check_shape(m, e, graph_.edge(e).tail);
  tail_[e] = std::move(m);
}

void NetworkSheaf::set_head_restriction(std::size_t e, DvrMatrix m) {
  check_shape(m, e, graph_.edge(e).head);
  head_[e] = std::move(m);
}

void NetworkSheaf::set_restriction(std::size_t v, std::size_t e, DvrMatrix m) {
  const Edge& ed = graph_.edge(e);
  if (ed.is_loop())
    throw Error(ErrorCode::ValidationError, "incidence of self-loop '" + ed.id + "' is ambiguous");
  if (v == ed.tail)
    set_tail_restriction(e, std::move(m));
  else if (v == ed.head)
    set_head_restriction(e, std::move(m));
  else
    throw Error(ErrorCode::ValidationError,
                "vertex '" + graph_.vertex_id(v) + "' is not incident to edge '" + ed.id + "'");
}

bool NetworkSheaf::is_rank_one() const {
  for (std::size_t r : vertex_ranks_)
    if (r != 1) return false;
  for (std::size_t r : edge_ranks_)
    if (r != 1) return false;
  return true;
}

bool NetworkSheaf::operator==(const NetworkSheaf& o) const {
  if (!(ring_ == o.ring_) || vertex_ranks_ != o.vertex_ranks_ || edge_ranks_ != o.edge_ranks_) return false;
  if (graph_.vertex_count() != o.graph_.vertex_count() || graph_.edge_count() != o.graph_.edge_count())
    return false;
  for (std::size_t v = 0; v < graph_.vertex_count(); ++v)
    if (graph_.vertex_id(v) != o.graph_.vertex_id(v)) return false;
  for (std::size_t e = 0; e < graph_.edge_count(); ++e) {
    const Edge& a = graph_.edge(e);
    const Edge& b = o.graph_.edge(e);
    if (a.id != b.id || a.tail != b.tail || a.head != b.head) return false;
  }
  return tail_ == o.tail_ && head_ == o.head_;
}

DvrMatrix build_coboundary(const NetworkSheaf& sheaf) {
  const Ring& r = sheaf.ring();
  const Graph& g = sheaf.graph();
  DvrMatrix d(r, sheaf.cochain_dim1(), sheaf.cochain_dim0());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const DvrMatrix& tail = sheaf.tail_restriction(e);
    const DvrMatrix& head = sheaf.head_restriction(e);
    const std::size_t row0 = sheaf.edge_offset(e);
    for (std::size_t i = 0; i < sheaf.edge_rank(e); ++i) {
      for (std::size_t j = 0; j < tail.cols(); ++j) {
        const std::size_t c = sheaf.vertex_offset(ed.tail) + j;
        d.set_raw(row0 + i, c, r.add(d.raw(row0 + i, c), tail.raw(i, j)));
      }
      for (std::size_t j = 0; j < head.cols(); ++j) {
        const std::size_t c = sheaf.vertex_offset(ed.head) + j;
        d.set_raw(row0 + i, c, r.sub(d.raw(row0 + i, c), head.raw(i, j)));
      }
    }
  }
  return d;
}

NetworkSheaf reduce_mod(const NetworkSheaf& sheaf, int k) {
  if (k > sheaf.ring().precision())
    throw Error(ErrorCode::PrecisionExceeded, "cannot reduce sheaf to a higher precision");
  const Ring target = sheaf.ring().with_precision(k);
  const Graph& g = sheaf.graph();
  std::vector<std::size_t> vr(g.vertex_count()), er(g.edge_count());
  for (std::size_t v = 0; v < vr.size(); ++v) vr[v] = sheaf.vertex_rank(v);
  for (std::size_t e = 0; e < er.size(); ++e) er[e] = sheaf.edge_rank(e);
  NetworkSheaf out(g, target, vr, er);
  for (std::size_t e = 0; e < er.size(); ++e) {
    out.set_tail_restriction(e, reduce_mod(sheaf.tail_restriction(e), k));
    out.set_head_restriction(e, reduce_mod(sheaf.head_restriction(e), k));
  }
  return out;
}

NetworkSheaf gauge_transform(const NetworkSheaf& sheaf, const std::vector<DvrMatrix>& gauge) {
  const Graph& g = sheaf.graph();
  if (gauge.size() != g.vertex_count())
    throw Error(ErrorCode::ShapeMismatch, "one gauge matrix per vertex required");
  for (std::size_t v = 0; v < gauge.size(); ++v) {
    const DvrMatrix& gv = gauge[v];
    if (gv.rows() != sheaf.vertex_rank(v) || gv.cols() != sheaf.vertex_rank(v))
      throw Error(ErrorCode::RankMismatch, "gauge at '" + g.vertex_id(v) + "' has the wrong size");
    if (!is_invertible(gv))
      throw Error(ErrorCode::NonUnitGauge, "gauge at '" + g.vertex_id(v) + "' has non-unit determinant");
  }
  NetworkSheaf out = sheaf;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out.set_tail_restriction(e, sheaf.tail_restriction(e) * gauge[ed.tail]);
    out.set_head_restriction(e, sheaf.head_restriction(e) * gauge[ed.head]);
  }
  return out;
}

}  // namespace arithbar
