#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arithbar/dvr.hpp"
#include "arithbar/matrix.hpp"

namespace arithbar {

struct Edge {
  std::string id;
  std::size_t tail;
  std::size_t head;

  bool is_loop() const noexcept { return tail == head; }
};

/// Finite directed multigraph. Parallel edges and self-loops are allowed.
class Graph {
 public:
  std::size_t add_vertex(std::string id);
  /// Throws InvalidGraph when an endpoint does not exist.
  std::size_t add_edge(std::string id, std::size_t tail, std::size_t head);

  std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::string& vertex_id(std::size_t v) const { return vertex_ids_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Edges incident to v in index order; a self-loop is listed once.
  const std::vector<std::size_t>& incident_edges(std::size_t v) const { return incidence_.at(v); }

  std::optional<std::size_t> find_vertex(const std::string& id) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;

  /// Connected component label per vertex, labels assigned in order of the
  /// lowest vertex index of each component.
  std::vector<std::size_t> component_labels() const;
  std::size_t component_count() const;
  /// |E| - |V| + #components.
  std::size_t first_betti_number() const;

  /// Cycle graph v0 -> v1 -> ... -> v(n-1) -> v0 with edges e0..e(n-1).
  static Graph cycle(std::size_t n);
  /// Path v0 -> v1 -> ... -> v(n-1).
  static Graph path(std::size_t n);

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incidence_;
};

/// Network sheaf with free stalks over R/pi^m. Every edge carries a tail and a
/// head restriction, of shapes edge_rank x vertex_rank(tail) and
/// edge_rank x vertex_rank(head). Restrictions start out zero.
class NetworkSheaf {
 public:
  NetworkSheaf(Graph graph, const Ring& ring, std::vector<std::size_t> vertex_ranks,
               std::vector<std::size_t> edge_ranks);

  /// Constant sheaf of rank d: every restriction is the identity.
  static NetworkSheaf constant(Graph graph, const Ring& ring, std::size_t d);
  /// Rank-1 unit sheaf: tail restriction 1, head restriction weights[e].
  static NetworkSheaf rank_one(Graph graph, const Ring& ring, const std::vector<DvrElement>& weights);

  const Graph& graph() const noexcept { return graph_; }
  const Ring& ring() const noexcept { return ring_; }
  std::size_t vertex_rank(std::size_t v) const { return vertex_ranks_.at(v); }
  std::size_t edge_rank(std::size_t e) const { return edge_ranks_.at(e); }

  /// Throws RankMismatch on a shape disagreeing with the stalk ranks.
  void set_tail_restriction(std::size_t e, DvrMatrix m);
  void set_head_restriction(std::size_t e, DvrMatrix m);
  /// Sets the restriction for incidence (v, e); ambiguous for self-loops,
  /// which must use the tail/head setters. Throws ValidationError.
  void set_restriction(std::size_t v, std::size_t e, DvrMatrix m);

  const DvrMatrix& tail_restriction(std::size_t e) const { return tail_.at(e); }
  const DvrMatrix& head_restriction(std::size_t e) const { return head_.at(e); }

  /// Dimensions of C^0 and C^1.
  std::size_t cochain_dim0() const noexcept { return vertex_offsets_.back(); }
  std::size_t cochain_dim1() const noexcept { return edge_offsets_.back(); }
  std::size_t vertex_offset(std::size_t v) const { return vertex_offsets_.at(v); }
  std::size_t edge_offset(std::size_t e) const { return edge_offsets_.at(e); }

  bool is_rank_one() const;

  bool operator==(const NetworkSheaf& o) const;

 private:
  void check_shape(const DvrMatrix& m, std::size_t e, std::size_t v) const;

  Graph graph_;
  Ring ring_;
  std::vector<std::size_t> vertex_ranks_;
  std::vector<std::size_t> edge_ranks_;
  std::vector<std::size_t> vertex_offsets_;
  std::vector<std::size_t> edge_offsets_;
  std::vector<DvrMatrix> tail_;
  std::vector<DvrMatrix> head_;
};

/// Coboundary C^0 -> C^1: block row of e: u -> v is
/// [+F_{u<e} at block u, -F_{v<e} at block v], blocks in declaration order.
DvrMatrix build_coboundary(const NetworkSheaf& sheaf);

/// Reduce every restriction to R/pi^k. Throws PrecisionExceeded when k > m.
NetworkSheaf reduce_mod(const NetworkSheaf& sheaf, int k);

/// restriction'(v, e) = restriction(v, e) * gauge[v]. Each gauge[v] must be a
/// square matrix of size vertex_rank(v) with unit determinant (NonUnitGauge).
NetworkSheaf gauge_transform(const NetworkSheaf& sheaf, const std::vector<DvrMatrix>& gauge);

}  // namespace arithbar
