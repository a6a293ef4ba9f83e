#include "arithbar/document.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "arithbar/error.hpp"
#include "json.hpp"

namespace arithbar {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ValidationError, field + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) parse_fail(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(field, std::string("missing key '") + key + "'");
  return *it;
}

std::string as_string(const json& j, const std::string& field) {
  if (!j.is_string()) parse_fail(field, "expected a string");
  return j.get<std::string>();
}

std::int64_t as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) parse_fail(field, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    invalid(field, "integer out of range");
  return j.get<std::int64_t>();
}

const json& as_array(const json& j, const std::string& field) {
  if (!j.is_array()) parse_fail(field, "expected an array");
  return j;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Ratio parse_ratio(const std::string& s, const std::string& field) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    Ratio r;
    if (slash == std::string::npos) {
      r.numerator = std::stoll(s, &used);
      if (used != s.size()) parse_fail(field, "bad number '" + s + "'");
      return r;
    }
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    r.numerator = std::stoll(num, &used);
    if (used != num.size()) parse_fail(field, "bad fraction '" + s + "'");
    r.denominator = std::stoll(den, &used);
    if (used != den.size()) parse_fail(field, "bad fraction '" + s + "'");
    return r;
  } catch (const std::logic_error&) {
    parse_fail(field, "bad number '" + s + "'");
  }
}

Ring parse_ring(const json& root, const RingOverride& over) {
  const json& block = member(root, "ring", "ring");
  std::string kind = "p-adic";
  if (block.contains("kind")) kind = as_string(block["kind"], "ring.kind");
  const std::int64_t p = over.prime ? static_cast<std::int64_t>(*over.prime) : as_int(member(block, "p", "ring"), "ring.p");
  const std::int64_t m =
      over.precision ? *over.precision : as_int(member(block, "precision", "ring"), "ring.precision");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) invalid("ring.p", std::to_string(p) + " is not prime");
  if (m < 1 || m > 62) invalid("ring.precision", "must lie in [1, 62]");
  try {
    if (kind == "p-adic") return Ring::p_adic(static_cast<std::uint64_t>(p), static_cast<int>(m));
    if (kind == "power-series") return Ring::power_series(static_cast<std::uint64_t>(p), static_cast<int>(m));
  } catch (const Error& e) {
    invalid("ring", e.what());
  }
  invalid("ring.kind", "expected 'p-adic' or 'power-series', got '" + kind + "'");
}

Residue parse_entry(const json& j, const Ring& ring, const std::string& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return ring.encode_decimal(std::to_string(j.get<std::uint64_t>()));
    return ring.encode(j.get<std::int64_t>());
  }
  if (!j.is_string()) parse_fail(field, "expected an integer or a string");
  const std::string s = j.get<std::string>();
  if (s.find('/') == std::string::npos) {
    try {
      return ring.encode_decimal(s);
    } catch (const Error& e) {
      parse_fail(field, e.what());
    }
  }
  const Ratio r = parse_ratio(s, field);
  if (r.numerator == 0) return 0;
  RationalLift lift{0, DvrElement::zero(ring)};
  try {
    lift = lift_rational(r.numerator, r.denominator, ring);
  } catch (const Error& e) {
    invalid(field, e.what());
  }
  if (lift.kappa < 0) invalid(field, "'" + s + "' is not integral at p = " + std::to_string(ring.prime()));
  const int shift = static_cast<int>(std::min<std::int64_t>(lift.kappa, ring.precision()));
  return (DvrElement::uniformizer_power(ring, shift) * lift.unit).residue();
}

DvrMatrix parse_matrix(const json& j, const Ring& ring, std::size_t rows, std::size_t cols, const std::string& field) {
  as_array(j, field);
  if (j.size() != rows) invalid(field, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  DvrMatrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    as_array(j[i], rf);
    if (j[i].size() != cols)
      invalid(rf, "expected " + std::to_string(cols) + " entries, got " + std::to_string(j[i].size()));
    for (std::size_t c = 0; c < cols; ++c)
      m.set_raw(i, c, parse_entry(j[i][c], ring, rf + "[" + std::to_string(c) + "]"));
  }
  return m;
}

std::size_t parse_rank(const json& obj, const std::string& field) {
  if (!obj.contains("rank")) return 1;
  const std::int64_t r = as_int(obj["rank"], field + ".rank");
  if (r < 0) invalid(field + ".rank", "must be nonnegative");
  return static_cast<std::size_t>(r);
}

json matrix_json(const DvrMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.raw(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

bool SheafDocument::operator==(const SheafDocument& o) const {
  auto same_ratios = [](const std::optional<std::vector<Ratio>>& a, const std::optional<std::vector<Ratio>>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    if (a->size() != b->size()) return false;
    for (std::size_t i = 0; i < a->size(); ++i)
      if ((*a)[i].numerator != (*b)[i].numerator || (*a)[i].denominator != (*b)[i].denominator) return false;
    return true;
  };
  return sheaf == o.sheaf && has_restrictions == o.has_restrictions && same_ratios(clock_ratios, o.clock_ratios);
}

SheafDocument parse_sheaf_text(std::string_view text, const RingOverride& over) {
  const json root = parse_json(text);
  if (!root.is_object()) parse_fail("document", "expected an object");
  const Ring ring = parse_ring(root, over);

  Graph graph;
  std::vector<std::size_t> vertex_ranks, edge_ranks;
  const json& vertices = as_array(member(root, "vertices", "document"), "vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string field = "vertices[" + std::to_string(i) + "]";
    const std::string id = as_string(member(vertices[i], "id", field), field + ".id");
    if (graph.find_vertex(id)) invalid(field, "duplicate vertex id '" + id + "'");
    graph.add_vertex(id);
    vertex_ranks.push_back(parse_rank(vertices[i], field));
  }
  const json& edges = as_array(member(root, "edges", "document"), "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    const std::string id = as_string(member(edges[i], "id", field), field + ".id");
    if (graph.find_edge(id)) invalid(field, "duplicate edge id '" + id + "'");
    const std::string tail = as_string(member(edges[i], "tail", field), field + ".tail");
    const std::string head = as_string(member(edges[i], "head", field), field + ".head");
    const auto t = graph.find_vertex(tail), h = graph.find_vertex(head);
    if (!t) invalid(field + ".tail", "unknown vertex '" + tail + "'");
    if (!h) invalid(field + ".head", "unknown vertex '" + head + "'");
    graph.add_edge(id, *t, *h);
    edge_ranks.push_back(parse_rank(edges[i], field));
  }

  SheafDocument doc{NetworkSheaf(graph, ring, vertex_ranks, edge_ranks), std::nullopt, false};
  NetworkSheaf& sheaf = doc.sheaf;

  if (root.contains("restrictions")) {
    const json& list = as_array(root["restrictions"], "restrictions");
    doc.has_restrictions = !list.empty();
    std::vector<bool> tail_seen(graph.edge_count(), false), head_seen(graph.edge_count(), false);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string field = "restrictions[" + std::to_string(i) + "]";
      const json& r = list[i];
      const std::string vid = as_string(member(r, "vertex", field), field + ".vertex");
      const std::string eid = as_string(member(r, "edge", field), field + ".edge");
      const auto v = graph.find_vertex(vid);
      const auto e = graph.find_edge(eid);
      if (!v) invalid(field + ".vertex", "unknown vertex '" + vid + "'");
      if (!e) invalid(field + ".edge", "unknown edge '" + eid + "'");
      const Edge& ed = graph.edge(*e);
      bool tail_side;
      if (r.contains("side")) {
        const std::string side = as_string(r["side"], field + ".side");
        if (side != "tail" && side != "head") invalid(field + ".side", "expected 'tail' or 'head'");
        tail_side = side == "tail";
        if ((tail_side ? ed.tail : ed.head) != *v)
          invalid(field, "vertex '" + vid + "' is not the " + side + " of edge '" + eid + "'");
      } else {
        if (ed.is_loop()) invalid(field, "self-loop '" + eid + "' needs a 'side'");
        if (*v != ed.tail && *v != ed.head) invalid(field, "vertex '" + vid + "' is not incident to edge '" + eid + "'");
        tail_side = *v == ed.tail;
      }
      auto& seen = tail_side ? tail_seen : head_seen;
      if (seen[*e]) invalid(field, "duplicate restriction for (" + vid + ", " + eid + ")");
      seen[*e] = true;
      DvrMatrix m = parse_matrix(member(r, "matrix", field), ring, sheaf.edge_rank(*e), sheaf.vertex_rank(*v),
                                 field + ".matrix");
      if (tail_side)
        sheaf.set_tail_restriction(*e, std::move(m));
      else
        sheaf.set_head_restriction(*e, std::move(m));
    }
  }

  if (root.contains("clock")) {
    const json& ratios = member(root["clock"], "ratios", "clock");
    if (!ratios.is_object()) parse_fail("clock.ratios", "expected an object keyed by edge id");
    std::vector<std::optional<Ratio>> by_edge(graph.edge_count());
    for (const auto& [eid, value] : ratios.items()) {
      const std::string field = "clock.ratios." + eid;
      const auto e = graph.find_edge(eid);
      if (!e) invalid(field, "unknown edge '" + eid + "'");
      Ratio r;
      if (value.is_number_integer())
        r.numerator = as_int(value, field);
      else
        r = parse_ratio(as_string(value, field), field);
      if (r.numerator <= 0 || r.denominator <= 0) invalid(field, "rate ratios must be positive");
      by_edge[*e] = r;
    }
    std::vector<Ratio> out;
    for (std::size_t e = 0; e < by_edge.size(); ++e) {
      if (!by_edge[e]) invalid("clock.ratios", "missing ratio for edge '" + graph.edge(e).id + "'");
      out.push_back(*by_edge[e]);
    }
    doc.clock_ratios = std::move(out);
  }
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SheafDocument parse_sheaf_file(const std::filesystem::path& path, const RingOverride& ring) {
  return parse_sheaf_text(read_text_file(path), ring);
}

std::string serialize_sheaf(const SheafDocument& doc) {
  const NetworkSheaf& sheaf = doc.sheaf;
  const Graph& g = sheaf.graph();
  const Ring& ring = sheaf.ring();
  ordered_json root;
  root["ring"] = {{"kind", ring.kind() == RingKind::PAdic ? "p-adic" : "power-series"},
                  {"p", ring.prime()},
                  {"precision", ring.precision()}};
  ordered_json vertices = ordered_json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    vertices.push_back({{"id", g.vertex_id(v)}, {"rank", sheaf.vertex_rank(v)}});
  root["vertices"] = std::move(vertices);
  ordered_json edges = ordered_json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    edges.push_back({{"id", ed.id}, {"tail", g.vertex_id(ed.tail)}, {"head", g.vertex_id(ed.head)},
                     {"rank", sheaf.edge_rank(e)}});
  }
  root["edges"] = std::move(edges);
  ordered_json restrictions = ordered_json::array();
  if (doc.has_restrictions) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      restrictions.push_back({{"vertex", g.vertex_id(ed.tail)}, {"edge", ed.id}, {"side", "tail"},
                              {"matrix", matrix_json(sheaf.tail_restriction(e))}});
      restrictions.push_back({{"vertex", g.vertex_id(ed.head)}, {"edge", ed.id}, {"side", "head"},
                              {"matrix", matrix_json(sheaf.head_restriction(e))}});
    }
  }
  root["restrictions"] = std::move(restrictions);
  if (doc.clock_ratios) {
    ordered_json ratios = ordered_json::object();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Ratio& r = (*doc.clock_ratios)[e];
      ratios[g.edge(e).id] = std::to_string(r.numerator) + "/" + std::to_string(r.denominator);
    }
    root["clock"] = {{"ratios", std::move(ratios)}};
  }
  return root.dump(2) + "\n";
}

DvrMatrix parse_matrix_text(std::string_view text, const RingOverride& over) {
  const json root = parse_json(text);
  if (!root.is_object()) parse_fail("document", "expected an object");
  const Ring ring = parse_ring(root, over);
  const json& rows = as_array(member(root, "matrix", "document"), "matrix");
  const std::size_t cols = rows.empty() ? 0 : as_array(rows[0], "matrix[0]").size();
  return parse_matrix(rows, ring, rows.size(), cols, "matrix");
}

ClockNetwork clock_network(const SheafDocument& doc) {
  if (!doc.clock_ratios) throw Error(ErrorCode::ValidationError, "document has no clock block");
  return ClockNetwork{doc.sheaf.graph(), *doc.clock_ratios};
}

NetworkSheaf effective_sheaf(const SheafDocument& doc) {
  if (!doc.has_restrictions && doc.clock_ratios)
    return build_clock_sheaf(clock_network(doc), doc.sheaf.ring().precision()).sheaf;
  return doc.sheaf;
}

DvrMatrix load_coboundary_text(std::string_view text, const RingOverride& ring) {
  const json root = parse_json(text);
  if (root.is_object() && root.contains("matrix") && !root.contains("vertices")) return parse_matrix_text(text, ring);
  return build_coboundary(effective_sheaf(parse_sheaf_text(text, ring)));
}

}  // namespace arithbar
