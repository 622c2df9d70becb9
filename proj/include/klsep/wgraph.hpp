#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "klsep/coxeter.hpp"
#include "klsep/error.hpp"
#include "klsep/kl_table.hpp"

namespace klsep {

struct WGraphVertex {
  Element index = 0;
  std::string word;
  GeneratorSet left;
  GeneratorSet right;
  friend bool operator==(const WGraphVertex&, const WGraphVertex&) = default;
};

/// Undirected mu-labelled pair, stored with x < y in Bruhat order.
struct WGraphEdge {
  Element x = 0;
  Element y = 0;
  std::int64_t mu = 0;
  friend bool operator==(const WGraphEdge&, const WGraphEdge&) = default;
};

/// Descent-labelled vertices and mu-labelled edges. Edges are sorted by
/// (l(y), y, x); since element indices are length-sorted that is (y, x).
class WGraph {
 public:
  WGraph() = default;
  WGraph(CoxeterSpec spec, std::vector<WGraphVertex> vertices, std::vector<WGraphEdge> edges)
      : spec_(spec), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end(),
              [](const WGraphEdge& a, const WGraphEdge& b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
    lower_begin_.assign(vertices_.size() + 1, 0);
    for (const auto& e : edges_) ++lower_begin_[e.y + 1];
    for (std::size_t i = 1; i < lower_begin_.size(); ++i) lower_begin_[i] += lower_begin_[i - 1];
  }

  const CoxeterSpec& spec() const { return spec_; }
  const std::vector<WGraphVertex>& vertices() const { return vertices_; }
  const std::vector<WGraphEdge>& edges() const { return edges_; }
  const WGraphVertex& vertex(Element v) const { return vertices_[v]; }

  /// Edges (x, y, mu) with this y, sorted by x.
  std::span<const WGraphEdge> lower_edges(Element y) const {
    return std::span<const WGraphEdge>(edges_).subspan(lower_begin_[y], lower_begin_[y + 1] - lower_begin_[y]);
  }

  friend bool operator==(const WGraph& a, const WGraph& b) {
    return a.spec_ == b.spec_ && a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  CoxeterSpec spec_;
  std::vector<WGraphVertex> vertices_;
  std::vector<WGraphEdge> edges_;
  std::vector<std::size_t> lower_begin_;
};

inline WGraph build_wgraph(const GroupTable& g, const KLTable& t) {
  std::vector<WGraphVertex> vertices(g.order());
  std::vector<WGraphEdge> edges;
  for (Element w = 0; w < g.order(); ++w) {
    vertices[w] = {w, g.format(w), g.left_descents(w), g.right_descents(w)};
    for (const MuEdge& e : t.lower_mu(w)) {
      if (e.mu < 1) throw InvariantViolation("non-positive mu on a W-graph edge");
      edges.push_back({e.x, w, e.mu});
    }
  }
  return WGraph(g.spec(), std::move(vertices), std::move(edges));
}

/// KL-support of h_w h_s (Right) or h_s h_w (Left) using only the graph
/// and the multiplication table.
inline std::vector<Element> product_support(const GroupTable& g, const WGraph& graph, Element w, int s,
                                            Side side) {
  const auto& vw = graph.vertex(w);
  const GeneratorSet dw = side == Side::Left ? vw.left : vw.right;
  if (dw.contains(s)) return {w};
  std::vector<Element> out{g.mult(s, w, side)};
  for (const auto& e : graph.lower_edges(w)) {
    const auto& vx = graph.vertex(e.x);
    if ((side == Side::Left ? vx.left : vx.right).contains(s)) out.push_back(e.x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// WG1 text format:
//   WG1 <family> <rank> [m]
//   V <index> <word> <dL-bits> <dR-bits>     one per element, index order
//   E <x> <y> <mu>                           x < y, mu >= 1
// Descent bits are a string of rank characters, character i is '1' iff
// generator i is a descent. The identity's word is `e`.
// ---------------------------------------------------------------------------

inline std::string descent_bits(GeneratorSet d, int rank) {
  std::string out;
  for (int i = 0; i < rank; ++i) out.push_back(d.contains(i) ? '1' : '0');
  return out;
}

inline void write_wg1(std::ostream& out, const WGraph& graph) {
  const int rank = graph.spec().rank;
  out << "WG1 " << spec_header_fields(graph.spec()) << "\n";
  for (const auto& v : graph.vertices())
    out << "V " << v.index << ' ' << v.word << ' ' << descent_bits(v.left, rank) << ' '
        << descent_bits(v.right, rank) << "\n";
  for (const auto& e : graph.edges()) out << "E " << e.x << ' ' << e.y << ' ' << e.mu << "\n";
}

inline std::string serialize(const WGraph& graph) {
  std::ostringstream out;
  write_wg1(out, graph);
  return out.str();
}

inline WGraph parse_wg1(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(ParseErrorKind::MalformedHeader, "empty input");
  CoxeterSpec spec;
  {
    std::istringstream hs(line);
    std::string magic;
    hs >> magic;
    if (magic.rfind("WG", 0) != 0) throw ParseError(ParseErrorKind::MalformedHeader, line);
    if (magic != "WG1") throw ParseError(ParseErrorKind::UnknownVersion, magic);
    spec = detail::parse_spec_fields(hs, ParseErrorKind::MalformedHeader, line);
  }
  auto parse_bits = [&](const std::string& bits, const std::string& ctx) {
    if (static_cast<int>(bits.size()) != spec.rank) throw ParseError(ParseErrorKind::MalformedBody, ctx);
    GeneratorSet d;
    for (int i = 0; i < spec.rank; ++i) {
      if (bits[static_cast<std::size_t>(i)] == '1')
        d.insert(i);
      else if (bits[static_cast<std::size_t>(i)] != '0')
        throw ParseError(ParseErrorKind::MalformedBody, ctx);
    }
    return d;
  };

  std::vector<WGraphVertex> vertices;
  std::vector<WGraphEdge> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag, extra;
    ls >> tag;
    if (tag == "V") {
      long long index = -1;
      WGraphVertex v;
      std::string dl, dr;
      if (!(ls >> index >> v.word >> dl >> dr) || (ls >> extra)) throw ParseError(ParseErrorKind::MalformedBody, line);
      if (index != static_cast<long long>(vertices.size()))
        throw ParseError(ParseErrorKind::MalformedBody, "vertex out of order: " + line);
      v.index = static_cast<Element>(index);
      v.left = parse_bits(dl, line);
      v.right = parse_bits(dr, line);
      vertices.push_back(std::move(v));
    } else if (tag == "E") {
      long long x = -1, y = -1, mu = 0;
      if (!(ls >> x >> y >> mu) || (ls >> extra)) throw ParseError(ParseErrorKind::MalformedBody, line);
      if (mu <= 0) throw ParseError(ParseErrorKind::NonPositiveMu, line);
      if (x < 0 || y < 0) throw ParseError(ParseErrorKind::DanglingVertex, line);
      if (x >= y) throw ParseError(ParseErrorKind::MalformedBody, "edge must have x < y: " + line);
      edges.push_back({static_cast<Element>(x), static_cast<Element>(y), mu});
    } else {
      throw ParseError(ParseErrorKind::MalformedBody, line);
    }
  }
  if (vertices.empty()) throw ParseError(ParseErrorKind::EmptyGraph, "no vertices");
  for (const auto& e : edges)
    if (e.x >= vertices.size() || e.y >= vertices.size())
      throw ParseError(ParseErrorKind::DanglingVertex, "E " + std::to_string(e.x) + " " + std::to_string(e.y));
  return WGraph(spec, std::move(vertices), std::move(edges));
}

inline WGraph parse_wg1(const std::string& text) {
  std::istringstream in(text);
  return parse_wg1(in);
}

/// Checks that a parsed graph describes `g`: same spec and order, and vertex
/// words and descent labels match the enumerated group.
inline void check_against_group(const WGraph& graph, const GroupTable& g) {
  if (!(graph.spec() == g.spec()))
    throw ParseError(ParseErrorKind::SpecMismatch, graph.spec().name() + " vs " + g.spec().name());
  if (graph.vertices().size() != g.order())
    throw ParseError(ParseErrorKind::SpecMismatch, "vertex count " + std::to_string(graph.vertices().size()));
  for (const auto& v : graph.vertices()) {
    if (v.word != g.format(v.index) || v.left != g.left_descents(v.index) || v.right != g.right_descents(v.index))
      throw ParseError(ParseErrorKind::SpecMismatch, "vertex " + std::to_string(v.index) + " (" + v.word + ")");
  }
}

}  // namespace klsep
