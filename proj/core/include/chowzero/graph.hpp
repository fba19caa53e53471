#ifndef CHOWZERO_GRAPH_HPP_
#define CHOWZERO_GRAPH_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chowzero {

// A half-edge at a vertex: either a marking (leg) or one end of an edge.
// In a tree an edge has at most one end at any vertex, so the edge index
// identifies the half-edge once the vertex is known.
struct HalfEdge {
  enum class Kind : std::uint8_t { kLeg = 0, kEdge = 1 };

  Kind kind = Kind::kLeg;
  int id = 0;

  static constexpr HalfEdge leg(int label) { return {Kind::kLeg, label}; }
  static constexpr HalfEdge edge(int index) { return {Kind::kEdge, index}; }

  bool is_leg() const { return kind == Kind::kLeg; }
  bool is_edge() const { return kind == Kind::kEdge; }

  // Legs sort before edge-ends; legs by label, edge-ends by edge index.
  friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

std::string to_string(const HalfEdge& h);

// Genus-0 prestable dual graph: a tree whose vertices carry labeled legs.
// Vertices of any valence are allowed. The constructor rejects anything that
// is not a tree or whose legs do not partition {1..n}.
class PrestableGraph {
 public:
  // The graph with one unmarked vertex.
  PrestableGraph();

  PrestableGraph(int n, std::vector<std::vector<int>> legs,
                 std::vector<std::pair<int, int>> edges);

  // Single vertex carrying legs 1..n.
  static PrestableGraph trivial(int n);

  int n() const { return n_; }
  int num_vertices() const { return static_cast<int>(legs_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<int>& legs(int v) const { return legs_.at(v); }
  const std::vector<std::vector<int>>& all_legs() const { return legs_; }
  std::pair<int, int> edge(int e) const { return edges_.at(e); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // Incident edge indices at v, ascending.
  const std::vector<int>& incident_edges(int v) const { return incident_.at(v); }

  int valence(int v) const {
    return static_cast<int>(legs_.at(v).size() + incident_.at(v).size());
  }

  // Local half-edge order at v: legs ascending, then edge-ends by edge index.
  std::vector<HalfEdge> half_edges(int v) const;

  int other_end(int e, int v) const;
  int vertex_of_leg(int label) const;
  // Edge joining u and w, or -1.
  int edge_between(int u, int w) const;

  bool has_half_edge(int v, const HalfEdge& h) const;

  friend bool operator==(const PrestableGraph& a, const PrestableGraph& b) {
    return a.n_ == b.n_ && a.legs_ == b.legs_ && a.edges_ == b.edges_;
  }

 private:
  void validate_and_index();

  int n_ = 0;
  std::vector<std::vector<int>> legs_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> incident_;
};

// Contracts edge e; its endpoints merge into the lower-indexed one, the
// higher-indexed vertex is removed and later vertices shift down by one.
// Edges above e shift down by one. Throws std::out_of_range on a bad index.
PrestableGraph contract_edge(const PrestableGraph& g, int e);

// Result of splitting one vertex into two joined by a fresh edge.
struct VertexSplit {
  PrestableGraph graph;
  int kept_vertex;  // same index as the split vertex; carries `side`
  int new_vertex;   // appended index; carries the remaining half-edges
  int new_edge;     // appended edge index
};

// Moves every half-edge at v that is not in `side` onto a new vertex and
// joins the two by a new edge. Edge indices and leg labels are preserved.
VertexSplit split_vertex(const PrestableGraph& g, int v, const std::vector<HalfEdge>& side);

}  // namespace chowzero

#endif  // CHOWZERO_GRAPH_HPP_
