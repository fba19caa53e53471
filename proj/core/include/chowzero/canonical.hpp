#ifndef CHOWZERO_CANONICAL_HPP_
#define CHOWZERO_CANONICAL_HPP_

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "chowzero/graph.hpp"
#include "chowzero/rational.hpp"

namespace chowzero {

// Serialization of a leg-labeled isomorphism class of trees.
struct GraphKey {
  std::string text;
  friend auto operator<=>(const GraphKey&, const GraphKey&) = default;
};

// Maps vertices and edges of one labeling onto another. Legs are fixed.
struct Relabeling {
  std::vector<int> vertex;
  std::vector<int> edge;

  HalfEdge apply(const HalfEdge& h) const {
    return h.is_leg() ? h : HalfEdge::edge(edge.at(h.id));
  }
  bool is_identity() const;
};

// Canonical representative: vertices in preorder from the chosen center,
// siblings ordered by subtree key, edge i-1 joining vertex i to its parent.
// `relabeling` sends the input labeling to the canonical one.
struct CanonicalForm {
  GraphKey key;
  PrestableGraph graph;
  Relabeling relabeling;
};

CanonicalForm canonical_form(const PrestableGraph& g);

// Same canonical graph, but siblings with isomorphic subtrees are further
// ordered so that the preorder sequence of `vertex_weights` is
// lexicographically least. Weights are indexed by input vertex.
CanonicalForm canonical_form(const PrestableGraph& g, std::span<const int> vertex_weights);

using Automorphism = Relabeling;

struct AutGroup {
  Integer order;
  std::vector<Automorphism> generators;
};

// Automorphisms fixing every leg.
AutGroup automorphisms(const PrestableGraph& g);

// Automorphisms that additionally preserve the vertex weights.
AutGroup automorphisms(const PrestableGraph& g, std::span<const int> vertex_weights);

// Vertices at the middle of a longest path (one or two of them).
std::vector<int> tree_centers(const PrestableGraph& g);

}  // namespace chowzero

#endif  // CHOWZERO_CANONICAL_HPP_
