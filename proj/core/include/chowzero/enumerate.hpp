#ifndef CHOWZERO_ENUMERATE_HPP_
#define CHOWZERO_ENUMERATE_HPP_

#include <vector>

#include "chowzero/canonical.hpp"
#include "chowzero/graph.hpp"

namespace chowzero {

struct GraphClass {
  GraphKey key;
  PrestableGraph graph;  // canonical representative
};

// One canonical representative per isomorphism class of trees with n legs
// and the given number of edges, sorted by key. Results are memoized and
// the returned reference stays valid for the lifetime of the program.
const std::vector<GraphClass>& graph_classes(int n, int edges);

std::vector<PrestableGraph> enumerate_graphs(int n, int edges);

}  // namespace chowzero

#endif  // CHOWZERO_ENUMERATE_HPP_
