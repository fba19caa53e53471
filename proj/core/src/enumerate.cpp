#include "chowzero/enumerate.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace chowzero {
namespace {

// Unmarked trees on `vertices` vertices, grown by attaching a leaf to every
// vertex of every smaller tree and keeping one per class.
std::vector<PrestableGraph> unmarked_trees(int vertices) {
  std::map<GraphKey, PrestableGraph> layer;
  PrestableGraph point;
  layer.emplace(canonical_form(point).key, point);
  for (int size = 2; size <= vertices; ++size) {
    std::map<GraphKey, PrestableGraph> next;
    for (const auto& [key, tree] : layer) {
      for (int v = 0; v < tree.num_vertices(); ++v) {
        auto legs = tree.all_legs();
        legs.emplace_back();
        auto edges = tree.edges();
        edges.emplace_back(v, size - 1);
        auto cf = canonical_form(PrestableGraph(0, std::move(legs), std::move(edges)));
        next.emplace(std::move(cf.key), std::move(cf.graph));
      }
    }
    layer = std::move(next);
  }
  std::vector<PrestableGraph> out;
  for (auto& [key, tree] : layer) out.push_back(std::move(tree));
  return out;
}

std::vector<GraphClass> build_classes(int n, int edges) {
  const int nv = edges + 1;
  std::map<GraphKey, PrestableGraph> found;
  for (const auto& tree : unmarked_trees(nv)) {
    // Odometer over the vertex receiving each leg.
    std::vector<int> where(n, 0);
    while (true) {
      std::vector<std::vector<int>> legs(nv);
      for (int l = 0; l < n; ++l) legs[where[l]].push_back(l + 1);
      auto cf = canonical_form(PrestableGraph(n, std::move(legs), tree.edges()));
      found.emplace(std::move(cf.key), std::move(cf.graph));
      int pos = 0;
      while (pos < n && ++where[pos] == nv) where[pos++] = 0;
      if (pos == n) break;
    }
  }
  std::vector<GraphClass> out;
  out.reserve(found.size());
  for (auto& [key, graph] : found) out.push_back({key, std::move(graph)});
  return out;
}

}  // namespace

const std::vector<GraphClass>& graph_classes(int n, int edges) {
  if (n < 0 || edges < 0) throw std::invalid_argument("negative graph size");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<const std::vector<GraphClass>>> memo;
  std::lock_guard lock(mutex);
  auto& slot = memo[{n, edges}];
  if (!slot) slot = std::make_unique<const std::vector<GraphClass>>(build_classes(n, edges));
  return *slot;
}

std::vector<PrestableGraph> enumerate_graphs(int n, int edges) {
  std::vector<PrestableGraph> out;
  for (const auto& cls : graph_classes(n, edges)) out.push_back(cls.graph);
  return out;
}

}  // namespace chowzero
