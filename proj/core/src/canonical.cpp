#include "chowzero/canonical.hpp"

#include <algorithm>
#include <optional>
#include <tuple>
#include <stdexcept>

namespace chowzero {

bool Relabeling::is_identity() const {
  for (int i = 0; i < static_cast<int>(vertex.size()); ++i) {
    if (vertex[i] != i) return false;
  }
  for (int i = 0; i < static_cast<int>(edge.size()); ++i) {
    if (edge[i] != i) return false;
  }
  return true;
}

std::vector<int> tree_centers(const PrestableGraph& g) {
  const int nv = g.num_vertices();
  if (nv <= 2) {
    std::vector<int> all(nv);
    for (int v = 0; v < nv; ++v) all[v] = v;
    return all;
  }
  std::vector<int> degree(nv);
  std::vector<int> layer;
  for (int v = 0; v < nv; ++v) {
    degree[v] = static_cast<int>(g.incident_edges(v).size());
    if (degree[v] <= 1) layer.push_back(v);
  }
  int remaining = nv;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer) {
      for (int e : g.incident_edges(v)) {
        int w = g.other_end(e, v);
        if (--degree[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

namespace {

// Subtree data for a tree hung from a fixed root.
struct RootedTree {
  int root = 0;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;  // sorted canonically
  std::vector<std::string> shape;          // per vertex, key of its subtree
  std::vector<std::vector<int>> weights;   // per vertex, preorder weights of its subtree

  bool same_class(int a, int b) const {
    return shape[a] == shape[b] && weights[a] == weights[b];
  }

  std::vector<int> preorder(int from) const {
    std::vector<int> out;
    std::vector<int> stack{from};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out.push_back(v);
      for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
    }
    return out;
  }
};

RootedTree hang(const PrestableGraph& g, int root, std::span<const int> vertex_weights) {
  const int nv = g.num_vertices();
  RootedTree t;
  t.root = root;
  t.parent.assign(nv, -1);
  t.children.assign(nv, {});
  t.shape.assign(nv, {});
  t.weights.assign(nv, {});
  std::vector<int> bfs{root};
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    int v = bfs[i];
    for (int e : g.incident_edges(v)) {
      int w = g.other_end(e, v);
      if (w == t.parent[v]) continue;
      t.parent[w] = v;
      t.children[v].push_back(w);
      bfs.push_back(w);
    }
  }
  for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
    int v = *it;
    auto& kids = t.children[v];
    std::stable_sort(kids.begin(), kids.end(), [&](int a, int b) {
      if (t.shape[a] != t.shape[b]) return t.shape[a] < t.shape[b];
      return t.weights[a] < t.weights[b];
    });
    std::string key = "(";
    for (std::size_t i = 0; i < g.legs(v).size(); ++i) {
      if (i) key += ',';
      key += std::to_string(g.legs(v)[i]);
    }
    key += '|';
    std::vector<int> seq;
    if (!vertex_weights.empty()) seq.push_back(vertex_weights[v]);
    for (int c : kids) {
      key += t.shape[c];
      seq.insert(seq.end(), t.weights[c].begin(), t.weights[c].end());
    }
    key += ')';
    t.shape[v] = std::move(key);
    t.weights[v] = std::move(seq);
  }
  return t;
}

struct Rooting {
  RootedTree tree;
  // Second rooting when the two centers give identical classes.
  std::optional<RootedTree> mirror;
};

Rooting best_rooting(const PrestableGraph& g, std::span<const int> vertex_weights) {
  if (!vertex_weights.empty() && static_cast<int>(vertex_weights.size()) != g.num_vertices()) {
    throw std::invalid_argument("weight count does not match vertex count");
  }
  auto centers = tree_centers(g);
  RootedTree first = hang(g, centers[0], vertex_weights);
  if (centers.size() == 1) return {std::move(first), std::nullopt};
  RootedTree second = hang(g, centers[1], vertex_weights);
  const auto& a = first;
  const auto& b = second;
  auto ka = std::tie(a.shape[a.root], a.weights[a.root]);
  auto kb = std::tie(b.shape[b.root], b.weights[b.root]);
  if (ka == kb) return {std::move(first), std::move(second)};
  if (kb < ka) return {std::move(second), std::nullopt};
  return {std::move(first), std::nullopt};
}

Automorphism map_between(const PrestableGraph& g, const std::vector<int>& from,
                         const std::vector<int>& to) {
  Automorphism sigma;
  sigma.vertex.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) sigma.vertex[v] = v;
  for (std::size_t i = 0; i < from.size(); ++i) sigma.vertex[from[i]] = to[i];
  sigma.edge.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [x, y] = g.edge(e);
    sigma.edge[e] = g.edge_between(sigma.vertex[x], sigma.vertex[y]);
  }
  return sigma;
}

CanonicalForm build_canonical(const PrestableGraph& g, const RootedTree& t) {
  const int nv = g.num_vertices();
  auto order = t.preorder(t.root);
  Relabeling relabel;
  relabel.vertex.assign(nv, -1);
  for (int i = 0; i < nv; ++i) relabel.vertex[order[i]] = i;
  std::vector<std::vector<int>> legs(nv);
  std::vector<std::pair<int, int>> edges(nv - 1);
  for (int i = 0; i < nv; ++i) {
    int v = order[i];
    legs[i] = g.legs(v);
    if (i > 0) edges[i - 1] = {relabel.vertex[t.parent[v]], i};
  }
  relabel.edge.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [x, y] = g.edge(e);
    relabel.edge[e] = std::max(relabel.vertex[x], relabel.vertex[y]) - 1;
  }
  return {GraphKey{std::to_string(g.n()) + ":" + t.shape[t.root]},
          PrestableGraph(g.n(), std::move(legs), std::move(edges)), std::move(relabel)};
}

AutGroup collect_automorphisms(const PrestableGraph& g, const Rooting& r) {
  const auto& t = r.tree;
  AutGroup group;
  group.order = 1;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& kids = t.children[v];
    std::size_t run = 1;
    for (std::size_t i = 1; i <= kids.size(); ++i) {
      if (i < kids.size() && t.same_class(kids[i - 1], kids[i])) {
        auto left = t.preorder(kids[i - 1]);
        auto right = t.preorder(kids[i]);
        auto from = left;
        from.insert(from.end(), right.begin(), right.end());
        auto to = right;
        to.insert(to.end(), left.begin(), left.end());
        group.generators.push_back(map_between(g, from, to));
        ++run;
        continue;
      }
      for (std::size_t k = 2; k <= run; ++k) group.order *= static_cast<unsigned long>(k);
      run = 1;
    }
  }
  if (r.mirror) {
    group.generators.push_back(
        map_between(g, t.preorder(t.root), r.mirror->preorder(r.mirror->root)));
    group.order *= 2;
  }
  return group;
}

}  // namespace

CanonicalForm canonical_form(const PrestableGraph& g) { return canonical_form(g, {}); }

CanonicalForm canonical_form(const PrestableGraph& g, std::span<const int> vertex_weights) {
  return build_canonical(g, best_rooting(g, vertex_weights).tree);
}

AutGroup automorphisms(const PrestableGraph& g) { return automorphisms(g, {}); }

AutGroup automorphisms(const PrestableGraph& g, std::span<const int> vertex_weights) {
  return collect_automorphisms(g, best_rooting(g, vertex_weights));
}

}  // namespace chowzero
